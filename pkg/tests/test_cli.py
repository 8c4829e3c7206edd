import json

import pytest
from hypothesis import given, strategies as st

from codedshift.cli import (COMMANDS, Report, SpecError, build_parser, main, parse_spec,
                            render_spec, spec_from_dict)

EVEN = {"alphabet": 2, "generators": ["0", "11"]}
HALF = {"alphabet": 2, "half_sync": {"m": "1", "U": {"kind": "power", "word": "0"}, "level": 6}}
COVER = {"alphabet": 4, "cover": {"provider": "thue-morse", "k": 2, "window": 64}}
GCD2 = {"alphabet": 2, "generators": ["00", "0000"]}
FAMILY = {"alphabet": 2, "family": {"kind": "power", "u": "00", "v": "11", "level": 4}}


@pytest.fixture
def specs(tmp_path):
    out = {}
    for name, data in [("even", EVEN), ("half", HALF), ("cover", COVER), ("gcd2", GCD2),
                       ("family", FAMILY)]:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data))
        out[name] = str(path)
    return out


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_parse_examples(specs):
    assert parse_spec(specs["even"]).generator_set().strings() == ["0", "11"]
    half = parse_spec(specs["half"])
    assert half.kind == "half_sync" and half.level == 6
    cover = parse_spec(specs["cover"])
    assert cover.cover().provider.k_power == 2 and cover.cover().B == 64


@pytest.mark.parametrize("text,where", [
    ('{"alphabet": 2,\n "generators": ["0",]}', ":2:"),
    ('{"generators": ["0"]}', "alphabet"),
    ('{"alphabet": 2, "generators": ["0", "12"]}', "generators[1]"),
    ('{"alphabet": 2, "half_sync": {"m": "1", "U": {"kind": "list", "words": ["", "010"]}}}',
     "half_sync.U"),
    ('{"alphabet": 2, "half_sync": {"U": {"kind": "mfree"}}}', "half_sync.m"),
    ('{"alphabet": 2, "generators": ["0"], "family": {"kind": "power"}}', None),
    ('{"alphabet": 2, "family": {"u": "0"}}', "family.kind"),
    ('{"alphabet": 2, "cover": {"provider": "thue-morse"}}', "alphabet"),
    ('{"alphabet": 2, "generators": ["0"], "defaults": {"speed": 1}}', "defaults.speed"),
])
def test_located_errors(text, where):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    if where:
        assert where in str(err.value)


def test_missing_file(tmp_path):
    with pytest.raises(SpecError):
        parse_spec(str(tmp_path / "absent.json"))


words = st.text("012", min_size=1, max_size=5)
spec_dicts = st.one_of(
    st.builds(lambda ws: {"alphabet": 3, "generators": ws}, st.lists(words, min_size=1, max_size=4)),
    st.builds(lambda u, v, t: {"alphabet": 3, "family": {"kind": "power", "u": u, "v": v, "level": t}},
              words, words, st.integers(0, 5)),
    st.builds(lambda lv: {"alphabet": 3, "family": {"kind": "levels", "levels": lv, "level": 2}},
              st.lists(st.lists(words, min_size=1, max_size=2), min_size=1, max_size=3)),
    st.builds(lambda k, B, h: {"alphabet": 4, "cover": {"provider": "fibonacci", "k": k, "window": B},
                               "defaults": {"horizon": h, "length": 3, "level": 6, "k_max": 4}},
              st.integers(1, 3), st.integers(4, 40), st.integers(8, 64)),
)


@given(spec_dicts)
def test_round_trip(data):
    spec = spec_from_dict(data)
    assert parse_spec(render_spec(spec)) == spec


def flatten_text(text):
    out = {}
    for line in text.splitlines():
        if line.startswith("#"):
            continue
        key, _, val = line.partition(": ")
        out[key] = json.loads(val)
    return out


def flatten_json(obj, prefix=""):
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(flatten_json(v, f"{prefix}{k}."))
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            out.update(flatten_json(v, f"{prefix[:-1]}[{i}]."))
    else:
        out[prefix[:-1]] = obj
    return out


def test_text_and_json_carry_same_data(specs, capsys):
    for argv in (["classify", specs["even"]], ["property-p", "--words", "0,1", specs["even"]],
                 ["cover-return", "--u", "02", "--v", "02", "--horizon", "8", specs["cover"]]):
        _, text = run_cli(capsys, *argv)
        _, js = run_cli(capsys, "--json", *argv)
        report = json.loads(js.out)
        assert flatten_text(text.out) == {**flatten_json(report["data"]),
                                          **flatten_json(report["provenance"])}


def test_report_renderings():
    r = Report("gcd", {"gcd": 2}, {"seed": None}, 0)
    assert json.loads(r.to_json())["data"] == {"gcd": 2}
    assert "gcd: 2" in r.to_text()


EXIT_CASES = [
    (["classify", "--len", "3", "--horizon", "64", "even"], 0, {"mixing": "yes"}),
    (["gcd", "gcd2"], 0, {"gcd": 2}),
    (["classify", "family"], 2, {"mixing": "unknown"}),
    (["lang", "--len", "3", "even"], 0, {"counts": [2, 4, 7]}),
    (["member", "--word", "010", "even"], 0, {"member": False}),
    (["periodic", "--period", "2", "even"], 0, {"words": ["0", "1"]}),
    (["return-set", "--u", "0", "--v", "0", "--horizon", "16", "even"], 0, {"cofinite": "yes"}),
    (["return-set", "--u", "0", "--v", "0", "--horizon", "16", "family"], 0, {"cofinite": "yes"}),
    (["augment", "even"], 0, {"added": ["0", "11"]}),
    (["augment", "gcd2"], 1, None),
    (["frobenius", "--a1", "3", "--a2", "5"], 0, {"bound": 8}),
    (["frobenius", "--a1", "4", "--a2", "6"], 1, None),
    (["property-p", "--words", "0,1,110", "--k", "3", "even"], 0, {"verified": True}),
    (["property-p", "--words", "0,1", "--k", "4", "--samples", "10", "even"], 1, None),
    (["sync-word", "--word", "0", "even"], 0, {"verdict": "yes"}),
    (["sync-word", "--word", "1", "half"], 2, {"verdict": "unknown"}),
    (["sync-gen", "--alpha", "0", "--bound", "5", "even"], 0,
     {"generators": ["0", "110", "11110"]}),
    (["half-sync-verify", "--m", "1", "--depth", "2", "half"], 0, {"verdict": "consistent"}),
    (["cover-lang", "--len", "2", "--window", "8", "cover"], 0, {"length": 2}),
    (["cover-periodic", "--period", "4", "--window", "8", "cover"], 0, {"odd_periods": []}),
    (["cover-return", "--u", "02", "--v", "02", "--horizon", "8", "cover"], 2,
     {"cofinite": "unknown"}),
    (["sft-window", "--radius", "2", "cover"], 0, {"totally_transitive": "no"}),
    (["member", "--word", "0", "cover"], 1, None),
]


@pytest.mark.parametrize("argv,code,expect", EXIT_CASES, ids=[c[0][0] + str(i) for i, c in enumerate(EXIT_CASES)])
def test_exit_contract(specs, capsys, argv, code, expect):
    argv = [specs.get(a, a) for a in argv]
    got, out = run_cli(capsys, "--json", *argv)
    assert got == code
    report = json.loads(out.out)
    if expect is None:
        assert "error" in report
    else:
        for key, val in expect.items():
            assert report["data"][key] == val


def test_every_command_is_covered():
    assert {c[0][0] for c in EXIT_CASES} == set(COMMANDS)


def test_sampling_with_seed(specs, capsys):
    code, out = run_cli(capsys, "--json", "--seed", "5", "property-p", "--words", "0,1",
                        "--k", "5", "--samples", "20", specs["even"])
    assert code == 0
    report = json.loads(out.out)
    assert report["provenance"]["seed"] == 5 and report["data"]["checked"] == "sample"


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["explode", "x.json"])


def test_error_text_goes_to_stderr(specs, capsys):
    code, out = run_cli(capsys, "gcd", "/nonexistent/spec.json")
    assert code == 1 and "error" in out.err


def test_log_level_from_env(specs, capsys, monkeypatch, caplog):
    monkeypatch.setenv("COD_LOG", "info")
    with caplog.at_level("INFO", logger="codedshift"):
        run_cli(capsys, "gcd", specs["even"])
    assert any("running gcd" in r.message for r in caplog.records)
