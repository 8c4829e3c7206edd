import pytest
from hypothesis import given, strategies as st

from codedshift.automaton import language
from codedshift.cover import (LineCoverSystem, SequenceProvider, closed_walks, cover_language,
                              cover_periodic, cover_return_set, get_provider, sft_window,
                              sequence_window)
from codedshift.dynamics import NO, UNKNOWN, classify
from codedshift.words import WordError, factors, least_period
from conftest import s, w


def tm(B=64, k=1):
    return LineCoverSystem(get_provider("thue-morse", k), B)


def substitute(rule, seed, n):
    x = seed
    while len(x) < n:
        x = "".join(rule[c] for c in x)
    return x[:n]


def test_windows():
    assert s(get_provider("thue-morse").x(0, 8)) == "01101001"
    assert s(get_provider("fibonacci").x(0, 8)) == "01001010"
    base = get_provider("thue-morse").x(-16, 17)
    assert get_provider("thue-morse", 2).x(-8, 9) == base[::2]
    assert len(sequence_window(get_provider("fibonacci"), 5)) == 11
    with pytest.raises(ValueError):
        sequence_window(get_provider("fibonacci"), 0)


def test_right_halves_match_iteration():
    for name, rule in [("thue-morse", {"0": "01", "1": "10"}), ("fibonacci", {"0": "01", "1": "0"})]:
        assert s(get_provider(name).x(0, 200)) == substitute(rule, "0", 200)
    chacon = substitute({"0": "0010", "1": "1"}, "0", 200)
    assert s(get_provider("chacon").x(0, 200)) == chacon


def test_left_half_is_a_legal_two_sided_point():
    x = s(get_provider("thue-morse").x(-256, 256))
    right = substitute({"0": "01", "1": "10"}, "0", 4096)
    assert all(f in right for f in {x[i:i + 12] for i in range(len(x) - 11)})


def test_provider_validation():
    with pytest.raises(WordError):
        SequenceProvider.from_json({"0": "", "1": "0"})
    with pytest.raises(WordError):
        SequenceProvider.from_json({"0": "02", "1": "0"})
    with pytest.raises(WordError):
        get_provider("nope")
    custom = SequenceProvider.from_json({"0": "01", "1": "10"})
    assert custom.x(-20, 20) == get_provider("thue-morse").x(-20, 20)


def test_language_examples():
    S = tm(16)
    L2 = cover_language(S, 2)
    assert S.xb(0) == 0 and w("02") in L2
    assert w("22") in L2 and w("01") in L2
    with pytest.raises(ValueError):
        cover_language(S, 17)


def test_periodic_examples():
    S = tm(16)
    found = dict(cover_periodic(S, 4))
    assert found[w("02")] == 2
    walk = S.walk(w("0132"), 0)
    assert walk is not None and walk.end == 0
    assert found[w("0132")] == 4
    with pytest.raises(ValueError):
        cover_periodic(S, 17)


@pytest.mark.parametrize("name", ["thue-morse", "fibonacci", "chacon"])
def test_no_odd_periods(name):
    S = LineCoverSystem(get_provider(name), 24)
    assert all(p % 2 == 0 for _, p in cover_periodic(S, 10))


@pytest.mark.parametrize("name", ["thue-morse", "fibonacci"])
def test_same_label_same_x(name):
    S = LineCoverSystem(get_provider(name), 32)
    for n in range(1, 7):
        for u in cover_language(S, n):
            traces = S.realizations(u)
            assert len({(t.x_of_u, t.y_of_u) for t in traces}) == 1
            t = traces[0]
            assert t.m_u <= t.start <= t.M_u and len(t.x_of_u) == t.M_u - t.m_u
            assert t.y_of_u == tuple(a + 2 for a in reversed(t.x_of_u))


def cube_free(x):
    return not any(x[i:i + p] * 3 == x[i:i + 3 * p]
                   for p in range(1, len(x) // 3 + 1) for i in range(len(x) - 3 * p + 1))


def test_thue_morse_has_no_cube_of_a_loop():
    S = tm(64)
    x = s(sequence_window(S.provider, 64))
    assert cube_free(x)
    for t in closed_walks(S, 8):
        if least_period(t.label) == len(t.label):
            assert s(t.x_of_u) * 3 not in x


def test_fibonacci_cubes_but_no_fourth_powers():
    x = s(sequence_window(get_provider("fibonacci"), 64))
    assert "010" * 3 in x
    for p in range(1, 20):
        for i in range(len(x) - 4 * p + 1):
            assert x[i:i + p] * 4 != x[i:i + 4 * p]


def test_return_set_examples():
    S = tm(16)
    rep = cover_return_set(S, w("02"), w("02"), 16)
    assert {0, 2} <= rep.present and rep.cofinite == UNKNOWN
    assert 1 in cover_return_set(S, w("0"), w("2"), 16).present


@pytest.mark.parametrize("u,v", [("02", "02"), ("0", "2"), ("01", "13"), ("0", "0")])
def test_return_evidence_grows_with_window(u, v):
    prev_present, prev_thick = set(), 0
    for B in (8, 16, 32):
        rep = cover_return_set(tm(B), w(u), w(v), 24)
        assert prev_present <= rep.present
        assert rep.thickest_interval >= prev_thick
        prev_present, prev_thick = rep.present, rep.thickest_interval


def test_return_set_matches_walks():
    S = tm(12)
    rep = cover_return_set(S, w("0"), w("3"), 9)
    brute = set()
    for n in range(10):
        for b in S.vertices:
            t = S.walk(w("0"), b)
            if t is None:
                continue
            for g in S.walks_of_length(n - 1, t.end) if n >= 1 else []:
                if S.walk(w("3"), g.end) is not None:
                    brute.add(n)
    assert rep.present == brute


def test_sft_window_parity():
    v = classify(sft_window(tm(16), 1).graph, 1, 16, 2)
    assert v.mixing == NO
    v = classify(sft_window(tm(16), 4).graph, 1, 32, 2)
    assert v.tt_by_k[2] == NO and v.totally_transitive == NO
    with pytest.raises(ValueError):
        sft_window(tm(32), 17)


@given(st.integers(1, 6))
def test_sft_languages_nested(B):
    S = tm(16)
    small = language(sft_window(S, B).label_graph(), 5)
    big = language(sft_window(S, B + 1).label_graph(), 5)
    for n in range(1, 6):
        assert small[n] <= big[n]
        assert small[n] <= cover_language(tm(16), n)
