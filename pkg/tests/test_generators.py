from math import gcd

import pytest
from hypothesis import given, strategies as st

from codedshift.automaton import build_flower, language
from codedshift.generators import (GeneratorSet, NotRelativelyPrime, bezout_augment,
                                   bezout_coefficients, by_length_family, frobenius_bound,
                                   gcd_lengths, levels_family, padding, padding_counts,
                                   parse_concatenation, power_family, represent)
from codedshift.words import WordError
from conftest import w
from oracles import brute_frobenius, representable

coprime_pairs = st.tuples(st.integers(1, 30), st.integers(1, 30)).filter(lambda p: gcd(*p) == 1)


def gs(*words, size=2):
    return GeneratorSet.from_strings(size, list(words))


def test_gcd_examples():
    assert gcd_lengths(gs("0", "11")) == 1
    assert gcd_lengths(gs("00", "0000")) == 2
    assert gcd_lengths(gs("0000", "000000", "000000000")) == 1


def test_generator_set_validation():
    with pytest.raises(WordError):
        gs()
    with pytest.raises(WordError):
        GeneratorSet(2, ((),))
    with pytest.raises(WordError):
        gs("2")
    assert gs("0", "0", "1").canonical().words == (w("0"), w("1"))


def test_augment_existing_pair():
    aug = bezout_augment(gs("01", "011"))
    assert aug.added == (w("01"), w("011"))
    assert aug.coefficients == (1, -1)
    assert aug.augmented.words == (w("01"), w("011"))


def test_augment_rejects_gcd_two():
    with pytest.raises(NotRelativelyPrime):
        bezout_augment(gs("00", "0000"))


def test_bezout_coefficients_examples():
    assert bezout_coefficients([4, 6, 9]) == (1, 1, -1)
    assert bezout_coefficients([6, 10, 15]) == (1, 1, -1)


def test_augment_builds_new_words():
    a, b, c = "0" * 6, "01" * 5, "011" * 5
    aug = bezout_augment(gs(a, b, c))
    assert aug.coprime_pair_lengths == (16, 15)
    assert aug.added == (w(a + b), w(c))
    assert aug.expansion(0) == [w(a), w(b)]
    assert aug.expansion(1) == [w(c)]


@given(st.lists(st.integers(1, 40), min_size=1, max_size=4).filter(lambda ls: gcd(*ls) == 1))
def test_bezout_identity(lengths):
    c = bezout_coefficients(lengths)
    assert sum(ci * a for ci, a in zip(c, lengths)) == 1


def test_bezout_euclid_fallback():
    c = bezout_coefficients([35, 55, 77], max_norm=1)
    assert 35 * c[0] + 55 * c[1] + 77 * c[2] == 1


def test_frobenius_examples():
    assert frobenius_bound(2, 3) == 2
    assert frobenius_bound(3, 5) == 8
    assert frobenius_bound(1, 9) == 0
    with pytest.raises(NotRelativelyPrime):
        frobenius_bound(4, 6)


@given(coprime_pairs)
def test_frobenius_against_scan(pair):
    assert frobenius_bound(*pair) == brute_frobenius(*pair)


def test_represent_examples():
    assert represent(7, 3, 5) is None
    assert represent(8, 3, 5) == (1, 1)
    assert represent(6, 2, 3) == (3, 0)


@given(coprime_pairs, st.integers(0, 60))
def test_represent_beyond_bound(pair, extra):
    a1, a2 = pair
    n = frobenius_bound(a1, a2) + extra
    r1, r2 = represent(n, a1, a2)
    assert r1 * a1 + r2 * a2 == n


@given(coprime_pairs, st.integers(0, 80))
def test_represent_agrees_with_scan(pair, n):
    assert (represent(n, *pair) is not None) == representable(n, *pair)


def test_padding_prefers_fewest_words():
    assert padding_counts(6, 1, 2) == (0, 3)
    assert padding_counts(5, 2, 3) == (1, 1)
    assert padding(3, w("0"), w("11")) == w("011")
    with pytest.raises(ValueError):
        padding_counts(7, 3, 5)


def test_parse_concatenation():
    W = gs("0", "11")
    assert parse_concatenation(W, w("0110")) == [0, 1, 0]
    assert parse_concatenation(W, w("010")) is None
    assert parse_concatenation(W, ()) is None


def test_families_are_nested():
    fams = [power_family(2, w("0"), w("1")),
            levels_family(2, [[w("1")], [w("01")], [w("001"), w("0001")]]),
            by_length_family(2, [w("1"), w("01"), w("0011"), w("10")])]
    for fam in fams:
        prev = set()
        for t in range(1, 6):
            cur = set(fam.truncate(t).words)
            assert prev <= cur
            prev = cur
    assert power_family(2, w("0"), w("1")).truncate(2).words == (w("1"), w("01"), w("001"))


def test_augmentation_keeps_language():
    W = gs("0" * 4, "1" * 6, "01" * 3 + "011")
    aug = bezout_augment(W)
    a = language(build_flower(W), 8)
    b = language(build_flower(aug.augmented), 8)
    assert a.by_length == b.by_length
