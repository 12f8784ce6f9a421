from fractions import Fraction as F

import pytest

from ckrverify.catalog import entry_game, pooled_signal_game
from ckrverify.errors import BadDistribution, InvalidTremble, WrongPlayer
from ckrverify.field import EPS, ONE, ZERO, nsum
from ckrverify.strategy import (BehavioralProfile, BehavioralStrategy, check_profile,
                                custom_tremble, differ_infinitesimally, is_completely_mixed,
                                is_standard, monomial_tremble, pure_profile,
                                standard_part_profile, substitute, uniform_tremble)


def _one_set(dist):
    return BehavioralProfile([BehavioralStrategy(1, {"I": dist})])


def test_uniform_tremble_examples():
    t = uniform_tremble(_one_set({"a": 1, "b": 0}))
    assert t.dist("I") == {"a": 1 - EPS, "b": EPS}
    t = uniform_tremble(_one_set({"a": F(1, 2), "b": F(1, 2)}))
    assert t.dist("I") == {"a": F(1, 2), "b": F(1, 2)}
    t = uniform_tremble(_one_set({"a": 1, "b": 0, "c": 0}))
    assert nsum(t.dist("I").values()) == ONE


def test_uniform_tremble_properties():
    g = pooled_signal_game()
    p = pure_profile(g, {"S1": "x", "S2": "y", "Rx": "u", "Ry": "d"})
    t = uniform_tremble(p)
    assert not is_completely_mixed(p) and is_completely_mixed(t)
    assert differ_infinitesimally(p, t) and differ_infinitesimally(t, p)
    assert standard_part_profile(t) == p
    assert uniform_tremble(standard_part_profile(t)) == t
    check_profile(g, t)


def test_completely_mixed_with_exact_zero():
    assert not is_completely_mixed(_one_set({"a": 1 - EPS, "b": EPS, "c": 0}))


def test_standard_part_profile():
    p = _one_set({"a": 1 - EPS, "b": EPS})
    assert standard_part_profile(p).dist("I") == {"a": 1, "b": 0}
    q = _one_set({"a": F(1, 3), "b": F(2, 3)})
    assert standard_part_profile(q) == q and is_standard(q)
    r = _one_set({"a": (1 - EPS) / 2 + EPS, "b": (1 + EPS) / 2 - EPS})
    assert standard_part_profile(r).dist("I") == {"a": F(1, 2), "b": F(1, 2)}
    assert not is_standard(r)


def test_differ_infinitesimally():
    p = _one_set({"a": 1, "b": 0})
    assert differ_infinitesimally(p, p)
    assert not differ_infinitesimally(p, _one_set({"a": F(1, 2), "b": F(1, 2)}))
    a, b, c = p, _one_set({"a": 1 - EPS, "b": EPS}), _one_set({"a": 1 - EPS ** 2, "b": EPS ** 2})
    assert differ_infinitesimally(a, b) and differ_infinitesimally(b, c) and differ_infinitesimally(a, c)


def test_custom_tremble():
    p = _one_set({"a": 1, "b": 0, "c": 0})
    t = custom_tremble(p, {("I", "b"): [0, 0, 1], ("I", "c"): [0, 1]})
    d = t.dist("I")
    assert is_completely_mixed(t) and d["b"] < d["c"] and nsum(d.values()) == ONE
    assert differ_infinitesimally(p, t)
    mixed = _one_set({"a": F(1, 2), "b": F(1, 4), "c": F(1, 4)})
    assert custom_tremble(mixed, {}) == mixed
    with pytest.raises(InvalidTremble):
        custom_tremble(p, {("I", "b"): [0, -1]})
    with pytest.raises(InvalidTremble):
        custom_tremble(p, {("I", "b"): [1]})
    with pytest.raises(InvalidTremble):
        custom_tremble(p, {("I", "b"): [0, 1]})  # c stays at 0
    with pytest.raises(InvalidTremble):
        custom_tremble(p, {("J", "b"): [0, 1], ("I", "b"): [0, 1], ("I", "c"): [0, 1]})


def test_monomial_tremble():
    p = _one_set({"a": F(1, 2), "b": F(1, 2), "c": 0})
    t = monomial_tremble(p, {("I", "c"): (F(2), 3)})
    d = t.dist("I")
    assert d["c"] == 2 * EPS ** 3 and d["a"] == d["b"] == (1 - 2 * EPS ** 3) / 2


def test_substitute():
    s = BehavioralStrategy(1, {"I": {"a": 1, "b": 0}, "J": {"x": F(1, 2), "y": F(1, 2)}})
    assert substitute(s, "I", s.choice["I"]) == s
    t = substitute(s, "I", {"a": 0, "b": 1})
    assert t.choice["I"] == {"a": ZERO, "b": ONE} and t.choice["J"] == s.choice["J"]
    with pytest.raises(WrongPlayer):
        substitute(s, "K", {"a": 1})
    with pytest.raises(BadDistribution):
        substitute(s, "I", {"a": F(1, 2), "b": F(1, 3)})


def test_check_profile():
    g = entry_game()
    with pytest.raises(BadDistribution):
        check_profile(g, BehavioralProfile([BehavioralStrategy(1, {"P1": {"In": 1, "Out": 0}})]))
    bad = BehavioralProfile([BehavioralStrategy(1, {"P1": {"In": 1, "Out": 0}}),
                             BehavioralStrategy(2, {"P2": {"Fight": F(1, 2), "Accommodate": F(1, 3)}})])
    with pytest.raises(BadDistribution):
        check_profile(g, bad)
