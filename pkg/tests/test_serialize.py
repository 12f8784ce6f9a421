import functools
import json
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckrverify import serialize as ser
from ckrverify.catalog import (chicken, entry_game, imperfect_recall_game, matching_pennies,
                               pooled_signal_game)
from ckrverify.epistemic import canonical_model, model_from_distribution
from ckrverify.errors import ParseError
from ckrverify.field import EPS, ONE, NonstdNum
from ckrverify.strategy import pure_profile, uniform_tremble
from ckrverify.verify import CHECKS, check_correlated, check_nash

from gamegen import corpus

ROOT = Path(__file__).resolve().parent.parent
jsonschema = pytest.importorskip("jsonschema")


@functools.lru_cache(maxsize=None)
def _validator(name):
    schema = json.loads((ROOT / "docs" / f"{name}.schema.json").read_text())
    return jsonschema.Draft202012Validator(schema)


def _valid(obj, name):
    _validator(name).validate(obj)


small = st.fractions(min_value=-6, max_value=6, max_denominator=7)


@st.composite
def nonstd(draw):
    num = draw(st.lists(small, min_size=1, max_size=3))
    den = [draw(small.filter(bool))] + draw(st.lists(small, max_size=2))
    return NonstdNum(draw(st.integers(-2, 3)), num, den)


@settings(max_examples=200)
@given(nonstd())
def test_number_round_trip(x):
    j = ser.nonstd_to_json(x)
    assert ser.parse_nonstd(json.loads(json.dumps(j))) == x
    _valid(j, "number")


def test_number_forms():
    assert ser.nonstd_to_json(F(1, 3)) == "1/3"
    assert ser.nonstd_to_json(ONE - 2 * EPS) == ["1", "-2"]
    assert isinstance(ser.nonstd_to_json(ONE / (1 - EPS)), dict)
    assert ser.parse_nonstd("1 - 2*eps + eps^2") == (1 - EPS) ** 2
    assert ser.parse_nonstd("ε") == EPS
    assert ser.parse_nonstd("1/2*eps^2") == EPS ** 2 / 2
    assert ser.parse_nonstd(3) == 3
    assert ser.parse_nonstd(["0", "1"]) == EPS


@pytest.mark.parametrize("bad", ["0.5", "1e-3", "eps^", "2**eps", "x"])
def test_number_errors(bad):
    with pytest.raises(ParseError):
        ser.parse_nonstd(bad)


def test_decimal_literal_rejected_with_position():
    with pytest.raises(ParseError) as e:
        ser.loads('{\n  "a": 1,\n  "b": 0.25\n}')
    assert "line 3" in str(e.value) and "column 8" in str(e.value)
    with pytest.raises(ParseError):
        ser.loads('{"a": }')
    with pytest.raises(ParseError):
        ser.parse_rational(0.5)


def test_dumps_is_deterministic():
    obj = {"b": [1, 2], "a": {"y": "1/2", "x": []}}
    text = ser.dumps(obj)
    assert text == ser.dumps(json.loads(text)) and text.endswith("\n")
    assert json.loads(text) == obj


def _games():
    yield from (entry_game(), pooled_signal_game(), imperfect_recall_game())
    for g, _ in corpus(seed=31, size=15):
        yield g


def test_game_round_trip():
    for g in _games():
        j = ser.game_to_json(g)
        _valid(j, "game")
        h = ser.game_from_json(json.loads(ser.dumps(j)))
        assert ser.game_to_json(h) == j
    for gS in (chicken(), matching_pennies()):
        j = ser.game_to_json(gS)
        _valid(j, "game")
        assert ser.game_to_json(ser.game_from_json(j)) == j


def test_fixtures_match_schemas():
    for path in sorted((ROOT / "fixtures").glob("*.json")):
        data = ser.loads(path.read_text())
        _valid(data, "game" if path.name.endswith(".game.json") else "profile")


def test_profile_round_trips():
    g = entry_game()
    s = pure_profile(g, {"P1": "In", "P2": "Accommodate"})
    t = uniform_tremble(s)
    for p in (s, t):
        j = ser.behavioral_to_json(p)
        _valid(j, "profile")
        assert ser.behavioral_from_json(g, j) == p
    nested = {"strategies": {"1": {"P1": "In"}, "2": {"P2": {"Fight": "eps", "Accommodate": "1 - eps"}}}}
    q = ser.behavioral_from_json(g, nested)
    assert q.prob("P2", "Fight") == EPS
    gS = chicken()
    mixed = {1: {"D": F(1, 3), "C": F(2, 3)}, 2: {"d": F(1), "c": F(0)}}
    assert ser.mixed_from_json(gS, ser.mixed_to_json(gS, mixed)) == mixed
    eta = {("D", "c"): F(1, 2), ("C", "d"): F(1, 2)}
    assert ser.correlated_from_json(ser.correlated_to_json(eta)) == eta


def test_model_round_trips():
    g = entry_game()
    t = uniform_tremble(pure_profile(g, {"P1": "In", "P2": "Accommodate"}))
    m = canonical_model(g, t)
    j = ser.model_to_json(m)
    _valid(j, "model")
    assert ser.model_from_json(j, g) == m
    ms = model_from_distribution((1, 2), {("D", "c"): F(1, 2), ("C", "d"): F(1, 2)})
    j = ser.model_to_json(ms)
    _valid(j, "model")
    assert ser.model_from_json(j) == ms


def _verdict_round_trip(v, g=None):
    j = ser.verdict_to_json(v)
    _valid(j, "verdict")
    back = ser.verdict_from_json(json.loads(ser.dumps(j)), g)
    assert ser.verdict_to_json(back) == j
    assert back.passed == v.passed


def test_verdict_round_trips():
    g = entry_game()
    for p1, p2 in (("In", "Accommodate"), ("Out", "Fight")):
        s = pure_profile(g, {"P1": p1, "P2": p2})
        for check in CHECKS.values():
            _verdict_round_trip(check(g, s, uniform_tremble(s), epistemic=True), g)
    _verdict_round_trip(check_nash(chicken(), {1: {"D": 1}, 2: {"c": 1}}))
    _verdict_round_trip(check_correlated(chicken(), {("C", "c"): 1}))
    for g, sigma in corpus(seed=32, size=10):
        _verdict_round_trip(CHECKS["sequential"](g, sigma, uniform_tremble(sigma)), g)
