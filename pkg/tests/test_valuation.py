import random
from fractions import Fraction as F

import pytest

from ckrverify.catalog import entry_game, pooled_signal_game
from ckrverify.errors import NotCompletelyMixed
from ckrverify.field import EPS, ONE, ZERO, nsum
from ckrverify.game import Chance, Decision, GameTree, InformationSet, Terminal
from ckrverify.strategy import BehavioralProfile, BehavioralStrategy, pure_profile, uniform_tremble
from ckrverify.valuation import (cond_eu, expected_utility, induced_beliefs, outcome_distribution,
                                 reach_prob, reach_prob_infoset)

from gamegen import random_game, random_profile


@pytest.fixture
def entry():
    g = entry_game()
    return g, uniform_tremble(pure_profile(g, {"P1": "In", "P2": "Accommodate"}))


def test_reach_prob(entry):
    g, t = entry
    assert reach_prob(g, t, g.history("acc")) == (1 - EPS) ** 2
    assert reach_prob(g, t, g.history("root")) == ONE
    p = pure_profile(g, {"P1": "Out", "P2": "Fight"})
    assert reach_prob(g, p, g.history("acc")) == ZERO
    assert reach_prob_infoset(g, t, "P2") == 1 - EPS
    assert reach_prob_infoset(g, t, "P1") == ONE


def test_outcome_distribution(entry):
    g, t = entry
    d = {str(h): v for h, v in outcome_distribution(g, t).items()}
    assert d == {"Out": EPS, "In·Fight": (1 - EPS) * EPS, "In·Accommodate": (1 - EPS) ** 2}
    assert nsum(d.values()) == ONE
    pure = outcome_distribution(g, pure_profile(g, {"P1": "In", "P2": "Fight"}))
    assert {str(h): v for h, v in pure.items() if v} == {"In·Fight": ONE}


def test_chance_only_tree():
    g = GameTree((1,), "c", {"c": Chance({"l": F(1, 3), "r": F(2, 3)}, {"l": "a", "r": "b"}),
                             "a": Terminal({1: F(0)}), "b": Terminal({1: F(1)})}, {})
    d = {h.path: v for h, v in outcome_distribution(g, BehavioralProfile([])).items()}
    assert d == {("l",): F(1, 3), ("r",): F(2, 3)}


def test_induced_beliefs_two_members():
    nodes = {
        "r": Decision(1, "A", ("x", "y", "z"), {"x": "m1", "y": "m2", "z": "t0"}),
        "m1": Decision(2, "B", ("u", "d"), {"u": "t1", "d": "t2"}),
        "m2": Decision(2, "B", ("u", "d"), {"u": "t3", "d": "t4"}),
        **{f"t{k}": Terminal({1: F(k), 2: F(-k)}) for k in range(5)},
    }
    g = GameTree((1, 2), "r", nodes, {"A": InformationSet("A", 1, ("x", "y", "z")),
                                      "B": InformationSet("B", 2, ("u", "d"))})
    p = BehavioralProfile([BehavioralStrategy(1, {"A": {"x": EPS, "y": EPS ** 2, "z": 1 - EPS - EPS ** 2}}),
                           BehavioralStrategy(2, {"B": {"u": F(1, 2), "d": F(1, 2)}})])
    mu = induced_beliefs(g, p)
    assert mu["B"] == {"m1": 1 / (1 + EPS), "m2": EPS / (1 + EPS)}
    e = F(1, 1000)
    assert mu["B"]["m1"].eval_at(e) == e / (e + e * e)
    with pytest.raises(NotCompletelyMixed):
        induced_beliefs(g, pure_profile(g, {"A": "x", "B": "u"}))


def test_symmetric_beliefs():
    g = pooled_signal_game()
    t = uniform_tremble(pure_profile(g, {"S1": "x", "S2": "x", "Rx": "u", "Ry": "u"}))
    mu = induced_beliefs(g, t)
    assert mu["Rx"]["ax"] == mu["Rx"]["bx"] == F(1, 2)


def test_cond_eu(entry):
    g, _ = entry
    p = BehavioralProfile([BehavioralStrategy(1, {"P1": {"In": 1, "Out": 0}}),
                           BehavioralStrategy(2, {"P2": {"Fight": EPS, "Accommodate": 1 - EPS}})])
    assert cond_eu(g, 2, p, {"P2": {"n2": ONE}}, "P2") == 1 - 2 * EPS
    pure = pure_profile(g, {"P1": "In", "P2": "Fight"})
    assert cond_eu(g, 1, pure, {"P2": {"n2": ONE}}, "P2") == -1


def test_cond_eu_constant_payoffs():
    g = entry_game()
    nodes = {k: (Terminal({1: F(7), 2: F(7)}) if isinstance(n, Terminal) else n) for k, n in g.nodes.items()}
    g = GameTree(g.players, g.root, nodes, g.infosets)
    t = uniform_tremble(pure_profile(g, {"P1": "Out", "P2": "Fight"}))
    mu = induced_beliefs(g, t)
    for I in g.infosets:
        assert cond_eu(g, 1, t, mu, I) == 7


def test_random_trees_total_probability():
    rng = random.Random(5)
    for _ in range(40):
        g = random_game(rng)
        t = uniform_tremble(random_profile(rng, g))
        assert nsum(outcome_distribution(g, t).values()) == ONE
        for nid, n in g.nodes.items():
            if not isinstance(n, Terminal):
                kids = nsum(reach_prob(g, t, c) for c in n.children.values())
                assert kids == reach_prob(g, t, nid)
        for I, d in induced_beliefs(g, t).items():
            assert nsum(d.values()) == ONE
        root = g.nodes[g.root]
        if isinstance(root, Decision):
            mu = induced_beliefs(g, t)
            for i in g.players:
                assert cond_eu(g, i, t, mu, root.infoset) == expected_utility(g, t, i)
