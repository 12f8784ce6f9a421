import random
from fractions import Fraction as F

import pytest

from ckrverify.catalog import (chain_game, entry_game, imperfect_recall_game, pooled_signal_game,
                               prisoners_dilemma, trivial_game, two_stage_game)
from ckrverify.errors import DifferentPlayers, GameError
from ckrverify.game import (Chance, Decision, GameTree, History, InformationSet, StrategicGame,
                            Terminal, height, max_height, prefixes, succ, terminal_histories,
                            validate)

from gamegen import random_game


def _codes(g):
    return [v.code for v in validate(g).violations]


def test_entry_game_valid():
    rep = validate(entry_game())
    assert rep.ok and rep.first is None
    assert rep.to_json() == {"ok": True, "violations": []}


def test_imperfect_recall_reported():
    rep = validate(imperfect_recall_game())
    assert not rep.ok
    assert rep.first.code == "perfect-recall" and rep.first.where == "B"
    with pytest.raises(GameError, match="perfect-recall"):
        imperfect_recall_game().require_valid()


def test_single_node_game():
    g = trivial_game()
    assert validate(g).ok and g.infosets == {}
    assert terminal_histories(g) == [History("z", ())]


def test_validate_idempotent():
    g = pooled_signal_game()
    assert validate(g) is validate(g)
    assert validate(g).ok


@pytest.mark.parametrize("mutate, code", [
    (lambda n, s: n.update(out=Chance({"x": F(1, 2), "y": F(1, 3)}, {"x": "zx", "y": "zy"}),
                           zx=Terminal({1: F(0), 2: F(0)}), zy=Terminal({1: F(0), 2: F(0)})),
     "chance-sum"),
    (lambda n, s: n.update(out=Terminal({1: F(0)})), "missing-payoff"),
    (lambda n, s: n.update(n2=Decision(2, "P2", ("Fight", "Accommodate"),
                                       {"Fight": "fight", "Accommodate": "root"})), "cycle"),
    (lambda n, s: n.update(n2=Decision(2, "P2", ("Fight", "Accommodate"),
                                       {"Fight": "fight", "Accommodate": "nowhere"})), "dangling-child"),
    (lambda n, s: n.update(n2=Decision(2, "P9", ("Fight", "Accommodate"),
                                       {"Fight": "fight", "Accommodate": "acc"})), "unknown-infoset"),
    (lambda n, s: s.update(P2=InformationSet("P2", 1, ("Fight", "Accommodate"))), "infoset-player"),
    (lambda n, s: s.update(P2=InformationSet("P2", 2, ("Fight", "Yield"))), "infoset-actions"),
    (lambda n, s: n.update(stray=Terminal({1: F(0), 2: F(0)})), "unreachable"),
])
def test_structural_violations(mutate, code):
    g = entry_game()
    nodes = dict(g.nodes)
    sets = {k: InformationSet(v.id, v.player, v.actions) for k, v in g.infosets.items()}
    mutate(nodes, sets)
    assert code in _codes(GameTree(g.players, g.root, nodes, sets))


def test_nested_infoset_rejected():
    nodes = {
        "r": Decision(1, "A", ("x", "y"), {"x": "n", "y": "z1"}),
        "n": Decision(1, "A", ("x", "y"), {"x": "z2", "y": "z3"}),
        "z1": Terminal({1: F(0)}), "z2": Terminal({1: F(1)}), "z3": Terminal({1: F(2)}),
    }
    g = GameTree((1,), "r", nodes, {"A": InformationSet("A", 1, ("x", "y"))})
    assert "nested-infoset" in _codes(g)


def test_succ():
    g = two_stage_game()
    assert succ(g, "B", "A") and not succ(g, "A", "B")
    assert not succ(g, "A", "A")
    with pytest.raises(DifferentPlayers):
        succ(entry_game(), "P2", "P1")


def test_height():
    g = entry_game()
    assert height(g, "P2") == 1 and height(g, "P1") == 1
    g = two_stage_game()
    assert height(g, "B") == 1 and height(g, "A") == 2
    for k in (1, 3, 5):
        g = chain_game(k)
        assert height(g, f"I{k - 1}") == 1 and height(g, "I0") == k
        assert max_height(g) == k


def _longest_chain(g, I):
    below = [K for K in g.infosets_of(g.infosets[I].player) if K != I and succ(g, K, I)]
    return 1 + max((_longest_chain(g, K) for K in below), default=0)


def test_height_matches_longest_chain_and_is_monotone():
    rng = random.Random(3)
    for _ in range(40):
        g = random_game(rng)
        for I in g.infosets:
            assert height(g, I) == _longest_chain(g, I)
            for J in g.infosets_of(g.infosets[I].player):
                if J != I and succ(g, I, J):
                    assert height(g, I) < height(g, J)


def test_terminal_histories_and_prefixes():
    g = entry_game()
    hs = terminal_histories(g)
    assert {h.path for h in hs} == {("Out",), ("In", "Fight"), ("In", "Accommodate")}
    acc = g.history("acc")
    assert [h.path for h in prefixes(g, acc)] == [(), ("In",), ("In", "Accommodate")]
    assert str(acc) == "In·Accommodate"


def test_random_games_have_perfect_recall():
    rng = random.Random(11)
    for _ in range(60):
        g = random_game(rng)
        assert validate(g).ok
        assert len(terminal_histories(g)) == sum(isinstance(n, Terminal) for n in g.nodes.values())
        for I, s in g.infosets.items():
            exps = {g.experience(m, s.player) for m in s.members}
            assert len(exps) == 1


def test_strategic_game():
    gS = prisoners_dilemma()
    assert gS.u(1, ("Defect", "cooperate")) == 5
    assert gS.join(2, "defect", ("Cooperate",)) == ("Cooperate", "defect")
    assert gS.split(1, ("Defect", "defect")) == ("Defect", ("defect",))
    assert len(gS.profiles()) == 4
    with pytest.raises(GameError):
        StrategicGame((1, 2), {1: ("a",), 2: ("a",)}, {("a", "a"): (0, 0)})
    with pytest.raises(GameError):
        StrategicGame((1, 2), {1: ("a", "b"), 2: ("c",)}, {("a", "c"): (0, 0)})
