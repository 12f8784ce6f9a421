"""A few standard games used in tests, docs and the CLI fixtures."""

from fractions import Fraction as F

from .game import Chance, Decision, GameTree, InformationSet, StrategicGame, Terminal


def _term(*payoffs):
    return Terminal({i + 1: F(v) for i, v in enumerate(payoffs)})


def entry_game() -> GameTree:
    """Player 1 chooses In or Out; after In, player 2 chooses Fight or Accommodate."""
    nodes = {
        "root": Decision(1, "P1", ("In", "Out"), {"In": "n2", "Out": "out"}),
        "n2": Decision(2, "P2", ("Fight", "Accommodate"), {"Fight": "fight", "Accommodate": "acc"}),
        "out": _term(0, 2),
        "fight": _term(-1, -1),
        "acc": _term(1, 1),
    }
    infosets = {
        "P1": InformationSet("P1", 1, ("In", "Out")),
        "P2": InformationSet("P2", 2, ("Fight", "Accommodate")),
    }
    return GameTree((1, 2), "root", nodes, infosets)


def two_stage_game() -> GameTree:
    """Player 1 moves twice in a row: first L/R, then (after L) l/r."""
    nodes = {
        "root": Decision(1, "A", ("L", "R"), {"L": "n1", "R": "zR"}),
        "n1": Decision(1, "B", ("l", "r"), {"l": "zl", "r": "zr"}),
        "zR": _term(1),
        "zl": _term(2),
        "zr": _term(0),
    }
    infosets = {"A": InformationSet("A", 1, ("L", "R")), "B": InformationSet("B", 1, ("l", "r"))}
    return GameTree((1,), "root", nodes, infosets)


def chain_game(k: int) -> GameTree:
    """Player 1 moves k times in a row; 'go' continues, 'stop' ends the game."""
    nodes, infosets = {}, {}
    for j in range(k):
        nxt = f"n{j + 1}" if j + 1 < k else "zgo"
        nodes[f"n{j}"] = Decision(1, f"I{j}", ("go", "stop"), {"go": nxt, "stop": f"zs{j}"})
        nodes[f"zs{j}"] = _term(j)
        infosets[f"I{j}"] = InformationSet(f"I{j}", 1, ("go", "stop"))
    nodes["zgo"] = _term(k)
    return GameTree((1,), "n0", nodes, infosets)


def pooled_signal_game() -> GameTree:
    """Chance picks a type, player 1 signals, player 2 sees only the signal.

    Player 2's two information sets each pool two nodes.
    """
    nodes = {
        "root": Chance({"t1": F(1, 2), "t2": F(1, 2)}, {"t1": "a", "t2": "b"}),
        "a": Decision(1, "S1", ("x", "y"), {"x": "ax", "y": "ay"}),
        "b": Decision(1, "S2", ("x", "y"), {"x": "bx", "y": "by"}),
        "ax": Decision(2, "Rx", ("u", "d"), {"u": "z1", "d": "z2"}),
        "bx": Decision(2, "Rx", ("u", "d"), {"u": "z3", "d": "z4"}),
        "ay": Decision(2, "Ry", ("u", "d"), {"u": "z5", "d": "z6"}),
        "by": Decision(2, "Ry", ("u", "d"), {"u": "z7", "d": "z8"}),
        "z1": _term(2, 1), "z2": _term(0, 0), "z3": _term(1, 0), "z4": _term(0, 2),
        "z5": _term(1, 1), "z6": _term(0, 0), "z7": _term(2, 0), "z8": _term(1, 1),
    }
    infosets = {
        "S1": InformationSet("S1", 1, ("x", "y")),
        "S2": InformationSet("S2", 1, ("x", "y")),
        "Rx": InformationSet("Rx", 2, ("u", "d")),
        "Ry": InformationSet("Ry", 2, ("u", "d")),
    }
    return GameTree((1, 2), "root", nodes, infosets)


def imperfect_recall_game() -> GameTree:
    """Player 1 forgets their first move: one set pools nodes after L and after R."""
    nodes = {
        "root": Decision(1, "A", ("L", "R"), {"L": "n1", "R": "n2"}),
        "n1": Decision(1, "B", ("l", "r"), {"l": "z1", "r": "z2"}),
        "n2": Decision(1, "B", ("l", "r"), {"l": "z3", "r": "z4"}),
        "z1": _term(1), "z2": _term(0), "z3": _term(0), "z4": _term(1),
    }
    infosets = {"A": InformationSet("A", 1, ("L", "R")), "B": InformationSet("B", 1, ("l", "r"))}
    return GameTree((1,), "root", nodes, infosets)


def trivial_game() -> GameTree:
    return GameTree((1,), "z", {"z": _term(0)}, {})


def _bimatrix(rows, cols, table):
    util = {}
    for r, row in zip(rows, table):
        for c, cell in zip(cols, row):
            util[(r, c)] = cell
    return StrategicGame((1, 2), {1: rows, 2: cols}, util)


def matching_pennies() -> StrategicGame:
    return _bimatrix(("H", "T"), ("h", "t"), [[(1, -1), (-1, 1)], [(-1, 1), (1, -1)]])


def prisoners_dilemma() -> StrategicGame:
    return _bimatrix(("Cooperate", "Defect"), ("cooperate", "defect"),
                     [[(3, 3), (0, 5)], [(5, 0), (1, 1)]])


def chicken() -> StrategicGame:
    return _bimatrix(("D", "C"), ("d", "c"), [[(0, 0), (7, 2)], [(2, 7), (6, 6)]])


def dominance_solvable() -> StrategicGame:
    """Row's B strictly dominates T; after that, column prefers r."""
    return _bimatrix(("T", "B"), ("l", "r"), [[(1, 3), (0, 1)], [(2, 0), (3, 2)]])


def mixture_dominated() -> StrategicGame:
    """Row's M is strictly dominated by the half-half mixture of T and B,
    but by neither pure strategy."""
    return _bimatrix(("T", "M", "B"), ("l", "r"),
                     [[(3, 0), (0, 0)], [(1, 0), (1, 0)], [(0, 0), (3, 0)]])
