"""Brute-force reference computations, written independently of the package.

Only the number type and the game data structures are shared.
"""

import functools
import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from ckrverify.field import ONE, ZERO, NonstdNum, as_nonstd
from ckrverify.game import Chance, Decision, GameTree, Terminal


@functools.lru_cache(maxsize=None)
def _parents(g: GameTree) -> Dict[str, tuple]:
    out = {}
    for nid, n in g.nodes.items():
        if not isinstance(n, Terminal):
            for a, c in n.children.items():
                out[c] = (nid, a)
    return out


def path_prob(g: GameTree, prof, nid: str) -> NonstdNum:
    """Product of move probabilities from the root down to ``nid``."""
    par = _parents(g)
    acc = ONE
    while nid in par:
        up, a = par[nid]
        n = g.nodes[up]
        acc = acc * (as_nonstd(n.dist[a]) if isinstance(n, Chance) else as_nonstd(prof.prob(n.infoset, a)))
        nid = up
    return acc


def value(g: GameTree, nid: str, i, prof, override: Mapping[str, str],
          own: Optional[object] = None) -> NonstdNum:
    """Expected payoff to i below ``nid``.  Player i's sets in ``override``
    play the named action; i's other sets follow ``own`` (a strategy) if
    given, else ``prof``; everyone else follows ``prof``."""
    n = g.nodes[nid]
    if isinstance(n, Terminal):
        return as_nonstd(n.payoffs[i])
    if isinstance(n, Chance):
        return sum((as_nonstd(p) * value(g, n.children[a], i, prof, override, own)
                    for a, p in n.dist.items()), ZERO)
    if n.player == i and n.infoset in override:
        return value(g, n.children[override[n.infoset]], i, prof, override, own)
    dist = own.choice[n.infoset] if (n.player == i and own is not None) else prof.dist(n.infoset)
    total = ZERO
    for a, p in dist.items():
        p = as_nonstd(p)
        if not p.is_zero():
            total = total + p * value(g, n.children[a], i, prof, override, own)
    return total


def later_sets(g: GameTree, I: str) -> List[str]:
    """I and every set of the same player with a member below a member of I."""
    i = g.infosets[I].player
    below = set()
    stack = list(g.infosets[I].members)
    while stack:
        nid = stack.pop()
        n = g.nodes[nid]
        if isinstance(n, Terminal):
            continue
        if isinstance(n, Decision) and n.player == i:
            below.add(n.infoset)
        stack.extend(n.children.values())
    return sorted(below | {I})


def brute_global_shortfall(g: GameTree, i, I: str, sigma_i, trem) -> NonstdNum:
    """max over every pure continuation of i from I on, minus the value of
    sigma_i, both conditional on reaching I under ``trem``."""
    members = g.infosets[I].members
    weights = [(m, path_prob(g, trem, m)) for m in members]
    reach = sum((w for _, w in weights), ZERO)
    sets = later_sets(g, I)
    best = None
    for combo in itertools.product(*(g.infosets[J].actions for J in sets)):
        over = dict(zip(sets, combo))
        v = sum((w * value(g, m, i, trem, over) for m, w in weights), ZERO) / reach
        if best is None or v > best:
            best = v
    mine = sum((w * value(g, m, i, trem, {}, own=sigma_i) for m, w in weights), ZERO) / reach
    return best - mine


def brute_local_shortfall(g: GameTree, i, I: str, a: str, trem) -> NonstdNum:
    members = g.infosets[I].members
    weights = [(m, path_prob(g, trem, m)) for m in members]
    reach = sum((w for _, w in weights), ZERO)
    vals = {b: sum((w * value(g, m, i, trem, {I: b}) for m, w in weights), ZERO) / reach
            for b in g.infosets[I].actions}
    return max(vals.values()) - vals[a]


def pure_strategies(g: GameTree, i) -> List[Dict[str, str]]:
    sets = [I for I, s in g.infosets.items() if s.player == i]
    return [dict(zip(sets, c)) for c in itertools.product(*(g.infosets[I].actions for I in sets))]


def ex_ante(g: GameTree, i, prof, override=None) -> Fraction:
    return value(g, g.root, i, prof, override or {}).standard_part()
