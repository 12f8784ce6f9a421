"""Random finite games with perfect recall, and random standard profiles."""

import random
from fractions import Fraction
from typing import Dict, List, Tuple

from ckrverify.game import Chance, Decision, GameTree, InformationSet, Terminal
from ckrverify.response import local_shortfall
from ckrverify.strategy import BehavioralProfile, BehavioralStrategy, uniform_tremble


def random_game(rng: random.Random, max_players: int = 3, max_depth: int = 4,
                max_actions: int = 3, p_chance: float = 0.1, p_pool: float = 0.5) -> GameTree:
    """Build a tree breadth first.  A new decision node joins an existing
    information set of its player whenever both have the same own experience
    (same earlier sets and actions of that player) and the coin says so, which
    keeps perfect recall by construction."""
    n = rng.randint(1, max_players)
    players = tuple(range(1, n + 1))
    depth = rng.randint(2, max_depth)
    nodes: Dict[str, object] = {}
    infosets: Dict[str, InformationSet] = {}
    by_exp: Dict[Tuple, List[str]] = {}
    counter = [0]

    def fresh(prefix):
        counter[0] += 1
        return f"{prefix}{counter[0]}"

    def payoff():
        return Fraction(rng.randint(-10, 10), 2)

    # (node id, depth, experience per player)
    queue = [("r", 0, {p: () for p in players})]
    while queue:
        nid, d, exp = queue.pop(0)
        roll = rng.random()
        if d > 0 and (d >= depth or roll < 0.25):
            nodes[nid] = Terminal({p: payoff() for p in players})
            continue
        if d > 0 and roll < 0.25 + p_chance:
            k = rng.randint(2, 3)
            w = [rng.randint(1, 4) for _ in range(k)]
            dist = {f"c{j}": Fraction(x, sum(w)) for j, x in enumerate(w)}
            children = {a: fresh("n") for a in dist}
            nodes[nid] = Chance(dist, children)
            for c in children.values():
                queue.append((c, d + 1, exp))
            continue
        i = rng.choice(players)
        key = (i, exp[i])
        pool = by_exp.get(key, [])
        if pool and rng.random() < p_pool:
            I = rng.choice(pool)
        else:
            I = fresh("I")
            k = min(rng.choice([1, 2, 2, 3, 3]), max_actions)
            infosets[I] = InformationSet(I, i, tuple(f"a{j}" for j in range(k)))
            by_exp.setdefault(key, []).append(I)
        acts = infosets[I].actions
        children = {a: fresh("n") for a in acts}
        nodes[nid] = Decision(i, I, acts, children)
        for a, c in children.items():
            e2 = dict(exp)
            e2[i] = exp[i] + ((I, a),)
            queue.append((c, d + 1, e2))
    return GameTree(players, "r", nodes, infosets)


def random_distribution(rng: random.Random, actions, p_pure: float = 0.5) -> Dict[str, Fraction]:
    if rng.random() < p_pure or len(actions) == 1:
        a = rng.choice(actions)
        return {b: Fraction(int(b == a)) for b in actions}
    w = [rng.choice([0, 1, 1, 2, 3]) for _ in actions]
    if not any(w):
        w[rng.randrange(len(w))] = 1
    return {b: Fraction(x, sum(w)) for b, x in zip(actions, w)}


def random_profile(rng: random.Random, g: GameTree, p_pure: float = 0.5) -> BehavioralProfile:
    per = {p: {} for p in g.players}
    for I, s in g.infosets.items():
        per[s.player][I] = random_distribution(rng, s.actions, p_pure)
    return BehavioralProfile(BehavioralStrategy(p, c) for p, c in per.items())


def improved_profile(g: GameTree, sigma: BehavioralProfile) -> BehavioralProfile:
    """Sweep information sets deepest first, switching each to a pure local
    best response against the uniform tremble of the current profile.  The
    result often passes the refinement checks, which a random profile rarely
    does."""
    for I in reversed(g.infoset_order):
        i = g.infosets[I].player
        trem = uniform_tremble(sigma)
        s = local_shortfall(g, i, I, sigma.dist(I), trem)
        if s.amount > 0:
            best = s.deviation_action
            choice = dict(sigma[i].choice)
            choice[I] = {a: Fraction(int(a == best)) for a in g.infosets[I].actions}
            sigma = sigma.replace(BehavioralStrategy(i, choice))
    return sigma


def corpus(seed: int, size: int):
    """(game, standard profile) pairs; every other profile is improved."""
    rng = random.Random(seed)
    out = []
    for k in range(size):
        g = random_game(rng)
        sigma = random_profile(rng, g)
        if k % 2:
            sigma = improved_profile(g, sigma)
        out.append((g, sigma))
    return out
