"""Reach probabilities, induced beliefs and conditional expected utility."""

from typing import Dict, Optional

from .errors import NotCompletelyMixed
from .field import ONE, ZERO, NonstdNum, as_nonstd, nsum
from .game import Chance, GameTree, History, InfoSetId, NodeId, Player, Terminal
from .strategy import BehavioralProfile, is_completely_mixed

BeliefSystem = Dict[InfoSetId, Dict[NodeId, NonstdNum]]
OutcomeDistribution = Dict[History, NonstdNum]


def action_prob(g: GameTree, p: BehavioralProfile, node: NodeId, a) -> NonstdNum:
    n = g.nodes[node]
    if isinstance(n, Chance):
        return as_nonstd(n.dist[a])
    return p.prob(n.infoset, a)


def _node_of(g: GameTree, h) -> NodeId:
    return h.node if isinstance(h, History) else h


def reach_prob(g: GameTree, p: BehavioralProfile, h) -> NonstdNum:
    """Probability that play passes through history (or node) ``h``."""
    node = _node_of(g, h)
    acc = ONE
    for anc in g.ancestors[node]:
        acc = acc * action_prob(g, p, anc, g.parent_action(anc, node))
        if acc.is_zero():
            break
    return acc


def reach_prob_infoset(g: GameTree, p: BehavioralProfile, I: InfoSetId) -> NonstdNum:
    return nsum(reach_prob(g, p, m) for m in g.infosets[I].members)


def induced_beliefs(g: GameTree, p: BehavioralProfile) -> BeliefSystem:
    """mu_I(h) = Pr_p(h | I) for every information set; needs a completely mixed p."""
    if not is_completely_mixed(p):
        raise NotCompletelyMixed("induced beliefs need a completely mixed profile")
    out: BeliefSystem = {}
    for I in g.infoset_order:
        reach = {m: reach_prob(g, p, m) for m in g.infosets[I].members}
        total = nsum(reach.values())
        out[I] = {m: r / total for m, r in reach.items()}
    return out


def standard_beliefs(mu: BeliefSystem) -> BeliefSystem:
    return {I: {m: as_nonstd(v.standard_part()) for m, v in d.items()} for I, d in mu.items()}


def subtree_value(g: GameTree, p: BehavioralProfile, node: NodeId, player: Player,
                  memo: Optional[dict] = None) -> NonstdNum:
    """sum_z Pr_p(z | node) * u_player(z), over terminals z below ``node``."""
    if memo is not None and node in memo:
        return memo[node]
    n = g.nodes[node]
    if isinstance(n, Terminal):
        out = as_nonstd(n.payoffs[player])
    else:
        out = ZERO
        dist = n.dist if isinstance(n, Chance) else p.dist(n.infoset)
        for a, c in n.children.items():
            pr = dist[a]
            if pr:
                out = out + pr * subtree_value(g, p, c, player, memo)
    if memo is not None:
        memo[node] = out
    return out


def cond_eu(g: GameTree, player: Player, p: BehavioralProfile, mu: BeliefSystem,
            I: InfoSetId) -> NonstdNum:
    """EU_player((p, mu) | I) = sum_{h in I} mu_I(h) sum_z Pr_p(z|h) u(z)."""
    memo: dict = {}
    return nsum(mu[I][h] * subtree_value(g, p, h, player, memo)
                for h in g.infosets[I].members if mu[I].get(h, ZERO))


def outcome_distribution(g: GameTree, p: BehavioralProfile) -> OutcomeDistribution:
    out: OutcomeDistribution = {}

    def walk(node, pr):
        n = g.nodes[node]
        if isinstance(n, Terminal):
            out[g.history(node)] = pr
            return
        dist = n.dist if isinstance(n, Chance) else p.dist(n.infoset)
        for a, c in n.children.items():
            walk(c, pr * dist[a])

    walk(g.root, ONE)
    return out


def expected_utility(g: GameTree, p: BehavioralProfile, player: Player) -> NonstdNum:
    """Ex ante expected utility."""
    return subtree_value(g, p, g.root, player, {})

