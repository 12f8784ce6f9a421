"""Best-response and local best-response analysis against a completely mixed
profile.

A *shortfall* is how much a player could gain, conditional on reaching an
information set I, by deviating from the strategy under test:

* global: any continuation strategy from I on may replace sigma_i;
* local: only the distribution at I changes, play elsewhere follows the
  tremble.

Strategy ``sigma_i`` is eps-best at I iff its global shortfall is <= eps,
and a distribution ``a`` at I is locally eps-best iff its local shortfall
is <= eps.  The reaching distribution (the belief at I) always comes from the
tremble, never from the deviation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .errors import (NotCompletelyMixed, NotInfinitesimallyClose, PreconditionFailed,
                     RouteDisagreement, WrongPlayer)
from .field import ZERO, NonstdNum, as_nonstd, nmax, nsum
from .game import (ActionId, Chance, Decision, GameTree, InfoSetId, NodeId, Player, Terminal,
                   max_height)
from .strategy import (BehavioralProfile, BehavioralStrategy, differ_infinitesimally,
                       is_completely_mixed, is_standard, point_mass)
from .valuation import reach_prob, subtree_value


@dataclass(frozen=True)
class Shortfall:
    player: Player
    infoset: InfoSetId
    #: global: infoset -> action of the best pure continuation; local: {infoset: action}
    best_deviation: Mapping[InfoSetId, ActionId]
    amount: NonstdNum
    kind: str = "global"

    @property
    def deviation_action(self) -> ActionId:
        return self.best_deviation[self.infoset]


@dataclass(frozen=True)
class LocalToGlobalCert:
    player: Player
    eps: NonstdNum
    eps_prime: NonstdNum
    d: int
    bound: NonstdNum = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "bound", self.d * (self.eps + self.eps_prime))


def _require_mixed(trem: BehavioralProfile) -> None:
    if not is_completely_mixed(trem):
        raise NotCompletelyMixed("the tremble must give every action positive probability")


def _owned(g: GameTree, i: Player, I: InfoSetId) -> None:
    if g.infosets[I].player != i:
        raise WrongPlayer(f"information set {I!r} belongs to player {g.infosets[I].player}, not {i}")


def _weights(g: GameTree, trem: BehavioralProfile, I: InfoSetId) -> List[Tuple[NodeId, NonstdNum]]:
    """Unnormalized beliefs at I: the tremble's reach probability of each member."""
    return [(m, reach_prob(g, trem, m)) for m in g.infosets[I].members]


def _best_continuation(g: GameTree, i: Player, trem: BehavioralProfile, J: InfoSetId,
                       members: List[Tuple[NodeId, NonstdNum]]):
    """Best pure continuation for player i from information set J, where each
    member of J carries an unnormalized weight.  Returns (value, choices).

    Under perfect recall each later set of player i is entered through a
    single (set, action) pair, so the sets below J can be optimized
    independently once their members' weights are known.
    """
    iset = g.infosets[J]
    best_val: Optional[NonstdNum] = None
    best_choice: Dict[InfoSetId, ActionId] = {}
    for a in iset.actions:
        total = ZERO
        buckets: Dict[InfoSetId, List[Tuple[NodeId, NonstdNum]]] = {}
        stack = [(g.nodes[y].children[a], w) for y, w in members]
        while stack:
            node, w = stack.pop()
            n = g.nodes[node]
            if isinstance(n, Terminal):
                total = total + w * n.payoffs[i]
            elif isinstance(n, Decision) and n.player == i:
                buckets.setdefault(n.infoset, []).append((node, w))
            else:
                dist = n.dist if isinstance(n, Chance) else trem.dist(n.infoset)
                for b, c in n.children.items():
                    stack.append((c, w * dist[b]))
        choice = {J: a}
        for K in g.infoset_order:
            if K in buckets:
                v, ch = _best_continuation(g, i, trem, K, buckets[K])
                total = total + v
                choice.update(ch)
        if best_val is None or total > best_val:
            best_val, best_choice = total, choice
    return best_val, best_choice


def global_shortfall(g: GameTree, i: Player, I: InfoSetId, sigma_i: BehavioralStrategy,
                     trem: BehavioralProfile) -> Shortfall:
    """max over continuation strategies tau of EU(tau | I) - EU(sigma_i | I),
    opponents and beliefs from ``trem``."""
    g.require_valid()
    _require_mixed(trem)
    _owned(g, i, I)
    weights = _weights(g, trem, I)
    reach = nsum(w for _, w in weights)
    best, choice = _best_continuation(g, i, trem, I, weights)
    q = trem.replace(sigma_i)
    memo: dict = {}
    own = nsum(w * subtree_value(g, q, m, i, memo) for m, w in weights)
    return Shortfall(i, I, choice, (best - own) / reach, "global")


def _action_values(g: GameTree, i: Player, I: InfoSetId, profile: BehavioralProfile,
                   weights, memo: dict) -> Dict[ActionId, NonstdNum]:
    """Unnormalized conditional value of each pure action at I, continuation
    from ``profile``."""
    out = {}
    for a in g.infosets[I].actions:
        out[a] = nsum(w * subtree_value(g, profile, g.nodes[m].children[a], i, memo)
                      for m, w in weights)
    return out


def local_shortfall(g: GameTree, i: Player, I: InfoSetId, a: Union[ActionId, Mapping],
                    trem: BehavioralProfile) -> Shortfall:
    """max over pure a' of EU(trem_i[I/a'] | I) - EU(trem_i[I/a] | I)."""
    g.require_valid()
    _require_mixed(trem)
    _owned(g, i, I)
    acts = g.infosets[I].actions
    dist = point_mass(acts, a) if isinstance(a, str) else {k: as_nonstd(v) for k, v in a.items()}
    weights = _weights(g, trem, I)
    reach = nsum(w for _, w in weights)
    vals = _action_values(g, i, I, trem, weights, {})
    best_a = acts[0]
    for b in acts[1:]:
        if vals[b] > vals[best_a]:
            best_a = b
    own = nsum(dist[b] * vals[b] for b in acts if dist[b])
    return Shortfall(i, I, {I: best_a}, (vals[best_a] - own) / reach, "local")


def eps_best_report(g: GameTree, i: Player, sigma_i: BehavioralStrategy,
                    trem: BehavioralProfile) -> List[Shortfall]:
    return [global_shortfall(g, i, I, sigma_i, trem) for I in g.infosets_of(i)]


def is_eps_best(g: GameTree, i: Player, sigma_i: BehavioralStrategy, trem: BehavioralProfile,
                eps) -> bool:
    eps = as_nonstd(eps)
    return all(s.amount <= eps for s in eps_best_report(g, i, sigma_i, trem))


def local_report(g: GameTree, i: Player, sigma_i: BehavioralStrategy,
                 trem: BehavioralProfile) -> List[Shortfall]:
    return [local_shortfall(g, i, I, sigma_i.choice[I], trem) for I in g.infosets_of(i)]


def is_local_eps_best_profile(g: GameTree, i: Player, sigma_i: BehavioralStrategy,
                              trem: BehavioralProfile, eps) -> bool:
    eps = as_nonstd(eps)
    return all(s.amount <= eps for s in local_report(g, i, sigma_i, trem))


def _check_close(sigma_i: BehavioralStrategy, trem: BehavioralProfile) -> None:
    if not is_standard(sigma_i):
        raise NotInfinitesimallyClose(f"strategy of player {sigma_i.player} is not standard")
    own = BehavioralProfile([sigma_i])
    other = BehavioralProfile([trem[sigma_i.player]])
    if not differ_infinitesimally(own, other):
        raise NotInfinitesimallyClose(
            f"strategy of player {sigma_i.player} is not infinitesimally close to the tremble")


def substitution_gap(g: GameTree, i: Player, sigma_i: BehavioralStrategy,
                     trem: BehavioralProfile) -> NonstdNum:
    """How far conditional utilities move when i's continuation switches
    between sigma_i and the tremble's strategy for i.

    For every information set I of i this takes the largest of
      |EU(sigma_i | I) - EU(trem_i | I)|,
      |D_a| and max_a D_a - min_a D_a,  where D_a = EU(sigma_i[I/a] | I) - EU(trem_i[I/a] | I),
    and returns the maximum over I.  Always infinitesimal when the two
    strategies differ infinitesimally.
    """
    g.require_valid()
    _require_mixed(trem)
    _check_close(sigma_i, trem)
    q = trem.replace(sigma_i)
    memo_q: dict = {}
    memo_t: dict = {}
    gap = ZERO
    for I in g.infosets_of(i):
        weights = _weights(g, trem, I)
        reach = nsum(w for _, w in weights)
        vq = _action_values(g, i, I, q, weights, memo_q)
        vt = _action_values(g, i, I, trem, weights, memo_t)
        d = [(vq[a] - vt[a]) / reach for a in g.infosets[I].actions]
        whole = nsum(w * (subtree_value(g, q, m, i, memo_q) - subtree_value(g, trem, m, i, memo_t))
                     for m, w in weights) / reach
        cand = nmax([abs(whole), nmax(abs(x) for x in d), nmax(d) + nmax(-x for x in d)])
        if cand > gap:
            gap = cand
    if gap.standard_part() != 0:
        raise NotInfinitesimallyClose(f"substitution gap {gap} is not infinitesimal")
    return gap


def min_support_prob(sigma) -> Fraction:
    """Smallest positive probability any player's strategy assigns."""
    if isinstance(sigma, BehavioralStrategy):
        entries = [v for d in sigma.choice.values() for v in d.values()]
    else:
        entries = [v for *_, v in sigma.entries()]
    pos = [as_nonstd(v).standard_part() for v in entries if as_nonstd(v).sign() > 0]
    if not pos:
        raise PreconditionFailed("strategy has no positive entry")
    return min(pos)


def local_to_global(g: GameTree, i: Player, sigma_i: BehavioralStrategy, trem: BehavioralProfile,
                    eps) -> LocalToGlobalCert:
    """Certificate that a locally eps-best sigma_i is d*(eps + gap)-best, d the
    largest height among i's information sets.  The bound is re-checked."""
    eps = as_nonstd(eps)
    if not is_local_eps_best_profile(g, i, sigma_i, trem, eps):
        raise PreconditionFailed(f"player {i}'s strategy is not a local {eps}-best response")
    gap = substitution_gap(g, i, sigma_i, trem)
    cert = LocalToGlobalCert(i, eps, gap, max_height(g, i))
    if not is_eps_best(g, i, sigma_i, trem, cert.bound):
        raise RouteDisagreement(f"local-to-global bound {cert.bound} fails for player {i}")
    return cert
