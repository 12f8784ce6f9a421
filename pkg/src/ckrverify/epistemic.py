"""Finite epistemic models and rationality at states.

Common knowledge of rationality in a model is taken to mean that the
rationality predicate holds for every player at every state.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import (IncompatibleModel, NotCompletelyMixed, NotInfinitesimallyClose,
                     ZeroConditioningEvent)
from .field import ZERO, NonstdNum, as_nonstd
from .game import (ActionId, Decision, GameTree, History, InfoSetId, Player, Profile,
                   StrategicGame)
from .response import Shortfall, global_shortfall, local_shortfall
from .strategy import (BehavioralProfile, differ_infinitesimally, is_completely_mixed,
                       is_standard)
from .valuation import outcome_distribution
from .verdict import Certificate, Counterexample, Verdict

StateId = str


@dataclass(frozen=True)
class ExtensiveModel:
    states: Tuple[StateId, ...]
    outcome: Mapping[StateId, History]
    priors: Mapping[Player, Mapping[StateId, NonstdNum]]


@dataclass(frozen=True)
class StrategicModel:
    players: Tuple[Player, ...]
    states: Tuple[StateId, ...]
    profile: Mapping[StateId, Profile]
    priors: Mapping[Player, Mapping[StateId, Fraction]]


# -- extensive form --------------------------------------------------------

def pushforward(m: ExtensiveModel, i: Player) -> Dict[History, NonstdNum]:
    """Player i's prior pushed onto terminal histories."""
    out: Dict[History, NonstdNum] = {}
    for w in m.states:
        z = m.outcome[w]
        out[z] = out.get(z, ZERO) + as_nonstd(m.priors[i].get(w, ZERO))
    return out


def is_compatible(g: GameTree, m: ExtensiveModel, trem: BehavioralProfile) -> bool:
    """Every player's pushforward equals the outcome distribution of ``trem``."""
    target = outcome_distribution(g, trem)
    for i in g.players:
        if i not in m.priors:
            return False
        pf = pushforward(m, i)
        if set(pf) - set(target):
            return False
        if any(pf.get(z, ZERO) != p for z, p in target.items()):
            return False
    return True


def canonical_model(g: GameTree, trem: BehavioralProfile) -> ExtensiveModel:
    """One state per terminal history, common prior equal to the tremble's
    outcome distribution."""
    g.require_valid()
    dist = outcome_distribution(g, trem)
    states, outcome, prior = [], {}, {}
    for t in g.terminals:
        h = g.history(t)
        w = f"w:{'.'.join(h.path)}"
        states.append(w)
        outcome[w] = h
        prior[w] = dist[h]
    return ExtensiveModel(tuple(states), outcome, {i: dict(prior) for i in g.players})


def _on_path(g: GameTree, z: History, i: Player) -> Iterator[Tuple[InfoSetId, ActionId]]:
    """(information set, action) for each of i's decisions along ``z``."""
    for anc in g.ancestors[z.node]:
        n = g.nodes[anc]
        if isinstance(n, Decision) and n.player == i:
            yield n.infoset, g.parent_action(anc, z.node)


def _check_inputs(g: GameTree, m: ExtensiveModel, trem: BehavioralProfile,
                  sigma: BehavioralProfile) -> None:
    g.require_valid()
    if not is_completely_mixed(trem):
        raise NotCompletelyMixed("rationality is only defined against a completely mixed profile")
    if not is_standard(sigma) or not differ_infinitesimally(sigma, trem):
        raise NotInfinitesimallyClose("sigma must be the standard part of the tremble")
    if not is_compatible(g, m, trem):
        raise IncompatibleModel("model priors do not push forward to the tremble's outcome distribution")


class _Shortfalls:
    """Per-call cache: each (player, set) or (player, set, action) is solved once."""

    def __init__(self, g, trem, sigma):
        self.g, self.trem, self.sigma = g, trem, sigma
        self._glob: Dict = {}
        self._loc: Dict = {}

    def glob(self, i, I) -> Shortfall:
        if (i, I) not in self._glob:
            self._glob[(i, I)] = global_shortfall(self.g, i, I, self.sigma[i], self.trem)
        return self._glob[(i, I)]

    def loc(self, i, I, a) -> Shortfall:
        if (i, I, a) not in self._loc:
            self._loc[(i, I, a)] = local_shortfall(self.g, i, I, a, self.trem)
        return self._loc[(i, I, a)]


def _local_failure(g, m, sf: _Shortfalls, i, w, eps) -> Optional[Tuple[InfoSetId, ActionId, Shortfall]]:
    for I, a in _on_path(g, m.outcome[w], i):
        if sf.trem.prob(I, a).standard_part() > 0:
            s = sf.loc(i, I, a)
            if s.amount > eps:
                return I, a, s
    return None


def _global_failure(g, m, sf: _Shortfalls, i, w, eps) -> Optional[Tuple[InfoSetId, ActionId, Shortfall]]:
    for I, a in _on_path(g, m.outcome[w], i):
        s = sf.glob(i, I)
        if s.amount > eps:
            return I, a, s
    return None


def is_locally_rational(g: GameTree, m: ExtensiveModel, trem: BehavioralProfile,
                        sigma: BehavioralProfile, i: Player, w: StateId, eps=0) -> bool:
    """At every set of i on the path of state w, the action played there, if
    it keeps positive standard probability, is a local eps-best response."""
    _check_inputs(g, m, trem, sigma)
    return _local_failure(g, m, _Shortfalls(g, trem, sigma), i, w, as_nonstd(eps)) is None


def is_rational(g: GameTree, m: ExtensiveModel, trem: BehavioralProfile,
                sigma: BehavioralProfile, i: Player, w: StateId, eps=0) -> bool:
    """At every set of i on the path of state w, sigma_i is an eps-best response."""
    _check_inputs(g, m, trem, sigma)
    return _global_failure(g, m, _Shortfalls(g, trem, sigma), i, w, as_nonstd(eps)) is None


def rationality_slack(g: GameTree, m: ExtensiveModel, trem: BehavioralProfile,
                      sigma: BehavioralProfile, mode: str = "global") -> NonstdNum:
    """The least eps for which eps-(local) rationality holds at every state."""
    _check_inputs(g, m, trem, sigma)
    sf = _Shortfalls(g, trem, sigma)
    worst = ZERO
    for w in m.states:
        for i in g.players:
            for I, a in _on_path(g, m.outcome[w], i):
                if mode == "local":
                    if trem.prob(I, a).standard_part() <= 0:
                        continue
                    amt = sf.loc(i, I, a).amount
                else:
                    amt = sf.glob(i, I).amount
                if amt > worst:
                    worst = amt
    return worst


def ck_rationality(g: GameTree, m: ExtensiveModel, trem: BehavioralProfile,
                   sigma: BehavioralProfile, eps=0, mode: str = "global") -> Verdict:
    """Is (local) eps-rationality universal in ``m``?  The counterexample is
    the first failure in (player, state) order."""
    if mode not in ("local", "global"):
        raise ValueError(f"mode must be 'local' or 'global', not {mode!r}")
    _check_inputs(g, m, trem, sigma)
    eps = as_nonstd(eps)
    sf = _Shortfalls(g, trem, sigma)
    failure = _local_failure if mode == "local" else _global_failure
    concept = f"ck-{mode}-rationality"
    for i in sorted(g.players):
        for w in m.states:
            bad = failure(g, m, sf, i, w, eps)
            if bad is not None:
                I, a, s = bad
                return Verdict(False, concept, "epistemic", counterexample=Counterexample(
                    player=i, infoset=I, state=w, played=a,
                    deviation=s.deviation_action, shortfall=s.amount))
    return Verdict(True, concept, "epistemic",
                   certificate=Certificate(tremble=trem, eps=eps, model=m),
                   degenerate=not m.states)


# -- strategic form ---------------------------------------------------------

def _split(m: StrategicModel, i: Player, prof: Profile) -> Tuple[str, Profile]:
    k = m.players.index(i)
    return prof[k], tuple(prof[:k]) + tuple(prof[k + 1:])


def condition_prior(m: StrategicModel, i: Player, w: StateId) -> Dict[Profile, Fraction]:
    """Player i's belief about the others' strategies at state w: the prior
    conditioned on i's own strategy there, marginalized to the others."""
    own, _ = _split(m, i, m.profile[w])
    joint: Dict[Profile, Fraction] = {}
    for v in m.states:
        s, rest = _split(m, i, m.profile[v])
        if s == own:
            joint[rest] = joint.get(rest, Fraction(0)) + m.priors[i].get(v, Fraction(0))
    total = sum(joint.values(), Fraction(0))
    if total <= 0:
        raise ZeroConditioningEvent(f"player {i} assigns probability 0 to playing {own!r}")
    return {t: p / total for t, p in joint.items() if p}


def strategic_shortfall(gS: StrategicGame, m: StrategicModel, i: Player,
                        w: StateId) -> Tuple[Fraction, str]:
    """(gain of i's best deviation at w, that deviation)."""
    belief = condition_prior(m, i, w)
    own, _ = _split(m, i, m.profile[w])

    def eu(S):
        return sum((p * gS.u(i, gS.join(i, S, t)) for t, p in belief.items()), Fraction(0))

    base = eu(own)
    best, best_s = base, own
    for S in gS.strategies[i]:
        v = eu(S)
        if v > best:
            best, best_s = v, S
    return best - base, best_s


def is_rational_strategic(gS: StrategicGame, m: StrategicModel, i: Player, w: StateId) -> bool:
    return strategic_shortfall(gS, m, i, w)[0] <= 0


def ck_rationality_strategic(gS: StrategicGame, m: StrategicModel) -> Verdict:
    for i in gS.players:
        for w in m.states:
            gain, dev = strategic_shortfall(gS, m, i, w)
            if gain > 0:
                return Verdict(False, "ck-rationality", "epistemic", counterexample=Counterexample(
                    player=i, state=w, played=_split(m, i, m.profile[w])[0],
                    deviation=dev, shortfall=as_nonstd(gain)))
    return Verdict(True, "ck-rationality", "epistemic", certificate=Certificate(model=m),
                   degenerate=not m.states)


def has_common_prior(m: StrategicModel) -> bool:
    priors = [m.priors[i] for i in m.players]
    norm = [{w: p.get(w, Fraction(0)) for w in m.states} for p in priors]
    return all(n == norm[0] for n in norm[1:])


def profile_distribution(m: StrategicModel, i: Player) -> Dict[Profile, Fraction]:
    out: Dict[Profile, Fraction] = {}
    for w in m.states:
        p = m.priors[i].get(w, Fraction(0))
        if p:
            out[m.profile[w]] = out.get(m.profile[w], Fraction(0)) + p
    return out


def is_product_distribution(dist: Mapping[Profile, Fraction]) -> bool:
    """Does the distribution factor as a product of its marginals?"""
    if not dist:
        return True
    n = len(next(iter(dist)))
    margs: List[Dict[str, Fraction]] = [{} for _ in range(n)]
    for prof, p in dist.items():
        for k, s in enumerate(prof):
            margs[k][s] = margs[k].get(s, Fraction(0)) + p
    for combo in itertools.product(*(sorted(mg) for mg in margs)):
        expect = Fraction(1)
        for k, s in enumerate(combo):
            expect *= margs[k][s]
        if dist.get(combo, Fraction(0)) != expect:
            return False
    return True


def is_product_prior(m: StrategicModel, i: Player) -> bool:
    """Is player i's induced distribution on profiles a cross product?"""
    return is_product_distribution(profile_distribution(m, i))


def model_from_distribution(players: Sequence[Player], dist: Mapping[Profile, Fraction],
                            name: str = "w") -> StrategicModel:
    """States = the support of ``dist``; every player's prior is ``dist``."""
    support = [prof for prof, p in dist.items() if p]
    states = tuple(f"{name}:{'.'.join(prof)}" for prof in support)
    profile = dict(zip(states, support))
    prior = {w: Fraction(dist[profile[w]]) for w in states}
    return StrategicModel(tuple(players), states, profile, {i: dict(prior) for i in players})
