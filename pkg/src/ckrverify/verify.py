"""Solution-concept verifiers.

Each extensive-form check runs a *direct* route (inequalities against the
tremble) and, on request, an *epistemic* route (common knowledge of
rationality in the canonical model of the tremble).  The routes must agree;
disagreement raises RouteDisagreement.  These are certificate checkers: a
failure means the given tremble does not work, not that no tremble does.
"""

import itertools
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .epistemic import (StrategicModel, canonical_model, ck_rationality, ck_rationality_strategic,
                        has_common_prior, is_product_prior, model_from_distribution,
                        profile_distribution, rationality_slack)
from .errors import (BadDistribution, BudgetExhausted, NotCompletelyMixed, NotInfinitesimallyClose,
                     NotRationalizable, RouteDisagreement)
from .field import ZERO, NonstdNum, as_nonstd, nmax
from .game import GameTree, Player, Profile, StrategicGame, max_height
from .lp import find_belief
from .response import (eps_best_report, global_shortfall, local_report, local_to_global,
                       min_support_prob, substitution_gap)
from .strategy import (BehavioralProfile, check_profile, differ_infinitesimally,
                       is_completely_mixed, is_standard, monomial_tremble, standard_part_profile,
                       uniform_tremble)
from .valuation import induced_beliefs, standard_beliefs
from .verdict import Certificate, Counterexample, Verdict

MixedProfile = Mapping[Player, Mapping[str, Fraction]]


# -- strategic form ---------------------------------------------------------

def _mixed(gS: StrategicGame, sigma: MixedProfile) -> Dict[Player, Dict[str, Fraction]]:
    out = {}
    for i in gS.players:
        d = {s: Fraction(sigma.get(i, {}).get(s, 0)) for s in gS.strategies[i]}
        extra = set(sigma.get(i, {})) - set(gS.strategies[i])
        if extra:
            raise BadDistribution(f"player {i} has no strategy {sorted(extra)[0]!r}")
        if any(v < 0 for v in d.values()) or sum(d.values()) != 1:
            raise BadDistribution(f"player {i}'s mixed strategy is not a distribution")
        out[i] = d
    return out


def product_distribution(gS: StrategicGame, sigma: MixedProfile) -> Dict[Profile, Fraction]:
    sig = _mixed(gS, sigma)
    out = {}
    for prof in gS.profiles():
        p = Fraction(1)
        for i, s in zip(gS.players, prof):
            p *= sig[i][s]
        if p:
            out[prof] = p
    return out


def _agree(direct: Verdict, other: Verdict, what: str) -> None:
    if direct.passed != other.passed:
        raise RouteDisagreement(
            f"{what}: direct route says {direct.passed}, {other.route} route says {other.passed}")


def check_nash(gS: StrategicGame, sigma: MixedProfile, epistemic: bool = True) -> Verdict:
    """Direct: every strategy in the support earns the best payoff against
    the others' mixture.  Epistemic: the common product prior over the
    support makes rationality universal."""
    sig = _mixed(gS, sigma)
    cx = None
    payoffs = {}
    for i in gS.players:
        opp = [p for p in gS.players if p != i]
        eu = {}
        for S in gS.strategies[i]:
            total = Fraction(0)
            for t in gS.opponent_profiles(i):
                w = Fraction(1)
                for j, s in zip(opp, t):
                    w *= sig[j][s]
                if w:
                    total += w * gS.u(i, gS.join(i, S, t))
            eu[S] = total
        best = max(eu.values())
        best_s = next(S for S in gS.strategies[i] if eu[S] == best)
        payoffs[i] = sum((sig[i][S] * eu[S] for S in gS.strategies[i]), Fraction(0))
        for S in gS.strategies[i]:
            if sig[i][S] > 0 and eu[S] < best and cx is None:
                cx = Counterexample(player=i, played=S, deviation=best_s,
                                    shortfall=as_nonstd(best - eu[S]))
    dist = product_distribution(gS, sigma)
    if cx is None:
        verdict = Verdict(True, "nash", "direct", certificate=Certificate(
            extra={"expected_payoffs": payoffs}))
    else:
        verdict = Verdict(False, "nash", "direct", counterexample=cx)
    if epistemic:
        m = model_from_distribution(gS.players, dist)
        ep = ck_rationality_strategic(gS, m)
        if not has_common_prior(m) or not all(is_product_prior(m, i) for i in gS.players):
            raise RouteDisagreement("Nash witness model lost its common product prior")
        if any(profile_distribution(m, i) != dist for i in gS.players):
            raise RouteDisagreement("Nash witness model does not induce the profile distribution")
        _agree(verdict, ep, "nash")
        verdict.routes["epistemic"] = ep
    return verdict


def check_correlated(gS: StrategicGame, eta: Mapping[Profile, Fraction],
                     epistemic: bool = True) -> Verdict:
    """Direct: obeying each recommendation is optimal against the posterior it
    induces.  Epistemic: the common prior eta makes rationality universal."""
    eta = {tuple(k): Fraction(v) for k, v in eta.items()}
    if any(v < 0 for v in eta.values()) or sum(eta.values()) != 1:
        raise BadDistribution("eta is not a distribution")
    unknown = set(eta) - set(gS.profiles())
    if unknown:
        raise BadDistribution(f"eta mentions unknown profile {sorted(unknown)[0]}")
    cx = None
    for i in gS.players:
        for S in gS.strategies[i]:
            told = {t: p for prof, p in eta.items() if p for s, t in [gS.split(i, prof)] if s == S}
            if not told:
                continue

            def gain(D):
                return sum((p * gS.u(i, gS.join(i, D, t)) for t, p in told.items()), Fraction(0))

            base = gain(S)
            vals = {D: gain(D) for D in gS.strategies[i]}
            best = max(vals.values())
            if best > base and cx is None:
                dev = next(D for D in gS.strategies[i] if vals[D] == best)
                mass = sum(told.values(), Fraction(0))
                cx = Counterexample(player=i, played=S, deviation=dev,
                                    shortfall=as_nonstd((best - base) / mass))
    if cx is None:
        verdict = Verdict(True, "correlated", "direct", certificate=Certificate(extra={"eta": eta}))
    else:
        verdict = Verdict(False, "correlated", "direct", counterexample=cx)
    if epistemic:
        m = model_from_distribution(gS.players, eta)
        ep = ck_rationality_strategic(gS, m)
        if not has_common_prior(m):
            raise RouteDisagreement("correlated witness model lost its common prior")
        _agree(verdict, ep, "correlated")
        verdict.routes["epistemic"] = ep
    return verdict


def _belief_for(gS: StrategicGame, i: Player, S: str, own: Sequence[str],
                others: List[Profile]) -> Optional[Dict[Profile, Fraction]]:
    """A belief over ``others`` making S a best response among ``own``."""
    rows = [[gS.u(i, gS.join(i, S, t)) - gS.u(i, gS.join(i, D, t)) for t in others]
            for D in own if D != S]
    p = find_belief(rows, len(others))
    if p is None:
        return None
    return {t: x for t, x in zip(others, p) if x}


def _surviving(gS: StrategicGame) -> Dict[Player, Tuple[str, ...]]:
    R = {i: tuple(gS.strategies[i]) for i in gS.players}
    while True:
        nxt = {}
        for i in gS.players:
            others = list(itertools.product(*(R[j] for j in gS.players if j != i)))
            nxt[i] = tuple(S for S in R[i] if _belief_for(gS, i, S, R[i], others) is not None)
        if nxt == R:
            return R
        R = nxt


def rationalizable(gS: StrategicGame) -> Dict[Player, Tuple[str, ...]]:
    """Strategies surviving iterated removal of never-best responses against
    correlated beliefs about the others."""
    return _surviving(gS)


def witness_model(gS: StrategicGame, player: Player, S: str) -> StrategicModel:
    """A model in which rationality is universal and ``player`` plays S at
    some state.

    States are the surviving profiles; player i's prior picks one of i's
    surviving strategies uniformly and then the opponents' profile from a
    belief that makes that strategy a best response.
    """
    R = _surviving(gS)
    if S not in R[player]:
        raise NotRationalizable(f"{S!r} is not rationalizable for player {player}")
    beliefs: Dict[Player, Dict[str, Dict[Profile, Fraction]]] = {}
    for i in gS.players:
        others = list(itertools.product(*(R[j] for j in gS.players if j != i)))
        beliefs[i] = {}
        for s in R[i]:
            b = _belief_for(gS, i, s, gS.strategies[i], others)
            if b is None:
                raise RouteDisagreement(f"surviving strategy {s!r} has no supporting belief")
            beliefs[i][s] = b
    states, profile = [], {}
    for prof in itertools.product(*(R[i] for i in gS.players)):
        w = "w:" + ".".join(prof)
        states.append(w)
        profile[w] = prof
    priors = {}
    for i in gS.players:
        share = Fraction(1, len(R[i]))
        pr = {}
        for w in states:
            s, t = gS.split(i, profile[w])
            pr[w] = share * beliefs[i][s].get(t, Fraction(0))
        priors[i] = pr
    m = StrategicModel(tuple(gS.players), tuple(states), profile, priors)
    if not ck_rationality_strategic(gS, m).passed:
        raise RouteDisagreement("rationalizability witness model is not rational everywhere")
    return m


# -- extensive form ---------------------------------------------------------

def _prepare(g: GameTree, sigma: BehavioralProfile, trem: BehavioralProfile) -> None:
    g.require_valid()
    check_profile(g, sigma)
    check_profile(g, trem)
    if not is_completely_mixed(trem):
        raise NotCompletelyMixed("the tremble is not completely mixed")
    if not is_standard(sigma):
        raise NotInfinitesimallyClose("the candidate profile must be standard")
    if not differ_infinitesimally(sigma, trem):
        raise NotInfinitesimallyClose("the tremble is not infinitesimally close to the candidate")


def _support_label(d) -> str:
    return "+".join(a for a, v in d.items() if v.sign() > 0)


def _attach_epistemic(verdict: Verdict, g, sigma, trem, mode: str) -> Verdict:
    m = canonical_model(g, trem)
    ep = ck_rationality(g, m, trem, sigma, ZERO, mode)
    _agree(verdict, ep, verdict.concept)
    verdict.routes["epistemic"] = ep
    return verdict


def check_perfect(g: GameTree, sigma: BehavioralProfile, trem: BehavioralProfile,
                  epistemic: bool = True) -> Verdict:
    """sigma_i(I) must be a local best response against the tremble at every
    information set; epistemically, local rationality is universal in the
    canonical model."""
    _prepare(g, sigma, trem)
    cx = None
    for i in sorted(g.players):
        for s in local_report(g, i, sigma[i], trem):
            if s.amount > 0:
                cx = Counterexample(player=i, infoset=s.infoset,
                                    played=_support_label(sigma.dist(s.infoset)),
                                    deviation=s.deviation_action, shortfall=s.amount)
                break
        if cx:
            break
    if cx:
        verdict = Verdict(False, "perfect", "direct", counterexample=cx)
    else:
        verdict = Verdict(True, "perfect", "direct", certificate=Certificate(
            tremble=trem, eps=ZERO, belief=induced_beliefs(g, trem)))
    if epistemic:
        _attach_epistemic(verdict, g, sigma, trem, "local")
    return verdict


def check_quasi_perfect(g: GameTree, sigma: BehavioralProfile, trem: BehavioralProfile,
                        epistemic: bool = True) -> Verdict:
    """sigma_i must be a best response against the tremble at every
    information set; epistemically, rationality is universal in the canonical
    model."""
    _prepare(g, sigma, trem)
    cx = None
    for i in sorted(g.players):
        for s in eps_best_report(g, i, sigma[i], trem):
            if s.amount > 0:
                cx = Counterexample(player=i, infoset=s.infoset,
                                    played=_support_label(sigma.dist(s.infoset)),
                                    deviation=s.deviation_action, shortfall=s.amount)
                break
        if cx:
            break
    if cx:
        verdict = Verdict(False, "quasi-perfect", "direct", counterexample=cx)
    else:
        verdict = Verdict(True, "quasi-perfect", "direct", certificate=Certificate(
            tremble=trem, eps=ZERO, belief=induced_beliefs(g, trem)))
    if epistemic:
        _attach_epistemic(verdict, g, sigma, trem, "global")
    return verdict


def _slack_verdict(g, m, trem, sigma, mode: str, route: str) -> Tuple[Verdict, NonstdNum]:
    """Verdict for 'eps-(local) rationality is universal for some infinitesimal eps'."""
    slack = rationality_slack(g, m, trem, sigma, mode)
    if slack.standard_part() == 0:
        ck = ck_rationality(g, m, trem, sigma, slack, mode)
        if not ck.passed:
            raise RouteDisagreement(f"{mode} rationality fails at its own slack {slack}")
        return Verdict(True, "sequential", route, certificate=Certificate(
            tremble=trem, eps=slack, model=m)), slack
    # every failure at half the standard part has a positive standard part
    ck = ck_rationality(g, m, trem, sigma, as_nonstd(slack.standard_part() / 2), mode)
    if ck.passed:
        raise RouteDisagreement(f"{mode} rationality slack {slack} has no witness")
    return Verdict(False, "sequential", route, counterexample=ck.counterexample), slack


def check_sequential(g: GameTree, sigma: BehavioralProfile, trem: BehavioralProfile,
                     epistemic: bool = True) -> Verdict:
    """sigma must be an eps-best response against the tremble for some
    infinitesimal eps.  The tightest choice is eps* = the largest shortfall
    (floored at 0), so the check passes iff eps* is infinitesimal.

    On a pass the certificate carries eps*, the tremble, the limit beliefs
    st(mu) of the tremble, and per-player local-to-global bounds.  The
    epistemic route evaluates both eps-rationality and eps-local rationality
    in the canonical model and cross-checks them against the bounds relating
    them.
    """
    _prepare(g, sigma, trem)
    eps_star = ZERO
    cx = None
    for i in sorted(g.players):
        for s in eps_best_report(g, i, sigma[i], trem):
            if s.amount > eps_star:
                eps_star = s.amount
            if cx is None and s.amount.standard_part() > 0:
                cx = Counterexample(player=i, infoset=s.infoset,
                                    played=_support_label(sigma.dist(s.infoset)),
                                    deviation=s.deviation_action, shortfall=s.amount)
    if cx is None:
        bounds = {}
        for i in sorted(g.players):
            loc = nmax([ZERO] + [s.amount for s in local_report(g, i, sigma[i], trem)])
            bounds[i] = local_to_global(g, i, sigma[i], trem, loc)
        verdict = Verdict(True, "sequential", "direct", certificate=Certificate(
            tremble=trem, eps=eps_star, belief=standard_beliefs(induced_beliefs(g, trem)),
            bounds=bounds))
    else:
        verdict = Verdict(False, "sequential", "direct", counterexample=cx)

    if epistemic:
        m = canonical_model(g, trem)
        vb, eps_b = _slack_verdict(g, m, trem, sigma, "global", "epistemic-rationality")
        vc, eps_c = _slack_verdict(g, m, trem, sigma, "local", "epistemic-local-rationality")
        _agree(verdict, vb, "sequential")
        _agree(verdict, vc, "sequential")
        if eps_b != eps_star:
            raise RouteDisagreement(f"canonical-model slack {eps_b} differs from eps* {eps_star}")
        gap = nmax([ZERO] + [substitution_gap(g, i, sigma[i], trem) for i in g.players])
        d = max_height(g)
        if eps_b > d * (eps_c + gap):
            raise RouteDisagreement("local-to-global bound violated in the canonical model")
        if verdict.passed and g.infosets:
            r = min_support_prob(sigma)
            if eps_c > gap + eps_star + eps_star / r:
                raise RouteDisagreement("global-to-local bound violated in the canonical model")
        verdict.routes["epistemic-rationality"] = vb
        verdict.routes["epistemic-local-rationality"] = vc
    return verdict


CHECKS: Dict[str, Callable[..., Verdict]] = {
    "perfect": check_perfect,
    "quasi-perfect": check_quasi_perfect,
    "sequential": check_sequential,
}


def replay(g: GameTree, verdict: Verdict) -> Verdict:
    """Re-run the check a passing extensive-form verdict certifies, from its
    certificate alone."""
    trem = verdict.certificate.tremble
    return CHECKS[verdict.concept](g, standard_part_profile(trem), trem,
                                   epistemic=bool(verdict.routes))


def _candidates(sigma: BehavioralProfile, max_exponent: int,
                coefficients: Sequence[Fraction]) -> Iterator[BehavioralProfile]:
    off = [(I, a) for p, I, a, v in sigma.entries() if v.is_zero()]
    yield uniform_tremble(sigma)
    if not off:
        if is_completely_mixed(sigma):
            yield sigma
        return
    for k in range(1, max_exponent + 1):
        for c in coefficients:
            yield monomial_tremble(sigma, {x: (c, k) for x in off})
    for ks in itertools.product(range(1, max_exponent + 1), repeat=len(off)):
        for cs in itertools.product(coefficients, repeat=len(off)):
            if len(set(ks)) == 1 and len(set(cs)) == 1:
                continue
            yield monomial_tremble(sigma, {x: (c, k) for x, c, k in zip(off, cs, ks)})


def search_tremble(g: GameTree, sigma: BehavioralProfile, concept: str, max_exponent: int = 2,
                   coefficients: Iterable = (1,), max_candidates: int = 2000,
                   epistemic: bool = False) -> Tuple[BehavioralProfile, Verdict]:
    """Look for a tremble certifying ``concept`` for sigma.

    Tries the uniform tremble first, then trembles giving each unplayed
    action c * eps**k for k up to ``max_exponent`` and c in ``coefficients``.
    Raises BudgetExhausted when nothing in the family works; that is not a
    proof that no tremble exists.
    """
    check = CHECKS[concept]
    g.require_valid()
    check_profile(g, sigma)
    coefficients = [Fraction(c) for c in coefficients]
    tried = 0
    seen = set()
    for trem in _candidates(sigma, max_exponent, coefficients):
        key = tuple(trem.entries())
        if key in seen:
            continue
        seen.add(key)
        if tried >= max_candidates:
            break
        tried += 1
        verdict = check(g, sigma, trem, epistemic=epistemic)
        if verdict.passed:
            return trem, verdict
    raise BudgetExhausted(f"no tremble in the searched family certifies {concept} "
                          f"({tried} candidates tried)", tried)
