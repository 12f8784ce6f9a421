"""Behavioral strategies with probabilities in R(eps), and trembles."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .errors import BadDistribution, InvalidTremble, WrongPlayer
from .field import EPS, ONE, ZERO, NonstdNum, as_nonstd, from_poly, nsum
from .game import ActionId, GameTree, InfoSetId, Player

Dist = Dict[ActionId, NonstdNum]


def _dist(d: Mapping) -> Dist:
    return {a: as_nonstd(v) for a, v in d.items()}


@dataclass(frozen=True)
class BehavioralStrategy:
    player: Player
    choice: Mapping[InfoSetId, Dist]

    def __post_init__(self):
        object.__setattr__(self, "choice", {I: _dist(d) for I, d in self.choice.items()})


class BehavioralProfile:
    """One behavioral strategy per player."""

    def __init__(self, strategies: Iterable[BehavioralStrategy]):
        self.strategies: Dict[Player, BehavioralStrategy] = {s.player: s for s in strategies}
        self._by_infoset: Dict[InfoSetId, Dist] = {}
        for s in self.strategies.values():
            self._by_infoset.update(s.choice)

    @classmethod
    def from_mapping(cls, data: Mapping[Player, Mapping[InfoSetId, Mapping]]) -> "BehavioralProfile":
        return cls(BehavioralStrategy(p, c) for p, c in data.items())

    def dist(self, I: InfoSetId) -> Dist:
        return self._by_infoset[I]

    def prob(self, I: InfoSetId, a: ActionId) -> NonstdNum:
        return self._by_infoset[I][a]

    def __getitem__(self, player: Player) -> BehavioralStrategy:
        return self.strategies[player]

    def replace(self, s: BehavioralStrategy) -> "BehavioralProfile":
        out = dict(self.strategies)
        out[s.player] = s
        return BehavioralProfile(out.values())

    def entries(self):
        for p in sorted(self.strategies):
            for I, d in self.strategies[p].choice.items():
                for a, v in d.items():
                    yield p, I, a, v

    def to_mapping(self):
        return {p: {I: dict(d) for I, d in s.choice.items()} for p, s in sorted(self.strategies.items())}

    def __eq__(self, other):
        return isinstance(other, BehavioralProfile) and self.to_mapping() == other.to_mapping()

    def __repr__(self):
        return f"BehavioralProfile({self.to_mapping()!r})"


def check_distribution(d: Mapping, actions: Tuple[ActionId, ...], where: str = "") -> None:
    if set(d) != set(actions):
        raise BadDistribution(f"{where}: actions {sorted(d)} do not match {sorted(actions)}")
    if any(v < 0 for v in d.values()):
        raise BadDistribution(f"{where}: negative probability")
    if nsum(d.values()) != ONE:
        raise BadDistribution(f"{where}: probabilities do not sum to exactly 1")


def check_profile(g: GameTree, p: BehavioralProfile) -> BehavioralProfile:
    """Raise BadDistribution unless ``p`` covers every information set of ``g``
    with a valid distribution."""
    for I in g.infoset_order:
        iset = g.infosets[I]
        s = p.strategies.get(iset.player)
        if s is None or I not in s.choice:
            raise BadDistribution(f"profile has no distribution at information set {I!r}")
        check_distribution(s.choice[I], iset.actions, I)
    for pl, s in p.strategies.items():
        for I in s.choice:
            if I not in g.infosets or g.infosets[I].player != pl:
                raise BadDistribution(f"player {pl} has a distribution at foreign set {I!r}")
    return p


def pure_profile(g: GameTree, choices: Mapping[InfoSetId, ActionId]) -> BehavioralProfile:
    data: Dict[Player, Dict[InfoSetId, Dist]] = {pl: {} for pl in g.players}
    for I in g.infoset_order:
        iset = g.infosets[I]
        data[iset.player][I] = {a: (ONE if a == choices[I] else ZERO) for a in iset.actions}
    return BehavioralProfile.from_mapping(data)


def is_completely_mixed(p: BehavioralProfile) -> bool:
    return all(v.sign() > 0 for *_, v in p.entries())


def is_standard(p) -> bool:
    """True for a profile, strategy or distribution whose entries are all standard."""
    if isinstance(p, BehavioralProfile):
        return all(v.is_standard() for *_, v in p.entries())
    if isinstance(p, BehavioralStrategy):
        return all(v.is_standard() for d in p.choice.values() for v in d.values())
    return all(as_nonstd(v).is_standard() for v in p.values())


def standard_part_profile(p: BehavioralProfile) -> BehavioralProfile:
    return BehavioralProfile(
        BehavioralStrategy(s.player, {I: {a: as_nonstd(v.standard_part()) for a, v in d.items()}
                                      for I, d in s.choice.items()})
        for s in p.strategies.values())


def differ_infinitesimally(p: BehavioralProfile, q: BehavioralProfile) -> bool:
    if set(p.strategies) != set(q.strategies):
        return False
    for pl, s in p.strategies.items():
        t = q.strategies[pl]
        if set(s.choice) != set(t.choice):
            return False
        for I, d in s.choice.items():
            e = t.choice[I]
            if set(d) != set(e):
                return False
            for a, v in d.items():
                if not (v - e[a]).is_infinitesimal():
                    return False
    return True


def uniform_tremble(p: BehavioralProfile) -> BehavioralProfile:
    """Mix every distribution with eps weight on each action:
    (1 - |A|*eps) * sigma(a) + eps."""
    out = []
    for s in p.strategies.values():
        choice = {}
        for I, d in s.choice.items():
            w = ONE - len(d) * EPS
            choice[I] = {a: w * v + EPS for a, v in d.items()}
        out.append(BehavioralStrategy(s.player, choice))
    return BehavioralProfile(out)


def custom_tremble(p: BehavioralProfile,
                   spec: Mapping[Tuple[InfoSetId, ActionId], object]) -> BehavioralProfile:
    """Add the given positive infinitesimal weight to each listed action and
    renormalize each touched distribution.

    ``spec`` values are coefficient sequences (ascending powers of eps) or
    NonstdNum values.
    """
    extra: Dict[InfoSetId, Dist] = {}
    for (I, a), t in spec.items():
        t = t if isinstance(t, NonstdNum) else from_poly(t)
        if t.sign() <= 0 or not t.is_infinitesimal():
            raise InvalidTremble(f"weight for {a!r} at {I!r} must be a positive infinitesimal, got {t}")
        extra.setdefault(I, {})[a] = t
    out = []
    for s in p.strategies.values():
        choice = {}
        for I, d in s.choice.items():
            add = extra.pop(I, None)
            if add:
                unknown = set(add) - set(d)
                if unknown:
                    raise InvalidTremble(f"unknown action {sorted(unknown)[0]!r} at {I!r}")
                raw = {a: v + add.get(a, ZERO) for a, v in d.items()}
                total = nsum(raw.values())
                d = {a: v / total for a, v in raw.items()}
            if any(v.sign() <= 0 for v in d.values()):
                raise InvalidTremble(f"tremble leaves a non-positive probability at {I!r}")
            choice[I] = d
        out.append(BehavioralStrategy(s.player, choice))
    if extra:
        raise InvalidTremble(f"unknown information set {sorted(extra)[0]!r}")
    return BehavioralProfile(out)


def monomial_tremble(p: BehavioralProfile,
                     weights: Mapping[Tuple[InfoSetId, ActionId], Tuple[Fraction, int]]) -> BehavioralProfile:
    """Give each zero-probability action (I, b) probability c * eps**k and
    scale the supported actions at I down by the same total mass.

    ``weights`` maps every zero-probability action to its (c, k).
    """
    out = []
    for s in p.strategies.values():
        choice = {}
        for I, d in s.choice.items():
            off = {a: as_nonstd(weights[(I, a)][0]) * EPS ** weights[(I, a)][1]
                   for a, v in d.items() if v.is_zero()}
            if off:
                keep = ONE - nsum(off.values())
                d = {a: (off[a] if a in off else v * keep) for a, v in d.items()}
            if any(v.sign() <= 0 for v in d.values()):
                raise InvalidTremble(f"tremble leaves a non-positive probability at {I!r}")
            choice[I] = d
        out.append(BehavioralStrategy(s.player, choice))
    return BehavioralProfile(out)


def substitute(s: BehavioralStrategy, I: InfoSetId, a: Mapping) -> BehavioralStrategy:
    """The strategy s[I/a]: identical to s except that it plays ``a`` at I."""
    if I not in s.choice:
        raise WrongPlayer(f"information set {I!r} is not owned by player {s.player}")
    a = _dist(a)
    check_distribution(a, tuple(s.choice[I]), I)
    choice = dict(s.choice)
    choice[I] = a
    return BehavioralStrategy(s.player, choice)


def point_mass(actions: Iterable[ActionId], a: ActionId) -> Dist:
    return {b: (ONE if b == a else ZERO) for b in actions}
