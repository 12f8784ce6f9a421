"""Finite extensive-form games with perfect recall, and finite strategic games."""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DifferentPlayers, GameError

Player = int
NodeId = str
ActionId = str
InfoSetId = str


@dataclass(frozen=True)
class Decision:
    player: Player
    infoset: InfoSetId
    actions: Tuple[ActionId, ...]
    children: Mapping[ActionId, NodeId]


@dataclass(frozen=True)
class Chance:
    dist: Mapping[ActionId, Fraction]
    children: Mapping[ActionId, NodeId]

    @property
    def actions(self) -> Tuple[ActionId, ...]:
        return tuple(self.dist)


@dataclass(frozen=True)
class Terminal:
    payoffs: Mapping[Player, Fraction]


@dataclass(frozen=True)
class InformationSet:
    id: InfoSetId
    player: Player
    actions: Tuple[ActionId, ...]
    members: Tuple[NodeId, ...] = ()


@dataclass(frozen=True)
class History:
    """A path from the root, identified with the node it ends at."""

    node: NodeId
    path: Tuple[ActionId, ...]

    def __str__(self):
        return "·".join(self.path) if self.path else "∅"


@dataclass(frozen=True)
class Violation:
    code: str
    where: str
    message: str


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def to_json(self):
        return {
            "ok": self.ok,
            "violations": [
                {"code": v.code, "where": v.where, "message": v.message} for v in self.violations
            ],
        }


class GameTree:
    """An extensive-form game.

    ``infosets`` may omit ``members``; they are filled in from the decision
    nodes that name the information set.  Nothing is checked at construction
    time; call :func:`validate` (analysis functions do so via
    :meth:`require_valid`).
    """

    def __init__(self, players: Sequence[Player], root: NodeId,
                 nodes: Mapping[NodeId, object],
                 infosets: Mapping[InfoSetId, InformationSet]):
        self.players = tuple(players)
        self.root = root
        self.nodes = dict(nodes)
        members: Dict[InfoSetId, List[NodeId]] = {k: [] for k in infosets}
        for nid in self._dfs_order():
            node = self.nodes[nid]
            if isinstance(node, Decision) and node.infoset in members:
                members[node.infoset].append(nid)
        self.infosets = {}
        for k, iset in infosets.items():
            self.infosets[k] = InformationSet(
                iset.id, iset.player, tuple(iset.actions),
                tuple(iset.members) if iset.members else tuple(members[k]))
        self._valid: Optional[ValidationReport] = None

    def _dfs_order(self) -> List[NodeId]:
        # tolerant of malformed trees: never revisits, ignores dangling ids
        out, seen, stack = [], set(), [self.root]
        while stack:
            nid = stack.pop()
            if nid in seen or nid not in self.nodes:
                continue
            seen.add(nid)
            out.append(nid)
            node = self.nodes[nid]
            if not isinstance(node, Terminal):
                stack.extend(reversed([node.children[a] for a in node.children]))
        return out

    def require_valid(self) -> "GameTree":
        report = validate(self)
        if not report.ok:
            v = report.first
            raise GameError(f"{v.code} at {v.where}: {v.message}")
        return self

    # derived structure; only meaningful on a valid tree
    @cached_property
    def parent(self) -> Dict[NodeId, Tuple[NodeId, ActionId]]:
        out = {}
        for nid in self._dfs_order():
            node = self.nodes[nid]
            if not isinstance(node, Terminal):
                for a, c in node.children.items():
                    out[c] = (nid, a)
        return out

    @cached_property
    def paths(self) -> Dict[NodeId, Tuple[ActionId, ...]]:
        out = {self.root: ()}
        for nid in self._dfs_order():
            node = self.nodes[nid]
            if not isinstance(node, Terminal):
                for a, c in node.children.items():
                    out[c] = out[nid] + (a,)
        return out

    @cached_property
    def ancestors(self) -> Dict[NodeId, Tuple[NodeId, ...]]:
        """Proper ancestors, root first."""
        out = {self.root: ()}
        for nid in self._dfs_order():
            node = self.nodes[nid]
            if not isinstance(node, Terminal):
                for c in node.children.values():
                    out[c] = out[nid] + (nid,)
        return out

    @cached_property
    def terminals(self) -> Tuple[NodeId, ...]:
        return tuple(n for n in self._dfs_order() if isinstance(self.nodes[n], Terminal))

    @cached_property
    def infoset_order(self) -> Tuple[InfoSetId, ...]:
        """Information sets ordered by first appearance in depth-first order."""
        seen = []
        for nid in self._dfs_order():
            node = self.nodes[nid]
            if isinstance(node, Decision) and node.infoset not in seen:
                seen.append(node.infoset)
        return tuple(seen)

    def infosets_of(self, player: Player) -> Tuple[InfoSetId, ...]:
        return tuple(k for k in self.infoset_order if self.infosets[k].player == player)

    def history(self, node: NodeId) -> History:
        return History(node, self.paths[node])

    def node_at(self, path: Sequence[ActionId]) -> NodeId:
        nid = self.root
        for a in path:
            node = self.nodes[nid]
            if isinstance(node, Terminal) or a not in node.children:
                raise KeyError(f"path {'·'.join(path)} leaves the tree at {a!r}")
            nid = node.children[a]
        return nid

    def experience(self, node: NodeId, player: Player) -> Tuple[Tuple[InfoSetId, ActionId], ...]:
        """The player's own (information set, action) pairs on the path to ``node``."""
        out = []
        for anc in self.ancestors[node]:
            n = self.nodes[anc]
            if isinstance(n, Decision) and n.player == player:
                out.append((n.infoset, self.parent_action(anc, node)))
        return tuple(out)

    def parent_action(self, ancestor: NodeId, node: NodeId) -> ActionId:
        """The action taken at ``ancestor`` on the way to ``node``."""
        return self.paths[node][len(self.paths[ancestor])]

    def payoff_range(self) -> Fraction:
        vals = [v for t in self.terminals for v in self.nodes[t].payoffs.values()]
        return max(vals) - min(vals) if vals else Fraction(0)


def validate(g: GameTree) -> ValidationReport:
    """Check tree shape, chance distributions, payoffs, information sets and
    perfect recall.  Violations are listed in the order they are found."""
    if g._valid is not None:
        return g._valid
    report = ValidationReport()
    bad = report.violations.append

    if g.root not in g.nodes:
        bad(Violation("missing-root", str(g.root), "root node is not defined"))
        g._valid = report
        return report

    # tree shape
    parents: Dict[NodeId, NodeId] = {}
    for nid, node in g.nodes.items():
        if isinstance(node, Terminal):
            continue
        for a, c in node.children.items():
            if c not in g.nodes:
                bad(Violation("dangling-child", nid, f"action {a!r} leads to undefined node {c!r}"))
            elif c == g.root:
                bad(Violation("cycle", nid, "an edge leads back to the root"))
            elif c in parents:
                bad(Violation("multiple-parents", c,
                              f"node has parents {parents[c]!r} and {nid!r}"))
            else:
                parents[c] = nid
    reachable = set(g._dfs_order())
    for nid in g.nodes:
        if nid not in reachable:
            bad(Violation("unreachable", nid, "node is not reachable from the root"))
    if report.violations:
        g._valid = report
        return report

    players = set(g.players)
    for nid in g._dfs_order():
        node = g.nodes[nid]
        if isinstance(node, Terminal):
            missing = players - set(node.payoffs)
            if missing:
                bad(Violation("missing-payoff", nid, f"no payoff for players {sorted(missing)}"))
        elif isinstance(node, Chance):
            if set(node.dist) != set(node.children):
                bad(Violation("chance-actions", nid, "distribution and children disagree"))
            if any(p <= 0 for p in node.dist.values()):
                bad(Violation("chance-nonpositive", nid, "chance probabilities must be > 0"))
            if sum(node.dist.values(), Fraction(0)) != 1:
                bad(Violation("chance-sum", nid, "chance probabilities must sum to exactly 1"))
        elif isinstance(node, Decision):
            if node.player not in players:
                bad(Violation("unknown-player", nid, f"player {node.player} is not declared"))
            if set(node.actions) != set(node.children) or len(set(node.actions)) != len(node.actions):
                bad(Violation("decision-actions", nid, "actions and children disagree"))
            if not node.actions:
                bad(Violation("no-actions", nid, "decision node without actions"))
            iset = g.infosets.get(node.infoset)
            if iset is None:
                bad(Violation("unknown-infoset", nid, f"information set {node.infoset!r} is not declared"))
            elif nid not in iset.members:
                bad(Violation("infoset-members", node.infoset, f"node {nid!r} not listed as member"))
        else:
            bad(Violation("bad-node", nid, f"unknown node type {type(node).__name__}"))

    for k, iset in g.infosets.items():
        if not iset.members:
            bad(Violation("empty-infoset", k, "information set has no members"))
        for m in iset.members:
            node = g.nodes.get(m)
            if not isinstance(node, Decision) or node.infoset != k:
                bad(Violation("infoset-members", k, f"member {m!r} is not a decision node of this set"))
                continue
            if node.player != iset.player:
                bad(Violation("infoset-player", k, f"member {m!r} belongs to player {node.player}"))
            if tuple(node.actions) != tuple(iset.actions):
                bad(Violation("infoset-actions", k, f"member {m!r} has actions {list(node.actions)}"))
    if report.violations:
        g._valid = report
        return report

    ancestors = g.ancestors
    for k in g.infoset_order:
        iset = g.infosets[k]
        mset = set(iset.members)
        for m in iset.members:
            nested = mset.intersection(ancestors[m])
            if nested:
                bad(Violation("nested-infoset", k,
                              f"member {m!r} lies below member {sorted(nested)[0]!r}"))
        exps = {m: g.experience(m, iset.player) for m in iset.members}
        first = iset.members[0]
        for m in iset.members[1:]:
            if exps[m] != exps[first]:
                bad(Violation("perfect-recall", k,
                              f"members {first!r} and {m!r} have different own histories"))
                break
    g._valid = report
    return report


def succ(g: GameTree, I: InfoSetId, J: InfoSetId) -> bool:
    """The strict order I > J: every member of I has a proper ancestor in J."""
    a, b = g.infosets[I], g.infosets[J]
    if a.player != b.player:
        raise DifferentPlayers(f"{I!r} belongs to player {a.player}, {J!r} to player {b.player}")
    jm = set(b.members)
    anc = g.ancestors
    return all(jm.intersection(anc[m]) for m in a.members)


def height(g: GameTree, I: InfoSetId) -> int:
    """1 for an information set with nothing of its player below it,
    otherwise one more than the largest height of the sets below it."""
    g.require_valid()
    return _heights(g)[I]


def _heights(g: GameTree) -> Dict[InfoSetId, int]:
    cache = g.__dict__.get("_height_cache")
    if cache is not None:
        return cache
    out: Dict[InfoSetId, int] = {}

    def h(I):
        if I in out:
            return out[I]
        p = g.infosets[I].player
        below = [K for K in g.infosets_of(p) if K != I and succ(g, K, I)]
        out[I] = 1 + max((h(K) for K in below), default=0)
        return out[I]

    for I in g.infoset_order:
        h(I)
    g.__dict__["_height_cache"] = out
    return out


def max_height(g: GameTree, player: Optional[Player] = None) -> int:
    hs = _heights(g.require_valid())
    sets = g.infosets_of(player) if player is not None else g.infoset_order
    return max((hs[I] for I in sets), default=0)


def terminal_histories(g: GameTree) -> List[History]:
    g.require_valid()
    return [g.history(t) for t in g.terminals]


def prefixes(g: GameTree, h: History) -> List[History]:
    return [g.history(a) for a in g.ancestors[h.node]] + [h]


# -- strategic form ---------------------------------------------------------

Profile = Tuple[str, ...]


class StrategicGame:
    """A finite strategic-form game with a dense payoff table.

    ``utility`` maps every full profile (one label per player, in player
    order) to the payoff vector in player order.
    """

    def __init__(self, players: Sequence[Player], strategies: Mapping[Player, Sequence[str]],
                 utility: Mapping[Profile, Sequence]):
        self.players = tuple(players)
        self.strategies = {p: tuple(strategies[p]) for p in self.players}
        self.utility = {tuple(k): tuple(Fraction(x) for x in v) for k, v in utility.items()}
        labels = [s for p in self.players for s in self.strategies[p]]
        if len(set(labels)) != len(labels):
            raise GameError("strategy labels must be distinct across and within players")
        for prof in self.profiles():
            if prof not in self.utility:
                raise GameError(f"payoff table has no entry for profile {prof}")
            if len(self.utility[prof]) != len(self.players):
                raise GameError(f"profile {prof} needs {len(self.players)} payoffs")
        extra = set(self.utility) - set(self.profiles())
        if extra:
            raise GameError(f"payoff table has unknown profile {sorted(extra)[0]}")

    def index(self, player: Player) -> int:
        return self.players.index(player)

    def profiles(self) -> List[Profile]:
        return list(itertools.product(*(self.strategies[p] for p in self.players)))

    def opponent_profiles(self, player: Player) -> List[Profile]:
        return list(itertools.product(*(self.strategies[p] for p in self.players if p != player)))

    def u(self, player: Player, profile: Profile) -> Fraction:
        return self.utility[tuple(profile)][self.index(player)]

    def join(self, player: Player, own: str, others: Profile) -> Profile:
        i = self.index(player)
        return tuple(others[:i]) + (own,) + tuple(others[i:])

    def split(self, player: Player, profile: Profile) -> Tuple[str, Profile]:
        i = self.index(player)
        return profile[i], tuple(profile[:i]) + tuple(profile[i + 1:])
