"""JSON forms of games, profiles, models and verdicts.

Every number is exact.  Rationals are written as "p/q" strings (JSON
integers are accepted on input); elements of R(eps) are written as a rational
string when standard and as ``{"order", "num", "den"}`` otherwise, with
coefficient lists in ascending powers of eps.  On input an element of R(eps)
may also be a small expression such as "1 - 2*eps + eps^2", a coefficient
list, or the object form.  Decimal numbers are rejected everywhere.
"""

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from .epistemic import ExtensiveModel, StrategicModel
from .errors import ParseError
from .field import EPS, ZERO, NonstdNum, as_nonstd, from_poly
from .game import (Chance, Decision, GameTree, History, InformationSet, Player, StrategicGame,
                   Terminal)
from .response import LocalToGlobalCert
from .strategy import BehavioralProfile, BehavioralStrategy, point_mass
from .verdict import Certificate, Counterexample, Verdict

# -- raw JSON ----------------------------------------------------------------


class _DecimalLiteral(Exception):
    def __init__(self, text):
        self.text = text


def _raise_decimal(text):
    raise _DecimalLiteral(text)


def _locate_decimal(text: str) -> Tuple[int, int]:
    """Line and column of the first decimal number literal outside strings."""
    in_str = esc = False
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if in_str:
            if esc:
                esc = False
            elif ch == "\\":
                esc = True
            elif ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
        else:
            m = re.match(r"-?\d+(\.\d+)?([eE][-+]?\d+)?", text[i:])
            if m and (m.group(1) or m.group(2)) and (i == 0 or not text[i - 1].isalnum()):
                return line, col
            if m:
                i += len(m.group(0))
                col += len(m.group(0))
                continue
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
        i += 1
    return 0, 0


def loads(text: str) -> Any:
    """Parse JSON, rejecting decimal numbers; errors carry line and column."""
    try:
        return json.loads(text, parse_float=_raise_decimal, parse_constant=_raise_decimal)
    except _DecimalLiteral as e:
        line, col = _locate_decimal(text)
        raise ParseError(f"line {line} column {col}: decimal number {e.text} is not allowed; "
                         f'write numbers as exact strings such as "1/2"') from None
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None


def _dump(obj: Any, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_dump(v, indent + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        items = [inner + _dump(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    # scalars and flat lists stay on one line
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def dumps(obj: Any) -> str:
    """Deterministic JSON text: nested objects indented, flat lists inline."""
    return _dump(obj, 0) + "\n"


# -- numbers ----------------------------------------------------------------

_RAT = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")
_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*?\s*)?(eps|ε)(?:\s*\^\s*(\d+))?$")


def rational_to_json(q) -> str:
    q = Fraction(q)
    return str(q)


def parse_rational(x, where: str = "") -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RAT.match(x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"{where}: zero denominator in {x!r}") from None
    if isinstance(x, str) and re.match(r"^\s*-?[\d.]+([eE][-+]?\d+)?\s*$", x):
        raise ParseError(f"{where}: decimal number {x!r} is not allowed; use a fraction like \"1/2\"")
    raise ParseError(f"{where}: expected an exact rational such as \"3/4\", got {x!r}")


def nonstd_to_json(x) -> Any:
    x = as_nonstd(x)
    if x.is_standard():
        return rational_to_json(x.standard_part())
    if x.den == (1,) and x.order >= 0:
        return [str(c) for c in (0,) * x.order + x.num]
    return {"order": x.order, "num": [str(c) for c in x.num], "den": [str(c) for c in x.den]}


def _parse_expr(s: str, where: str) -> NonstdNum:
    body = s.strip()
    if not body:
        raise ParseError(f"{where}: empty number")
    if body[0] not in "+-":
        body = "+" + body
    parts = re.findall(r"([+-])\s*([^+-]+)", body)
    if "".join(sign + t for sign, t in parts).replace(" ", "") != body.replace(" ", ""):
        raise ParseError(f"{where}: cannot read {s!r} as an element of R(eps)")
    total = ZERO
    for sign, term in parts:
        term = term.strip()
        if _RAT.match(term):
            v = as_nonstd(Fraction(term.replace(" ", "")))
        else:
            m = _TERM.match(term)
            if not m:
                if re.search(r"\d\.\d", term):
                    raise ParseError(f"{where}: decimal number in {s!r} is not allowed")
                raise ParseError(f"{where}: cannot read term {term!r} in {s!r}")
            c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            k = int(m.group(3)) if m.group(3) else 1
            v = c * EPS ** k
        total = total - v if sign == "-" else total + v
    return total


def parse_nonstd(x, where: str = "") -> NonstdNum:
    """Read an element of R(eps) from any accepted input form."""
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    if isinstance(x, int):
        return as_nonstd(x)
    if isinstance(x, str):
        if _RAT.match(x):
            return as_nonstd(parse_rational(x, where))
        return _parse_expr(x, where)
    if isinstance(x, list):
        return from_poly(parse_rational(c, where) for c in x)
    if isinstance(x, dict):
        extra = set(x) - {"order", "num", "den"}
        if extra or "num" not in x:
            raise ParseError(f"{where}: a number object needs 'num' and may have 'order', 'den'")
        order = x.get("order", 0)
        if isinstance(order, bool) or not isinstance(order, int):
            raise ParseError(f"{where}: 'order' must be an integer")
        num = [parse_rational(c, where) for c in x["num"]]
        den = [parse_rational(c, where) for c in x.get("den", ["1"])]
        if not any(den):
            raise ParseError(f"{where}: zero denominator")
        return NonstdNum(order, num, den)
    raise ParseError(f"{where}: expected an exact number, got {x!r}")


# -- games ------------------------------------------------------------------

def _player_lookup(players) -> Dict[str, Player]:
    return {str(p): p for p in players}


def _need(d: Mapping, key: str, where: str):
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in d:
        raise ParseError(f"{where}: missing '{key}'")
    return d[key]


def _player(lookup, x, where) -> Player:
    if str(x) not in lookup or isinstance(x, bool):
        raise ParseError(f"{where}: unknown player {x!r}")
    return lookup[str(x)]


def game_to_json(g) -> dict:
    if isinstance(g, StrategicGame):
        return {
            "form": "strategic",
            "players": list(g.players),
            "strategies": {str(p): list(g.strategies[p]) for p in g.players},
            "payoff_table": [
                {"profile": list(prof), "payoffs": [rational_to_json(v) for v in g.utility[prof]]}
                for prof in g.profiles()
            ],
        }
    order = g._dfs_order()
    nodes = {}
    for nid in order + [n for n in g.nodes if n not in set(order)]:
        n = g.nodes[nid]
        if isinstance(n, Decision):
            nodes[nid] = {"type": "decision", "player": n.player, "infoset": n.infoset,
                          "children": dict(n.children)}
        elif isinstance(n, Chance):
            nodes[nid] = {"type": "chance",
                          "probs": {a: rational_to_json(p) for a, p in n.dist.items()},
                          "children": dict(n.children)}
        else:
            nodes[nid] = {"type": "terminal",
                          "payoffs": {str(p): rational_to_json(v) for p, v in n.payoffs.items()}}
    return {
        "form": "extensive",
        "players": list(g.players),
        "tree": {"root": g.root, "nodes": nodes},
        "infosets": {k: {"player": s.player, "actions": list(s.actions), "members": list(s.members)}
                     for k, s in g.infosets.items()},
    }


def game_from_json(data) -> Any:
    form = _need(data, "form", "game")
    players = _need(data, "players", "game")
    if not isinstance(players, list) or not players:
        raise ParseError("game.players: expected a non-empty list")
    for p in players:
        if isinstance(p, bool) or not isinstance(p, (int, str)):
            raise ParseError(f"game.players: player ids must be integers or strings, got {p!r}")
    lookup = _player_lookup(players)
    if form == "strategic":
        strategies = _need(data, "strategies", "game")
        strat = {p: list(_need(strategies, str(p), "game.strategies")) for p in players}
        util = {}
        for k, row in enumerate(_need(data, "payoff_table", "game")):
            where = f"game.payoff_table[{k}]"
            prof = tuple(_need(row, "profile", where))
            pay = _need(row, "payoffs", where)
            if isinstance(pay, dict):
                pay = [pay.get(str(p)) for p in players]
            util[prof] = [parse_rational(v, where + ".payoffs") for v in pay]
        return StrategicGame(players, strat, util)
    if form != "extensive":
        raise ParseError(f"game.form: expected 'extensive' or 'strategic', got {form!r}")
    tree = _need(data, "tree", "game")
    raw_sets = data.get("infosets", {})
    infosets = {}
    for k, s in raw_sets.items():
        where = f"game.infosets.{k}"
        infosets[k] = InformationSet(k, _player(lookup, _need(s, "player", where), where),
                                     tuple(_need(s, "actions", where)), tuple(s.get("members", ())))
    nodes = {}
    for nid, n in _need(tree, "nodes", "game.tree").items():
        where = f"game.tree.nodes.{nid}"
        kind = _need(n, "type", where)
        if kind == "decision":
            I = _need(n, "infoset", where)
            children = dict(_need(n, "children", where))
            actions = infosets[I].actions if I in infosets else tuple(children)
            nodes[nid] = Decision(_player(lookup, _need(n, "player", where), where), I,
                                  tuple(actions), children)
        elif kind == "chance":
            probs = {a: parse_rational(v, f"{where}.probs.{a}")
                     for a, v in _need(n, "probs", where).items()}
            nodes[nid] = Chance(probs, dict(_need(n, "children", where)))
        elif kind == "terminal":
            pay = _need(n, "payoffs", where)
            if isinstance(pay, list):
                pay = {str(p): v for p, v in zip(players, pay)}
            nodes[nid] = Terminal({_player(lookup, p, where): parse_rational(v, f"{where}.payoffs")
                                   for p, v in pay.items()})
        else:
            raise ParseError(f"{where}.type: expected decision, chance or terminal, got {kind!r}")
    return GameTree(players, _need(tree, "root", "game.tree"), nodes, infosets)


# -- profiles ---------------------------------------------------------------

def behavioral_to_json(p: BehavioralProfile) -> dict:
    return {"kind": "behavioral",
            "choices": {I: {a: nonstd_to_json(v) for a, v in d.items()}
                        for _, s in sorted(p.strategies.items()) for I, d in s.choice.items()}}


def behavioral_from_json(g: GameTree, data) -> BehavioralProfile:
    """Choices are keyed by information set; the owner is read off the game.
    A bare action name stands for the point mass on it.  The nested form
    ``{"strategies": {player: {infoset: ...}}}`` is accepted too."""
    if isinstance(data, dict) and "choices" not in data and "strategies" in data:
        choices = {}
        for p, per_player in data["strategies"].items():
            if not isinstance(per_player, dict):
                raise ParseError(f"profile.strategies.{p}: expected an object")
            for I, c in per_player.items():
                if I in g.infosets and str(g.infosets[I].player) != str(p):
                    raise ParseError(f"profile.strategies.{p}: {I!r} belongs to player "
                                     f"{g.infosets[I].player}")
                choices[I] = c
    else:
        choices = _need(data, "choices", "profile")
    per: Dict[Player, Dict] = {p: {} for p in g.players}
    for I, c in choices.items():
        if I not in g.infosets:
            raise ParseError(f"profile.choices: unknown information set {I!r}")
        acts = g.infosets[I].actions
        if isinstance(c, str):
            if c not in acts:
                raise ParseError(f"profile.choices.{I}: unknown action {c!r}")
            d = point_mass(acts, c)
        else:
            d = {a: parse_nonstd(v, f"profile.choices.{I}.{a}") for a, v in c.items()}
        per[g.infosets[I].player][I] = d
    return BehavioralProfile(BehavioralStrategy(p, per[p]) for p in g.players)


def mixed_to_json(gS: StrategicGame, sigma) -> dict:
    return {"kind": "mixed",
            "strategies": {str(i): {s: rational_to_json(sigma[i].get(s, 0)) for s in gS.strategies[i]}
                           for i in gS.players}}


def mixed_from_json(gS: StrategicGame, data) -> Dict[Player, Dict[str, Fraction]]:
    strategies = _need(data, "strategies", "profile")
    out = {}
    for i in gS.players:
        v = _need(strategies, str(i), "profile.strategies")
        if isinstance(v, str):
            out[i] = {v: Fraction(1)}
        else:
            out[i] = {s: parse_rational(x, f"profile.strategies.{i}.{s}") for s, x in v.items()}
    return out


def correlated_to_json(eta: Mapping) -> dict:
    return {"kind": "correlated",
            "distribution": [{"profile": list(k), "prob": rational_to_json(v)} for k, v in eta.items()]}


def correlated_from_json(data) -> Dict[Tuple[str, ...], Fraction]:
    out: Dict[Tuple[str, ...], Fraction] = {}
    for k, row in enumerate(_need(data, "distribution", "profile")):
        where = f"profile.distribution[{k}]"
        prof = tuple(_need(row, "profile", where))
        out[prof] = out.get(prof, Fraction(0)) + parse_rational(_need(row, "prob", where), where)
    return out


# -- models -----------------------------------------------------------------

def model_to_json(m) -> dict:
    if isinstance(m, StrategicModel):
        return {"form": "strategic", "players": list(m.players),
                "states": [{"id": w, "profile": list(m.profile[w])} for w in m.states],
                "priors": {str(i): {w: rational_to_json(m.priors[i].get(w, 0)) for w in m.states}
                           for i in m.players}}
    return {"form": "extensive",
            "states": [{"id": w, "history": list(m.outcome[w].path)} for w in m.states],
            "priors": {str(i): {w: nonstd_to_json(m.priors[i].get(w, ZERO)) for w in m.states}
                       for i in m.priors}}


def model_from_json(data, g: Optional[GameTree] = None) -> Any:
    form = _need(data, "form", "model")
    states = _need(data, "states", "model")
    ids = [_need(s, "id", f"model.states[{k}]") for k, s in enumerate(states)]
    if len(set(ids)) != len(ids):
        raise ParseError("model.states: duplicate state id")
    priors = _need(data, "priors", "model")
    if form == "strategic":
        players = _need(data, "players", "model")
        lookup = _player_lookup(players)
        profile = {w: tuple(_need(s, "profile", f"model.states.{w}")) for w, s in zip(ids, states)}
        pr = {_player(lookup, i, "model.priors"):
              {w: parse_rational(v, f"model.priors.{i}.{w}") for w, v in d.items()}
              for i, d in priors.items()}
        return StrategicModel(tuple(players), tuple(ids), profile, pr)
    if form != "extensive":
        raise ParseError(f"model.form: expected 'extensive' or 'strategic', got {form!r}")
    if g is None:
        raise ParseError("an extensive model needs its game")
    lookup = _player_lookup(g.players)
    outcome = {}
    for w, s in zip(ids, states):
        path = tuple(_need(s, "history", f"model.states.{w}"))
        try:
            node = g.node_at(path)
        except Exception:
            raise ParseError(f"model.states.{w}: {list(path)} is not a history of the game") from None
        if not isinstance(g.nodes[node], Terminal):
            raise ParseError(f"model.states.{w}: {list(path)} does not end at a terminal node")
        outcome[w] = History(node, path)
    pr = {_player(lookup, i, "model.priors"):
          {w: parse_nonstd(v, f"model.priors.{i}.{w}") for w, v in d.items()}
          for i, d in priors.items()}
    return ExtensiveModel(tuple(ids), outcome, pr)


# -- verdicts ---------------------------------------------------------------

def _plain(x) -> Any:
    if isinstance(x, NonstdNum):
        return nonstd_to_json(x)
    if isinstance(x, Fraction):
        return rational_to_json(x)
    if isinstance(x, dict):
        return {(".".join(k) if isinstance(k, tuple) else str(k)): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _counterexample_to_json(c: Counterexample) -> dict:
    out: Dict[str, Any] = {"player": c.player}
    for key in ("infoset", "state", "played", "deviation"):
        if getattr(c, key) is not None:
            out[key] = getattr(c, key)
    if c.shortfall is not None:
        out["shortfall"] = nonstd_to_json(c.shortfall)
        out["shortfall_standard_part"] = rational_to_json(c.shortfall.standard_part())
    return out


def _certificate_to_json(c: Certificate) -> dict:
    out: Dict[str, Any] = {}
    if c.tremble is not None:
        out["tremble"] = behavioral_to_json(c.tremble)
    if c.eps is not None:
        out["eps"] = nonstd_to_json(c.eps)
    if c.belief is not None:
        out["belief"] = {I: {n: nonstd_to_json(v) for n, v in d.items()} for I, d in c.belief.items()}
    if c.bounds is not None:
        out["bounds"] = {str(i): {"eps": nonstd_to_json(b.eps), "eps_prime": nonstd_to_json(b.eps_prime),
                                  "d": b.d, "bound": nonstd_to_json(b.bound)}
                         for i, b in c.bounds.items()}
    if c.model is not None:
        out["model"] = model_to_json(c.model)
    if c.extra:
        out["extra"] = _plain(dict(c.extra))
    return out


def verdict_to_json(v: Verdict) -> dict:
    out: Dict[str, Any] = {"concept": v.concept, "route": v.route, "pass": v.passed}
    if v.degenerate:
        out["degenerate"] = True
    if v.certificate is not None:
        out["certificate"] = _certificate_to_json(v.certificate)
    if v.counterexample is not None:
        out["counterexample"] = _counterexample_to_json(v.counterexample)
    if v.routes:
        out["routes"] = {k: verdict_to_json(r) for k, r in v.routes.items()}
    return out


def verdict_from_json(data, g=None) -> Verdict:
    """Inverse of :func:`verdict_to_json`; ``g`` is needed for trembles and
    extensive models.  Route-specific ``extra`` values stay in JSON form."""
    lookup = _player_lookup(g.players) if g is not None else {}

    def player(x):
        return lookup.get(str(x), x)

    cert = cx = None
    if "certificate" in data:
        c = data["certificate"]
        bounds = None
        if "bounds" in c:
            bounds = {player(i): LocalToGlobalCert(player(i), parse_nonstd(b["eps"]),
                                                   parse_nonstd(b["eps_prime"]), b["d"])
                      for i, b in c["bounds"].items()}
        cert = Certificate(
            tremble=behavioral_from_json(g, c["tremble"]) if "tremble" in c else None,
            eps=parse_nonstd(c["eps"]) if "eps" in c else None,
            belief={I: {n: parse_nonstd(v) for n, v in d.items()} for I, d in c["belief"].items()}
            if "belief" in c else None,
            bounds=bounds,
            model=model_from_json(c["model"], g) if "model" in c else None,
            extra=c.get("extra", {}))
    if "counterexample" in data:
        c = data["counterexample"]
        cx = Counterexample(player=player(c["player"]), infoset=c.get("infoset"),
                            state=c.get("state"), played=c.get("played"),
                            deviation=c.get("deviation"),
                            shortfall=parse_nonstd(c["shortfall"]) if "shortfall" in c else None)
    return Verdict(data["pass"], data["concept"], data["route"], certificate=cert,
                   counterexample=cx, degenerate=data.get("degenerate", False),
                   routes={k: verdict_from_json(r, g) for k, r in data.get("routes", {}).items()})


def validation_to_json(report) -> dict:
    return report.to_json()


def shortfall_to_json(s) -> dict:
    return {"player": s.player, "infoset": s.infoset, "kind": s.kind,
            "best_deviation": dict(s.best_deviation), "amount": nonstd_to_json(s.amount)}


def beliefs_to_json(mu) -> dict:
    return {I: {n: nonstd_to_json(v) for n, v in d.items()} for I, d in mu.items()}


__all__: List[str] = [
    "loads", "dumps", "parse_rational", "parse_nonstd", "rational_to_json", "nonstd_to_json",
    "game_to_json", "game_from_json", "behavioral_to_json", "behavioral_from_json",
    "mixed_to_json", "mixed_from_json", "correlated_to_json", "correlated_from_json",
    "model_to_json", "model_from_json", "verdict_to_json", "verdict_from_json",
    "validation_to_json", "shortfall_to_json", "beliefs_to_json",
]
