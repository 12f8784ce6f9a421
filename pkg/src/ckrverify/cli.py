"""Command-line front end.

    ckrverify validate GAME
    ckrverify check CONCEPT GAME [PROFILE] [--tremble FILE | --uniform-tremble]
                    [--epistemic] [--search [--max-exp K] [--coefficients C ...]]
    ckrverify model build GAME [PROFILE] [--tremble FILE | --uniform-tremble]
    ckrverify model check-ckr GAME MODEL [PROFILE] [--tremble FILE | --uniform-tremble]
                    [--mode local|global] [--eps X]

Any file argument may be "-" for standard input.  Output is JSON on stdout.
Exit codes: 0 pass, 1 fail, 2 input error, 3 tremble search exhausted,
4 internal route disagreement.
"""

import argparse
import sys
from typing import Dict, List, Optional, Tuple

from . import serialize as ser
from .epistemic import StrategicModel, canonical_model, ck_rationality, ck_rationality_strategic
from .errors import BudgetExhausted, CkrError, FormMismatch, ParseError, RouteDisagreement
from .game import GameTree, StrategicGame, validate
from .strategy import check_profile, standard_part_profile, uniform_tremble
from .verify import (CHECKS, check_correlated, check_nash, rationalizable, search_tremble,
                     witness_model)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_BUG = 0, 1, 2, 3, 4

STRATEGIC = ("nash", "correlated", "rationalizable")
EXTENSIVE = ("perfect", "quasi-perfect", "sequential")


class _Inputs:
    """Reads files, allowing a single '-' for stdin."""

    def __init__(self):
        self._stdin_used = False

    def json(self, path: str):
        if path == "-":
            if self._stdin_used:
                raise ParseError("standard input can only be read once")
            self._stdin_used = True
            text = sys.stdin.read()
        else:
            try:
                with open(path, encoding="utf-8") as f:
                    text = f.read()
            except OSError as e:
                raise ParseError(f"cannot read {path}: {e.strerror}") from None
        try:
            return ser.loads(text)
        except ParseError as e:
            raise ParseError(f"{path}: {e}") from None


def _emit(obj) -> None:
    sys.stdout.write(ser.dumps(obj))


def _game(inp: _Inputs, path: str):
    return ser.game_from_json(inp.json(path))


def _extensive(g) -> GameTree:
    if not isinstance(g, GameTree):
        raise FormMismatch("this command needs an extensive-form game")
    return g


def _tremble(inp: _Inputs, g: GameTree, args, sigma=None):
    if args.tremble:
        trem = ser.behavioral_from_json(g, inp.json(args.tremble))
        return check_profile(g, trem)
    if sigma is None:
        raise ParseError("give a profile with --uniform-tremble, or a --tremble file")
    return uniform_tremble(sigma)


def cmd_validate(args, inp: _Inputs) -> int:
    g = _game(inp, args.game)
    if isinstance(g, StrategicGame):
        _emit({"ok": True, "violations": []})
        return EXIT_PASS
    report = validate(g)
    _emit(report.to_json())
    return EXIT_PASS if report.ok else EXIT_FAIL


def _check_strategic(args, inp: _Inputs, gS: StrategicGame) -> int:
    if args.concept == "rationalizable":
        sets = rationalizable(gS)
        out = {"concept": "rationalizable",
               "sets": {str(i): list(sets[i]) for i in gS.players}}
        if args.profile:
            sigma = ser.mixed_from_json(gS, inp.json(args.profile))
            bad = [(i, s) for i in gS.players for s, p in sigma[i].items() if p and s not in sets[i]]
            out["pass"] = not bad
            if bad:
                out["counterexample"] = {"player": bad[0][0], "strategy": bad[0][1]}
            else:
                out["witness_models"] = {
                    str(i): {s: ser.model_to_json(witness_model(gS, i, s))
                             for s, p in sigma[i].items() if p}
                    for i in gS.players}
            _emit(out)
            return EXIT_PASS if not bad else EXIT_FAIL
        _emit(out)
        return EXIT_PASS
    if not args.profile:
        raise ParseError(f"check {args.concept} needs a profile file")
    data = inp.json(args.profile)
    if args.concept == "nash":
        v = check_nash(gS, ser.mixed_from_json(gS, data), epistemic=args.epistemic)
    else:
        v = check_correlated(gS, ser.correlated_from_json(data), epistemic=args.epistemic)
    _emit(ser.verdict_to_json(v))
    return EXIT_PASS if v.passed else EXIT_FAIL


def cmd_check(args, inp: _Inputs) -> int:
    g = _game(inp, args.game)
    if args.concept in STRATEGIC:
        if not isinstance(g, StrategicGame):
            raise FormMismatch(f"{args.concept} needs a strategic-form game")
        return _check_strategic(args, inp, g)
    g = _extensive(g)
    if args.profile:
        sigma = check_profile(g, ser.behavioral_from_json(g, inp.json(args.profile)))
    elif args.tremble and not args.search:
        sigma = None
    else:
        raise ParseError(f"check {args.concept} needs a profile file")
    if args.search:
        try:
            _, v = search_tremble(g, sigma, args.concept, max_exponent=args.max_exp,
                                  coefficients=[ser.parse_rational(c, "--coefficients")
                                                for c in args.coefficients],
                                  epistemic=args.epistemic)
        except BudgetExhausted as e:
            _emit({"concept": args.concept, "budget_exhausted": True, "tried": e.tried,
                   "message": str(e)})
            return EXIT_BUDGET
    else:
        trem = _tremble(inp, g, args, sigma)
        if sigma is None:
            sigma = standard_part_profile(trem)
        v = CHECKS[args.concept](g, sigma, trem, epistemic=args.epistemic)
    _emit(ser.verdict_to_json(v))
    return EXIT_PASS if v.passed else EXIT_FAIL


def cmd_model_build(args, inp: _Inputs) -> int:
    g = _extensive(_game(inp, args.game))
    g.require_valid()
    sigma = None
    if args.profile:
        sigma = check_profile(g, ser.behavioral_from_json(g, inp.json(args.profile)))
    trem = _tremble(inp, g, args, sigma)
    _emit(ser.model_to_json(canonical_model(g, trem)))
    return EXIT_PASS


def cmd_model_check(args, inp: _Inputs) -> int:
    g = _game(inp, args.game)
    data = inp.json(args.model)
    if isinstance(g, StrategicGame):
        m = ser.model_from_json(data)
        if not isinstance(m, StrategicModel):
            raise FormMismatch("a strategic-form game needs a strategic model")
        v = ck_rationality_strategic(g, m)
    else:
        g.require_valid()
        m = ser.model_from_json(data, g)
        if isinstance(m, StrategicModel):
            raise FormMismatch("an extensive-form game needs an extensive model")
        sigma = None
        if args.profile:
            sigma = check_profile(g, ser.behavioral_from_json(g, inp.json(args.profile)))
        trem = _tremble(inp, g, args, sigma)
        eps = ser.parse_nonstd(args.eps, "--eps")
        v = ck_rationality(g, m, trem, standard_part_profile(trem), eps, args.mode)
    _emit(ser.verdict_to_json(v))
    return EXIT_PASS if v.passed else EXIT_FAIL


def _add_tremble_flags(p: argparse.ArgumentParser) -> None:
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--tremble", metavar="FILE", help="behavioral profile file for the tremble")
    grp.add_argument("--uniform-tremble", action="store_true",
                     help="tremble the profile uniformly: (1 - |A| eps) sigma + eps (the default)")


def build_parser() -> Tuple[argparse.ArgumentParser, Dict[Tuple[str, ...], argparse.ArgumentParser]]:
    """The top-level parser and its leaf parsers keyed by command words."""
    leaves = {}
    parser = argparse.ArgumentParser(prog="ckrverify",
                                     description="Exact checks of equilibrium refinements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that a game is well formed with perfect recall")
    p.add_argument("game")
    p.set_defaults(func=cmd_validate)
    leaves[("validate",)] = p

    p = sub.add_parser("check", help="check a solution concept")
    p.add_argument("concept", choices=STRATEGIC + EXTENSIVE)
    p.add_argument("game")
    p.add_argument("profile", nargs="?")
    _add_tremble_flags(p)
    p.add_argument("--epistemic", action="store_true",
                   help="also run the epistemic route and cross-check it")
    p.add_argument("--search", action="store_true", help="search for a certifying tremble")
    p.add_argument("--max-exp", type=int, default=2, metavar="K")
    p.add_argument("--coefficients", nargs="+", default=["1"], metavar="C")
    p.set_defaults(func=cmd_check)
    leaves[("check",)] = p

    model = sub.add_parser("model", help="epistemic models")
    msub = model.add_subparsers(dest="model_command", required=True)
    p = msub.add_parser("build", help="emit the canonical model of a tremble")
    p.add_argument("game")
    p.add_argument("profile", nargs="?")
    _add_tremble_flags(p)
    p.set_defaults(func=cmd_model_build)
    leaves[("model", "build")] = p

    p = msub.add_parser("check-ckr", help="is (local) eps-rationality universal in a model?")
    p.add_argument("game")
    p.add_argument("model")
    p.add_argument("profile", nargs="?")
    _add_tremble_flags(p)
    p.add_argument("--mode", choices=("local", "global"), default="global")
    p.add_argument("--eps", default="0", help='e.g. "0", "eps", "1/2*eps^2"')
    p.set_defaults(func=cmd_model_check)
    leaves[("model", "check-ckr")] = p
    return parser, leaves


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    # leaf parsers parse intermixed so a profile may follow the flags
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, leaves = build_parser()
    for words, leaf in leaves.items():
        if tuple(argv[:len(words)]) == words:
            return leaf.parse_intermixed_args(argv[len(words):])
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    try:
        return args.func(args, _Inputs())
    except RouteDisagreement as e:
        print(f"ckrverify: internal error: {e}", file=sys.stderr)
        return EXIT_BUG
    except CkrError as e:
        print(f"ckrverify: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, TypeError, AttributeError) as e:
        # malformed but syntactically valid JSON (wrong shapes)
        print(f"ckrverify: malformed input: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
