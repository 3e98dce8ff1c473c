"""Command-line front end.

Exit codes: 0 success or certified, 1 verification ran but the profile is not
certified, 2 input error. Reports go to stdout as JSON (sweeps as CSV).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .demos import BUILTINS, DEMO_NAMES, builtin_game, gap_report_doc, quadrant_cone, run_demo
from .documents import (
    dumps,
    emit_game,
    emit_profile,
    function_from_doc,
    element_from_doc,
    parse_game_document,
    parse_profile_document,
)
from .equilibrium import construct_equilibrium, i_range, verify_equilibrium, z_structure_check
from .exceptions import GroupGameError
from .foelner import (
    Q1Factorial,
    Z2ConeWindow,
    Z2Square,
    ZLeft,
    ZRight,
    ZSymmetric,
    SweepRow,
    build_window,
    density_sweep,
    invariance_defect,
    sweep_csv,
    upper_banach_density,
)
from .functions import ConeZ2, EventuallyPeriodicZ, indicator_q1, indicator_z, inf_fn, sup_fn
from .groups import IntegersZ, LatticeZ2, RationalCircleQ1
from .integration import fubini_gap
from .rationals import as_fraction, format_fraction as ff
from .validation import check_nu

EXIT_OK, EXIT_NOT_CERTIFIED, EXIT_INPUT = 0, 1, 2


# --- loading ----------------------------------------------------------------


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip().startswith(("{", "[")):
        return arg
    path = Path(arg)
    if not path.is_file():
        raise GroupGameError(f"no such file {arg!r}")
    return path.read_text()


def load_game(arg: str, players=None) -> tuple:
    """``(game, profile or None)`` from a builtin name, a file, ``-`` or inline JSON."""
    if arg in BUILTINS and not Path(arg).is_file():
        kw = {"players": players} if players is not None and arg == "love-hate" else {}
        return builtin_game(arg, **kw)
    return parse_game_document(_read(arg))


def load_profile(arg, game, fallback):
    if arg is None:
        if fallback is None:
            raise GroupGameError("no profile given and the game document carries none")
        return fallback
    return parse_profile_document(_read(arg), game)


def _weights(args, game):
    nu = check_nu(getattr(args, "nu", None), game.n_players) or game.nu
    return nu.flipped() if getattr(args, "flip_order", False) else nu


def _normalization(game) -> list:
    out = []
    for i, phi in enumerate(game.phi):
        try:
            lo, hi = inf_fn(phi), sup_fn(phi)
        except GroupGameError as exc:
            out.append({"player": i + 1, "available": False, "reason": str(exc)})
            continue
        entry = {"player": i + 1, "available": True, "inf": ff(lo), "sup": ff(hi)}
        if hi > lo:
            entry["map"] = f"(phi - {ff(lo)}) / {ff(hi - lo)}"
        else:
            entry["map"] = "constant payoff"
        out.append(entry)
    return out


def _tail_check(game, profile):
    try:
        checks = z_structure_check(game, profile)
    except GroupGameError:
        return None
    return [
        {
            "player": c.player + 1,
            "theta": ff(c.theta),
            "theta_own_coordinates": ff(c.theta_transformed),
            "a_minus": ff(c.a_minus),
            "a_plus": ff(c.a_plus),
            "required": c.required,
            "ok": c.ok,
        }
        for c in checks
    ]


def _verify_doc(game, profile, nu, flipped, normalize) -> tuple:
    rep = verify_equilibrium(game, profile, nu)
    doc = gap_report_doc(game, profile, rep, flipped)
    tails = _tail_check(game, profile) if isinstance(game.group, IntegersZ) else None
    if tails is not None:
        doc["tail_mass_check"] = tails
    if normalize:
        doc["normalization"] = _normalization(game)
    return doc, rep.certified


# --- commands ---------------------------------------------------------------


def cmd_solve(args):
    game, _ = load_game(args.game, args.players)
    tie = as_fraction(args.tie_theta)
    profile = construct_equilibrium(game, tie)
    nu = _weights(args, game)
    doc, ok = _verify_doc(game, profile, nu, args.flip_order, args.normalize)
    ranges = []
    for i, phi in enumerate(game.phi):
        r = i_range(phi, game.group, tie)
        ranges.append({"player": i + 1, "lo": ff(r.lo), "hi": ff(r.hi), "argmax": r.argmax_set})
    out = {"game": game.name, "i_ranges": ranges, "constructed_profile": emit_profile(profile, game.group)}
    out.update(doc)
    return out, EXIT_OK if ok else EXIT_NOT_CERTIFIED


def cmd_verify(args):
    game, doc_profile = load_game(args.game, args.players)
    profile = load_profile(args.profile, game, doc_profile)
    doc, ok = _verify_doc(game, profile, _weights(args, game), args.flip_order, args.normalize)
    return {"game": game.name, **doc}, EXIT_OK if ok else EXIT_NOT_CERTIFIED


def cmd_payoff(args):
    game, doc_profile = load_game(args.game, args.players)
    profile = load_profile(args.profile, game, doc_profile)
    nu = _weights(args, game)
    from .integration import payoff_terms

    players = []
    for i in range(game.n_players):
        terms = payoff_terms(game, profile, i, nu)
        total = sum((w * v for _, w, v in terms), Fraction(0))
        players.append(
            {
                "player": i + 1,
                "payoff": ff(total),
                "terms": [{"order": [p + 1 for p in rel], "weight": ff(w), "value": ff(v)} for rel, w, v in terms],
            }
        )
    return {"game": game.name, "profile": emit_profile(profile, game.group), "players": players}, EXIT_OK


def cmd_gap(args):
    game, doc_profile = load_game(args.game, args.players)
    profile = load_profile(args.profile, game, doc_profile)
    if not 1 <= args.player <= game.n_players:
        raise GroupGameError(f"player must be in 1..{game.n_players}")
    rep = verify_equilibrium(game, profile, _weights(args, game))
    doc = gap_report_doc(game, profile, rep, args.flip_order)
    entry = doc["players"][args.player - 1]
    gap = rep.entries[args.player - 1].gap
    return {"game": game.name, **entry}, EXIT_OK if gap <= 0 else EXIT_NOT_CERTIFIED


def cmd_demo(args):
    kw = {"players": args.players} if args.players is not None and args.name == "love-hate" else {}
    return run_demo(args.name, **kw), EXIT_OK


def cmd_export(args):
    if args.name not in BUILTINS:
        raise GroupGameError(f"unknown builtin {args.name!r}; choose from {', '.join(DEMO_NAMES)}")
    kw = {"players": args.players} if args.players is not None and args.name == "love-hate" else {}
    game, profile = builtin_game(args.name, **kw)
    return emit_game(game, profile), EXIT_OK


def cmd_fubini(args):
    game, doc_profile = load_game(args.game, args.players)
    profile = load_profile(args.profile, game, doc_profile)
    if game.n_players != 2:
        raise GroupGameError("fubini compares the two integration orders of a two-player game")
    phi = game.phi[args.player - 1]
    first, second = fubini_gap(phi, profile[0], profile[1], game.group, game.eta)
    return {
        "game": game.name,
        "player": args.player,
        "player_1_innermost": ff(first),
        "player_2_innermost": ff(second),
        "equal": first == second,
    }, EXIT_OK


# --- sweeps -----------------------------------------------------------------


def parse_ns(text: str) -> list:
    """``"1,2,5"`` or ``"start:stop:step"`` (stop inclusive)."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            if step < 1:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise GroupGameError(f"malformed n list {text!r}; use '1,2,5' or 'start:stop:step'") from None


def parse_cone(text) -> ConeZ2:
    if text is None:
        return quadrant_cone()
    try:
        u, v = text.split(";")
        return ConeZ2(tuple(as_fraction(c) for c in u.split(",")), tuple(as_fraction(c) for c in v.split(",")))
    except ValueError:
        raise GroupGameError(f"malformed cone {text!r}; use 'u1,u2;v1,v2'") from None


_WINDOWS = {
    "z-sym": (ZSymmetric, IntegersZ),
    "z-right": (ZRight, IntegersZ),
    "z-left": (ZLeft, IntegersZ),
    "z2-square": (Z2Square, LatticeZ2),
    "z2-cone": (Z2ConeWindow, LatticeZ2),
    "q1-fact": (Q1Factorial, RationalCircleQ1),
}


def _window(kind, n, cone):
    if kind not in _WINDOWS:
        raise GroupGameError(f"unknown window {kind!r}; choose from {', '.join(_WINDOWS)}")
    cls, _ = _WINDOWS[kind]
    return cls(n, cone) if cls is Z2ConeWindow else cls(n)


def parse_set(text: str, group_hint):
    """Shorthands ``N``, ``2Z``, ``empty``, ``quadrant``, ``interval A B``, ``interval-ho A B``, or a JSON function."""
    s = text.strip()
    if s.startswith("{"):
        return function_from_doc(json.loads(s), group_hint(), "set")
    head, _, rest = s.partition(" ")
    if s == "N":
        return indicator_z(lambda x: x >= 0, 1, 0)
    if s == "2Z":
        return indicator_z(lambda x: x % 2 == 0, 2, 0)
    if s == "empty":
        return EventuallyPeriodicZ.constant(0)
    if s == "quadrant":
        return quadrant_cone()
    if head in ("interval", "interval-ho"):
        a, b = rest.split()
        return indicator_q1(a, b, (True, head == "interval"))
    raise GroupGameError(f"unknown set {text!r}")


def cmd_sweep(args):
    ns = parse_ns(args.ns)
    cone = parse_cone(args.cone)
    kind = args.window
    if args.what == "density":
        group_cls = _WINDOWS.get(kind, (None, IntegersZ))[1]
        ind = parse_set(args.set, group_cls)
        rows = density_sweep(ind, [_window(kind, n, cone) for n in ns])
        return sweep_csv(rows), EXIT_OK
    if args.what == "defect":
        group = _WINDOWS.get(kind, (None, IntegersZ))[1]()
        g = element_from_doc(group, json.loads(args.g) if args.g.lstrip().startswith("[") else args.g, "g")
        rows = []
        for n in ns:
            w = build_window(None, _window(kind, n, cone))
            rows.append(SweepRow(n, w.size, invariance_defect(w, g)))
        return sweep_csv(rows), EXIT_OK
    # banach
    ind = parse_set(args.set, IntegersZ)
    group = LatticeZ2() if isinstance(ind, ConeZ2) else RationalCircleQ1() if not isinstance(ind, EventuallyPeriodicZ) else IntegersZ()
    rows = []
    for n in ns:
        v = upper_banach_density(ind, n, args.translate_range, group)
        size = (2 * n + 1) ** (2 if isinstance(group, LatticeZ2) else 1)
        if isinstance(group, RationalCircleQ1):
            import math

            size = math.factorial(max(n, 1))
        rows.append(SweepRow(n, size, v))
    return sweep_csv(rows), EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="groupgames", description="Exact invariant-mean equilibria of group games.")
    sub = p.add_subparsers(dest="command", required=True)

    def game_args(sp, profile=True):
        sp.add_argument("game", help="builtin name, game document path, '-' for stdin, or inline JSON")
        if profile:
            sp.add_argument("profile", nargs="?", help="profile document (defaults to the game's own profile)")
        sp.add_argument("--players", type=int, help="player count for love-hate")

    def order_args(sp):
        sp.add_argument("--nu", help="'uniform' or 'single 2-1' (default: the game's nu)")
        sp.add_argument("--flip-order", action="store_true", help="integrate orders outermost-first instead")

    sp = sub.add_parser("solve", help="construct the equilibrium and verify it")
    game_args(sp, profile=False)
    order_args(sp)
    sp.add_argument("--tie-theta", default="1/2", help="lambda(N) on Z when tail averages agree")
    sp.add_argument("--normalize", action="store_true", help="add the affine [0,1] normalization report")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="exact best-response gaps of a profile")
    game_args(sp)
    order_args(sp)
    sp.add_argument("--normalize", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("payoff", help="payoffs with per-order terms")
    game_args(sp)
    order_args(sp)
    sp.set_defaults(func=cmd_payoff)

    sp = sub.add_parser("gap", help="one player's best-response gap")
    sp.add_argument("game")
    sp.add_argument("profile")
    sp.add_argument("player", type=int, help="1-based player")
    sp.add_argument("--players", type=int)
    order_args(sp)
    sp.set_defaults(func=cmd_gap)

    sp = sub.add_parser("sweep", help="Folner sweeps as CSV")
    sp.add_argument("what", choices=("density", "defect", "banach"))
    sp.add_argument("--set", default="N", help="N, 2Z, empty, quadrant, 'interval A B', 'interval-ho A B' or JSON")
    sp.add_argument("--window", default="z-sym", help=", ".join(_WINDOWS))
    sp.add_argument("--ns", default="1:10", help="'1,2,5' or 'start:stop:step'")
    sp.add_argument("--g", default="1", help="translation element for defect sweeps, e.g. 1, 1/8 or [1,1]")
    sp.add_argument("--cone", help="'u1,u2;v1,v2' for z2-cone windows (default: open first quadrant)")
    sp.add_argument("--translate-range", type=int, help="banach: translates |t| <= R (default 10 n)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("demo", help="run a builtin example")
    sp.add_argument("name", choices=DEMO_NAMES)
    sp.add_argument("--players", type=int)
    sp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("export", help="print a builtin game as a document")
    sp.add_argument("name")
    sp.add_argument("--players", type=int)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("fubini", help="compare both integration orders of a two-player payoff")
    game_args(sp)
    sp.add_argument("--player", type=int, default=1, help="whose payoff (default 1)")
    sp.set_defaults(func=cmd_fubini)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out, code = args.func(args)
    except (GroupGameError, KeyError, ValueError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out if isinstance(out, str) else dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
