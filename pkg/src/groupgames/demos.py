"""Builtin example games and the reports the ``demo`` command prints."""

from __future__ import annotations

from fractions import Fraction

from .documents import element_to_doc, emit_profile, order_to_doc
from .equilibrium import GapReport, construct_equilibrium, verify_equilibrium, z_structure_check
from .foelner import (
    Q1Factorial,
    Z2ConeWindow,
    build_window,
    density_sweep,
    invariance_defect,
    upper_banach_density,
)
from .functions import (
    ConeZ2,
    EventuallyPeriodicZ,
    FiniteTableFn,
    StepQ1,
    indicator_z,
)
from .games import GameSpec, OrderWeights
from .groups import AffineQ1, AffineZ, FinitePermutation, FiniteTable, Identity, IntegersZ, LatticeZ2, RationalCircleQ1
from .integration import fubini_gap, integrate
from .measures import FiniteSupportMeasure, TwoEndedMeanZ, UniformFinite
from .rationals import format_fraction as ff

__all__ = ["BUILTINS", "builtin_game", "run_demo", "gap_report_doc", "DEMO_NAMES"]

HALF = Fraction(1, 2)


def matching_pennies_finite() -> tuple:
    group = FiniteTable(((0, 1), (1, 0)), ("A", "B"), is_abelian=True)
    # player 1 loses on a match: A*A = B*B = A
    phi1 = FiniteTableFn((-1, 1))
    return GameSpec(group, (phi1, -phi1), name="mp-finite"), None


def rsp_finite() -> tuple:
    # R is the identity; R*R = P*S = S*P = R and R*P = P*R = S*S = P
    group = FiniteTable(((0, 1, 2), (1, 2, 0), (2, 0, 1)), ("R", "P", "S"), is_abelian=True)
    phi1 = FiniteTableFn((HALF, 0, 1))
    phi2 = FiniteTableFn((HALF, 1, 0))
    eta = (FinitePermutation.group_inverse(group), Identity())
    return GameSpec(group, (phi1, phi2), eta, name="rsp-finite"), None


def parity_z() -> EventuallyPeriodicZ:
    return indicator_z(lambda x: x % 2 == 0, 2, 0)


def matching_pennies_z() -> tuple:
    even = parity_z()
    game = GameSpec(IntegersZ(), (even, 1 - even), name="mp-z")
    return game, (TwoEndedMeanZ(Fraction(1, 3)), TwoEndedMeanZ(Fraction(1)))


def wald_payoff() -> EventuallyPeriodicZ:
    """1 above zero, 1/2 at zero, 0 below (as a function of ``x - y``)."""
    return EventuallyPeriodicZ(1, (Fraction(1),), (Fraction(0),), ((0, HALF),), 0)


def wald() -> tuple:
    phi1 = wald_payoff()
    return GameSpec(IntegersZ(), (phi1, 1 - phi1), (Identity(), AffineZ(-1, 0)), name="wald"), None


def wald_stated_profile() -> tuple:
    """``lambda(N) = rho(-N) = 1``: player 2's mass toward large negative ``y``."""
    return TwoEndedMeanZ(Fraction(1)), TwoEndedMeanZ(Fraction(0))


def rsp_q1_payoff(alpha=Fraction(1, 3), beta=Fraction(2, 3)) -> StepQ1:
    alpha, beta = Fraction(alpha), Fraction(beta)
    return StepQ1(
        (Fraction(0), alpha, beta, Fraction(1)),
        (Fraction(0), HALF, Fraction(1)),
        ((Fraction(0), HALF), (alpha, HALF), (beta, HALF)),
    )


def rsp_q1(alpha=Fraction(1, 3), beta=Fraction(2, 3)) -> tuple:
    phi1 = rsp_q1_payoff(alpha, beta)
    game = GameSpec(RationalCircleQ1(), (phi1, 1 - phi1), (AffineQ1(-1, Fraction(0)), Identity()), name="rsp-q1")
    return game, None


def quadrant_cone() -> ConeZ2:
    return ConeZ2((1, 0), (0, 1))


def cones_z2() -> tuple:
    game = GameSpec(LatticeZ2(), (quadrant_cone(), ConeZ2((-1, 0), (0, -1))), name="cones-z2")
    return game, None


def circle_distance() -> StepQ1:
    """``d(w) = min(w, 1 - w)`` on ``[0, 1)``."""
    return StepQ1((Fraction(0), HALF, Fraction(1)), ((Fraction(1), Fraction(0)), (Fraction(-1), Fraction(1))))


def love_hate(players: int = 4) -> tuple:
    """Players numbered from 1: even ones chase their successor, odd ones flee it."""
    if players < 2 or players % 2:
        raise ValueError(f"love-hate needs an even number of players, got {players}")
    d = circle_distance()
    neg = AffineQ1(-1, Fraction(0))
    phi, eta, nbhd = [], [], []
    for i in range(players):
        even = (i + 1) % 2 == 0
        phi.append(-d if even else d)
        eta.append(Identity() if even else neg)
        nbhd.append((i, (i + 1) % players))
    return GameSpec(RationalCircleQ1(), tuple(phi), tuple(eta), tuple(nbhd), name="love-hate"), None


def naturals() -> EventuallyPeriodicZ:
    return indicator_z(lambda x: x >= 0, 1, 0)


def fubini_remark() -> tuple:
    one_n = naturals()
    game = GameSpec(IntegersZ(), (one_n, 1 - one_n), name="fubini-remark")
    return game, (TwoEndedMeanZ(Fraction(0)), TwoEndedMeanZ(Fraction(1)))


BUILTINS = {
    "mp-finite": matching_pennies_finite,
    "rsp-finite": rsp_finite,
    "mp-z": matching_pennies_z,
    "wald": wald,
    "rsp-q1": rsp_q1,
    "cones-z2": cones_z2,
    "love-hate": love_hate,
    "fubini-remark": fubini_remark,
}
DEMO_NAMES = tuple(BUILTINS)


def builtin_game(name: str, **kwargs) -> tuple:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(DEMO_NAMES)}")
    return BUILTINS[name](**kwargs)


# --- report documents -------------------------------------------------------


def describe_measure(mu, group) -> str:
    from .measures import IntervalMeanQ1, Mixture

    if isinstance(mu, FiniteSupportMeasure):
        if len(mu.weights) == 1:
            return f"point mass at {element_to_doc(group, mu.weights[0][0])}"
        return "finite support of size %d" % len(mu.weights)
    if isinstance(mu, TwoEndedMeanZ):
        return f"two-ended mean with lambda(N) = {ff(mu.theta)}"
    if isinstance(mu, IntervalMeanQ1):
        return "interval mean"
    if isinstance(mu, UniformFinite):
        return "uniform"
    if isinstance(mu, Mixture):
        return f"mixture with weight {ff(mu.weight)}"
    return type(mu).__name__


def gap_report_doc(game: GameSpec, profile, report: GapReport, flipped: bool = False) -> dict:
    group = game.group
    players = []
    for e in report.entries:
        players.append(
            {
                "player": e.player + 1,
                "payoff": ff(e.payoff),
                "best_deviation": None if e.best_deviation is None else emit_profile([e.best_deviation], group)[0],
                "best_deviation_description": e.best_description,
                "deviation_payoff": ff(e.best_value),
                "gap": ff(e.gap),
                "terms": [
                    {
                        "order": order_to_doc(rel),
                        "weight": ff(w),
                        "value": ff(v),
                        "deviation_value": None if dv is None else ff(dv),
                    }
                    for rel, w, v, dv in e.terms
                ],
            }
        )
    return {
        "convention": "order lists players innermost first" + (" (flipped)" if flipped else ""),
        "profile": emit_profile(profile, group),
        "certified": report.certified,
        "players": players,
    }


def _single_orders(n: int) -> list:
    import itertools

    return [OrderWeights.single(p) for p in itertools.permutations(range(n))]


def _summary(game, profile, nu, label) -> dict:
    rep = verify_equilibrium(game, profile, nu)
    return {
        "nu": label,
        "certified": rep.certified,
        "payoffs": [ff(v) for v in rep.payoffs],
        "gaps": [ff(v) for v in rep.gaps],
    }


def _nu_label(nu: OrderWeights) -> str:
    if nu == OrderWeights.uniform(nu.n_players):
        return "uniform"
    (perm, _), = nu.weights
    return "single " + "-".join(str(p + 1) for p in perm)


def _standard(game, profile) -> dict:
    nus = [OrderWeights.uniform(game.n_players)]
    if game.n_players <= 3:
        nus += _single_orders(game.n_players)
    uniform = verify_equilibrium(game, profile, nus[0])
    return {
        "game": game.name,
        "group": group_tag(game),
        "constructed_profile": emit_profile(profile, game.group),
        "constructed_profile_description": [describe_measure(m, game.group) for m in profile],
        "report": gap_report_doc(game, profile, uniform),
        "by_nu": [_summary(game, profile, nu, _nu_label(nu)) for nu in nus],
    }


def group_tag(game) -> str:
    return game.group.tag


def demo_mp_finite() -> dict:
    game, _ = matching_pennies_finite()
    return _standard(game, construct_equilibrium(game))


def demo_rsp_finite() -> dict:
    game, _ = rsp_finite()
    g = game.group
    out = _standard(game, construct_equilibrium(game))
    out["group_identities"] = {
        "R*R": g.name(g.combine(0, 0)),
        "P*S": g.name(g.combine(1, 2)),
        "S*P": g.name(g.combine(2, 1)),
        "R*P": g.name(g.combine(0, 1)),
        "S*S": g.name(g.combine(2, 2)),
    }
    return out


def demo_mp_z() -> dict:
    game, _ = matching_pennies_z()
    out = _standard(game, construct_equilibrium(game))
    grid = [Fraction(k, 4) for k in range(5)]
    rows = []
    for t1 in grid:
        for t2 in grid:
            prof = (TwoEndedMeanZ(t1), TwoEndedMeanZ(t2))
            rep = verify_equilibrium(game, prof)
            rows.append({"theta": [ff(t1), ff(t2)], "payoffs": [ff(v) for v in rep.payoffs], "certified": rep.certified})
    out["theta_grid"] = rows
    mod2 = FiniteSupportMeasure(((0, HALF), (1, HALF)))
    rep = verify_equilibrium(game, (mod2, mod2))
    out["mod2_uniform_profile"] = {"certified": rep.certified, "payoffs": [ff(v) for v in rep.payoffs]}
    return out


def demo_wald() -> dict:
    game, _ = wald()
    built = construct_equilibrium(game)
    out = _standard(game, built)
    out["z_structure"] = [
        {"player": c.player + 1, "required": c.required, "ok": c.ok} for c in z_structure_check(game, built)
    ]
    stated = wald_stated_profile()
    nus = [OrderWeights.uniform(2)] + _single_orders(2)
    out["stated_profile"] = {
        "description": "lambda(N) = rho(-N) = 1",
        "profile": emit_profile(stated, game.group),
        "by_nu": [_summary(game, stated, nu, _nu_label(nu)) for nu in nus],
        "note": "player 2 gap equals the weight of orders with player 2 innermost",
    }
    return out


def demo_rsp_q1() -> dict:
    game, _ = rsp_q1()
    out = _standard(game, construct_equilibrium(game))
    out["parameters"] = {"alpha": "1/3", "beta": "2/3"}
    return out


def demo_cones_z2(ns=(1, 2, 5, 10, 20, 50, 100, 200)) -> dict:
    cone = quadrant_cone()
    dens = density_sweep(cone, [Z2ConeWindow(n, cone) for n in ns])
    defects = [(n, invariance_defect(build_window(None, Z2ConeWindow(n, cone)), (1, 1))) for n in ns]
    return {
        "game": "cones-z2",
        "cone": {"u": [1, 0], "v": [0, 1]},
        "density": [{"n": r.n, "window_size": r.window_size, "value": ff(r.value)} for r in dens],
        "defect_g_1_1": [{"n": n, "value": ff(v)} for n, v in defects],
        "upper_banach_density_n10": ff(upper_banach_density(cone, 10, 20)),
    }


def demo_love_hate(players: int = 4) -> dict:
    game, _ = love_hate(players)
    out = _standard(game, construct_equilibrium(game))
    out["riemann_check"] = [
        {"n": n, "value": ff(integrate(circle_distance(), build_window(None, Q1Factorial(n)).measure))}
        for n in (2, 3, 4, 5, 6)
    ]
    return out


def demo_fubini_remark() -> dict:
    game, profile = fubini_remark()
    mu, lam = profile
    one_n = game.phi[0]
    first, second = fubini_gap(one_n, mu, lam, game.group)
    return {
        "game": "fubini-remark",
        "function": "indicator of N = {x >= 0}",
        "mu": emit_profile([mu], game.group)[0],
        "lambda": emit_profile([lam], game.group)[0],
        "mu_innermost": ff(first),
        "lambda_innermost": ff(second),
        "equal": first == second,
    }


_DEMOS = {
    "mp-finite": demo_mp_finite,
    "rsp-finite": demo_rsp_finite,
    "mp-z": demo_mp_z,
    "wald": demo_wald,
    "rsp-q1": demo_rsp_q1,
    "cones-z2": demo_cones_z2,
    "love-hate": demo_love_hate,
    "fubini-remark": demo_fubini_remark,
}


def run_demo(name: str, **kwargs) -> dict:
    if name not in _DEMOS:
        raise KeyError(f"unknown demo {name!r}; choose from {', '.join(DEMO_NAMES)}")
    return _DEMOS[name](**kwargs)
