"""Equilibrium construction and exact best-response verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exceptions import UnsupportedClass
from .functions import (
    EventuallyPeriodicZ,
    FiniteTableFn,
    PayoffFn,
    StepQ1,
    argsup_fn,
)
from .games import GameSpec, OrderWeights
from .groups import Group, IntegersZ, RationalCircleQ1
from .integration import payoff_nu, payoff_terms, pure_response
from .measures import (
    IntervalMeanQ1,
    Measure,
    TwoEndedMeanZ,
    UniformFinite,
    dirac,
    pushforward,
)

__all__ = [
    "IRange",
    "GapEntry",
    "GapReport",
    "i_range",
    "construct_equilibrium",
    "deviation_value",
    "best_response_gap",
    "verify_equilibrium",
    "z_structure_check",
    "ZCheck",
]


@dataclass(frozen=True)
class IRange:
    """The interval of values ``int phi dlambda`` over invariant means ``lambda``.

    ``argmax`` is a representative maximizing mean; ``argmax_set`` describes
    all maximizers in words (``"theta = 1"``, ``"any theta in [0, 1]"``...).
    """

    lo: Fraction
    hi: Fraction
    argmax: Measure
    argmax_set: str


def i_range(phi: PayoffFn, group: Group, tie_theta: Fraction = Fraction(1, 2)) -> IRange:
    if isinstance(phi, EventuallyPeriodicZ) and isinstance(group, IntegersZ):
        a_minus, a_plus = phi.averages()
        lo, hi = min(a_minus, a_plus), max(a_minus, a_plus)
        if a_plus > a_minus:
            return IRange(lo, hi, TwoEndedMeanZ(Fraction(1)), "theta = 1")
        if a_plus < a_minus:
            return IRange(lo, hi, TwoEndedMeanZ(Fraction(0)), "theta = 0")
        return IRange(lo, hi, TwoEndedMeanZ(Fraction(tie_theta)), "any theta in [0, 1]")
    if isinstance(phi, StepQ1) and isinstance(group, RationalCircleQ1):
        v = phi.integral()
        return IRange(v, v, IntervalMeanQ1(), "every invariant mean")
    if isinstance(phi, FiniteTableFn) and group.is_finite:
        phi.check_group(group)
        v = phi.mean()
        return IRange(v, v, UniformFinite(), "the uniform measure")
    raise UnsupportedClass(
        f"no symbolic invariant-mean range for {type(phi).__name__} on {group.tag}; "
        "use the Folner density bounds (sweep banach) instead"
    )


def construct_equilibrium(game: GameSpec, tie_theta: Fraction = Fraction(1, 2)) -> tuple:
    """Each player maximizes its own invariant-mean value, then the mean is pulled back through ``eta_i``.

    Never reads ``game.nu``.
    """
    group = game.group
    if not group.is_finite and not group.is_abelian:
        raise UnsupportedClass(f"{group.tag} is infinite and not declared abelian")
    profile = []
    for phi, eta in zip(game.phi, game.eta):
        best = i_range(phi, group, tie_theta).argmax
        profile.append(pushforward(best, eta))
    return tuple(profile)


def deviation_value(
    game: GameSpec, profile: Sequence[Measure], i: int, candidate: Measure, nu: Optional[OrderWeights] = None
) -> Fraction:
    trial = list(profile)
    trial[i] = candidate
    return payoff_nu(game, trial, i, nu)


def _symbolic_candidates(group: Group) -> list:
    if isinstance(group, IntegersZ):
        return [TwoEndedMeanZ(Fraction(1)), TwoEndedMeanZ(Fraction(0))]
    if isinstance(group, RationalCircleQ1):
        return [IntervalMeanQ1()]
    if group.is_finite:
        return [UniformFinite()]
    return []


@dataclass(frozen=True)
class GapEntry:
    player: int
    payoff: Fraction
    best_value: Fraction
    best_deviation: Optional[Measure]
    best_description: str
    terms: tuple = field(default=())

    @property
    def gap(self) -> Fraction:
        return self.best_value - self.payoff


@dataclass(frozen=True)
class GapReport:
    entries: tuple
    nu: OrderWeights

    @property
    def certified(self) -> bool:
        return all(e.gap <= 0 for e in self.entries)

    @property
    def payoffs(self) -> tuple:
        return tuple(e.payoff for e in self.entries)

    @property
    def gaps(self) -> tuple:
        return tuple(e.gap for e in self.entries)


def best_response_gap(
    game: GameSpec, profile: Sequence[Measure], i: int, nu: Optional[OrderWeights] = None
) -> GapEntry:
    """Exact best deviation over point masses, invariant-mean extremes and their mixtures.

    Deviation payoffs are affine in the deviating strategy, so the maximum over
    mixtures is attained at a point mass or an extreme invariant mean; the
    point-mass part is the supremum of :func:`pure_response`.
    """
    profile = game.check_profile(profile)
    nu = nu or game.nu
    base_terms = payoff_terms(game, profile, i, nu)
    payoff = sum((w * v for _, w, v in base_terms), Fraction(0))

    response = pure_response(game, profile, i, nu)
    sup, witness = argsup_fn(response)
    cands = []
    if witness is not None:
        shown = game.group.name(witness) if hasattr(game.group, "name") else witness
        cands.append((sup, dirac(witness), f"point mass at {shown}"))
    for m in _symbolic_candidates(game.group):
        cands.append((deviation_value(game, profile, i, m, nu), m, _describe(m)))
    if witness is None:
        cands.append((sup, None, "supremum over point masses (not attained)"))
    best_value, best_dev, desc = max(cands, key=lambda c: c[0])

    dev_terms = {}
    if best_dev is not None:
        trial = list(profile)
        trial[i] = best_dev
        dev_terms = {rel: v for rel, _, v in payoff_terms(game, trial, i, nu)}
    terms = tuple((rel, w, v, dev_terms.get(rel)) for rel, w, v in base_terms)
    return GapEntry(i, payoff, best_value, best_dev, desc, terms)


def _describe(m: Measure) -> str:
    if isinstance(m, TwoEndedMeanZ):
        return f"two-ended mean theta = {m.theta}"
    if isinstance(m, IntervalMeanQ1):
        return "interval mean"
    if isinstance(m, UniformFinite):
        return "uniform"
    return type(m).__name__


def verify_equilibrium(game: GameSpec, profile: Sequence[Measure], nu: Optional[OrderWeights] = None) -> GapReport:
    nu = nu or game.nu
    entries = tuple(best_response_gap(game, profile, i, nu) for i in range(game.n_players))
    return GapReport(entries, nu)


@dataclass(frozen=True)
class ZCheck:
    player: int
    theta: Fraction
    theta_transformed: Fraction
    a_minus: Fraction
    a_plus: Fraction
    case: str
    required: str
    ok: bool


def z_structure_check(game: GameSpec, profile: Sequence[Measure]) -> tuple:
    """Check each two-ended strategy puts its mass on the tail its own payoff prefers.

    Mass sits on the right tail (``theta = 1``) when ``A_plus > A_minus``, on
    the left (``theta = 0``) when ``A_plus < A_minus``; with equal averages
    every split is optimal and the payoff does not depend on it.
    """
    if not isinstance(game.group, IntegersZ):
        raise UnsupportedClass("the tail-mass check applies to games on Z")
    out = []
    for i, (mu, phi, eta) in enumerate(zip(profile, game.phi, game.eta)):
        if not isinstance(mu, TwoEndedMeanZ) or not isinstance(phi, EventuallyPeriodicZ):
            raise UnsupportedClass(f"player {i + 1}: expected a two-ended mean and an eventually periodic payoff")
        law = pushforward(mu, eta.inverse())
        t = law.theta
        a_minus, a_plus = phi.averages()
        case = "a" if t == 0 else "b" if t == 1 else "c"
        if a_plus > a_minus:
            required, ok = "theta = 1", t == 1
        elif a_plus < a_minus:
            required, ok = "theta = 0", t == 0
        else:
            required, ok = "any theta", True
        out.append(ZCheck(i, mu.theta, t, a_minus, a_plus, case, required, ok))
    return tuple(out)
