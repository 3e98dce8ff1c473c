"""Mixed strategies: finitely supported measures and symbolic invariant means."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exceptions import GroupGameError, VariantMismatch
from .groups import (
    AffineQ1,
    AffineZ,
    Bijection,
    FinitePermutation,
    Group,
    Identity,
    IntegersZ,
    RationalCircleQ1,
)
from .rationals import as_fraction

__all__ = [
    "Measure",
    "FiniteSupportMeasure",
    "TwoEndedMeanZ",
    "IntervalMeanQ1",
    "UniformFinite",
    "Mixture",
    "dirac",
    "mix",
    "uniform_on",
    "validate_measure",
    "pushforward",
    "atoms",
    "is_symbolic",
]


class Measure:
    """Base class of every mixed-strategy representation."""


def _sort_key(x):
    # elements of one group share a type, so natural ordering works; repr breaks ties across types
    return (type(x).__name__, x)


@dataclass(frozen=True)
class FiniteSupportMeasure(Measure):
    """A probability measure with finitely many atoms; ``weights`` is a sorted tuple of pairs."""

    weights: tuple

    def __post_init__(self):
        items = self.weights.items() if isinstance(self.weights, Mapping) else self.weights
        acc: dict = {}
        for x, w in items:
            w = as_fraction(w)
            if w < 0:
                raise GroupGameError(f"negative weight {w} at {x!r}")
            if w:
                acc[x] = acc.get(x, Fraction(0)) + w
        if not acc:
            raise GroupGameError("a measure needs at least one atom of positive weight")
        total = sum(acc.values(), Fraction(0))
        if total != 1:
            raise GroupGameError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", tuple(sorted(acc.items(), key=lambda kv: _sort_key(kv[0]))))

    @property
    def weight_map(self) -> dict:
        return dict(self.weights)

    @property
    def support(self) -> list:
        return [x for x, _ in self.weights]

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class TwoEndedMeanZ(Measure):
    """Invariant means on Z with ``lambda(N) = theta``.

    On eventually periodic functions every such mean integrates to
    ``theta * A_plus + (1 - theta) * A_minus``, so ``theta`` identifies the
    whole convex family; nothing else about the mean is queryable.
    """

    theta: Fraction

    def __post_init__(self):
        t = as_fraction(self.theta)
        if not 0 <= t <= 1:
            raise GroupGameError(f"theta must lie in [0, 1], got {t}")
        object.__setattr__(self, "theta", t)


@dataclass(frozen=True)
class IntervalMeanQ1(Measure):
    """Any invariant mean on Q1; all of them integrate step functions to their Lebesgue value."""


@dataclass(frozen=True)
class UniformFinite(Measure):
    """Uniform measure on a finite group (the group is supplied at integration time)."""


@dataclass(frozen=True)
class Mixture(Measure):
    """``weight * first + (1 - weight) * second``."""

    weight: Fraction
    first: Measure
    second: Measure

    def __post_init__(self):
        w = as_fraction(self.weight)
        if not 0 <= w <= 1:
            raise GroupGameError(f"mixture weight must lie in [0, 1], got {w}")
        object.__setattr__(self, "weight", w)


def dirac(x) -> FiniteSupportMeasure:
    return FiniteSupportMeasure(((x, 1),))


def mix(weight, first: Measure, second: Measure) -> Mixture:
    return Mixture(as_fraction(weight), first, second)


def uniform_on(elements) -> FiniteSupportMeasure:
    elements = list(elements)
    if not elements:
        raise GroupGameError("cannot build a uniform measure on an empty set")
    w = Fraction(1, len(elements))
    return FiniteSupportMeasure(tuple((x, w) for x in elements))


def is_symbolic(mu: Measure) -> bool:
    return isinstance(mu, (TwoEndedMeanZ, IntervalMeanQ1, UniformFinite))


def validate_measure(mu: Measure, group: Group) -> None:
    """Raise unless ``mu`` is a well-formed strategy on ``group``."""
    if isinstance(mu, FiniteSupportMeasure):
        for x, _ in mu.weights:
            if not group.contains(x):
                raise VariantMismatch(f"atom {x!r} is not an element of {group.tag}")
    elif isinstance(mu, TwoEndedMeanZ):
        if not isinstance(group, IntegersZ):
            raise VariantMismatch(f"two-ended means live on Z, not {group.tag}")
    elif isinstance(mu, IntervalMeanQ1):
        if not isinstance(group, RationalCircleQ1):
            raise VariantMismatch(f"the interval mean lives on Q1, not {group.tag}")
    elif isinstance(mu, UniformFinite):
        if not group.is_finite:
            raise VariantMismatch(f"uniform measure requires a finite group, not {group.tag}")
    elif isinstance(mu, Mixture):
        validate_measure(mu.first, group)
        validate_measure(mu.second, group)
    else:
        raise GroupGameError(f"unknown measure type {type(mu).__name__}")


def pushforward(mu: Measure, eta: Bijection) -> Measure:
    """The measure ``rho`` with ``rho(A) = mu(eta(A))``.

    Atoms move through ``eta``'s inverse; a two-ended mean swaps its ends when
    ``eta`` reverses orientation; invariant and uniform means are unchanged.
    """
    if isinstance(eta, Identity):
        return mu
    if isinstance(mu, Mixture):
        return Mixture(mu.weight, pushforward(mu.first, eta), pushforward(mu.second, eta))
    if isinstance(mu, FiniteSupportMeasure):
        inv = eta.inverse()
        return FiniteSupportMeasure(tuple((inv(x), w) for x, w in mu.weights))
    if isinstance(mu, TwoEndedMeanZ):
        if not isinstance(eta, AffineZ):
            raise VariantMismatch(f"cannot push a two-ended mean through {eta!r}")
        return mu if eta.s == 1 else TwoEndedMeanZ(1 - mu.theta)
    if isinstance(mu, IntervalMeanQ1):
        if not isinstance(eta, AffineQ1):
            raise VariantMismatch(f"cannot push the interval mean through {eta!r}")
        return mu
    if isinstance(mu, UniformFinite):
        if not isinstance(eta, FinitePermutation):
            raise VariantMismatch(f"cannot push a uniform measure through {eta!r}")
        return mu
    raise GroupGameError(f"unknown measure type {type(mu).__name__}")


def atoms(mu: Measure) -> list:
    """Expand mixtures into ``(weight, measure)`` pairs with no nested mixtures.

    All finitely supported pieces are merged into a single atom, which is
    valid because every integral in this package is linear in each measure.
    """
    flat: list = []

    def walk(m, w):
        if w == 0:
            return
        if isinstance(m, Mixture):
            walk(m.first, w * m.weight)
            walk(m.second, w * (1 - m.weight))
        else:
            flat.append((w, m))

    walk(mu, Fraction(1))
    finite = [(w, m) for w, m in flat if isinstance(m, FiniteSupportMeasure)]
    out: dict = {}
    for w, m in flat:
        if not isinstance(m, FiniteSupportMeasure):
            out[m] = out.get(m, Fraction(0)) + w
    result = [(w, m) for m, w in out.items()]
    if finite:
        wf = sum((w for w, _ in finite), Fraction(0))
        acc: dict = {}
        for w, m in finite:
            for x, p in m.weights:
                acc[x] = acc.get(x, Fraction(0)) + w * p / wf
        result.insert(0, (wf, FiniteSupportMeasure(tuple(acc.items()))))
    return result
