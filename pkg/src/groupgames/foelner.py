"""Følner windows, invariance defects, density sweeps and an upper-Banach-density oracle.

Window empirical measures are ordinary :class:`FiniteSupportMeasure` values,
so anything computed symbolically can be re-checked through the same
integration code.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .exceptions import GroupGameError, UnsupportedClass, VariantMismatch
from .functions import ConeZ2, EventuallyPeriodicZ, PayoffFn, PredicateZ2, StepQ1
from .groups import (
    DirectProduct,
    Group,
    IntegersZ,
    LatticeZ2,
    RationalCircleQ1,
    mod1,
)
from .measures import FiniteSupportMeasure, uniform_on

__all__ = [
    "ZSymmetric",
    "ZRight",
    "ZLeft",
    "Z2ConeWindow",
    "Z2Square",
    "Q1Factorial",
    "FiniteWhole",
    "ProductWindow",
    "Window",
    "build_window",
    "invariance_defect",
    "density_sweep",
    "SweepRow",
    "sweep_csv",
    "upper_banach_density",
    "max_workers",
]

MAX_WORKERS_ENV = "GROUPGAMES_MAX_WORKERS"


def max_workers() -> int:
    """Thread cap for sweeps, from ``GROUPGAMES_MAX_WORKERS`` (default 1)."""
    raw = os.environ.get(MAX_WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise GroupGameError(f"{MAX_WORKERS_ENV} must be a positive integer, got {raw!r}") from None


class WindowSpec:
    n: int

    def group(self) -> Group:
        raise NotImplementedError

    def enumerate(self, group: Group) -> list:
        raise NotImplementedError


def _check_n(n, lo=0):
    if not isinstance(n, int) or n < lo:
        raise GroupGameError(f"window parameter must be an integer >= {lo}, got {n!r}")


@dataclass(frozen=True)
class ZSymmetric(WindowSpec):
    n: int

    def __post_init__(self):
        _check_n(self.n)

    def group(self):
        return IntegersZ()

    def enumerate(self, group):
        return list(range(-self.n, self.n + 1))


@dataclass(frozen=True)
class ZRight(WindowSpec):
    n: int

    def __post_init__(self):
        _check_n(self.n)

    def group(self):
        return IntegersZ()

    def enumerate(self, group):
        return list(range(0, self.n + 1))


@dataclass(frozen=True)
class ZLeft(WindowSpec):
    n: int

    def __post_init__(self):
        _check_n(self.n)

    def group(self):
        return IntegersZ()

    def enumerate(self, group):
        return list(range(-self.n, 1))


@dataclass(frozen=True)
class Z2Square(WindowSpec):
    """The full square ``{-n..n}^2``."""

    n: int

    def __post_init__(self):
        _check_n(self.n)

    def group(self):
        return LatticeZ2()

    def enumerate(self, group):
        r = range(-self.n, self.n + 1)
        return [(x, y) for x in r for y in r]


@dataclass(frozen=True)
class Z2ConeWindow(WindowSpec):
    """Lattice points of ``{-n..n}^2`` strictly inside an open cone."""

    n: int
    cone: ConeZ2

    def __post_init__(self):
        _check_n(self.n)
        if not isinstance(self.cone, ConeZ2):
            raise GroupGameError("Z2ConeWindow needs a ConeZ2")

    def group(self):
        return LatticeZ2()

    def enumerate(self, group):
        r = range(-self.n, self.n + 1)
        return [(x, y) for x in r for y in r if self.cone.contains((x, y))]


@dataclass(frozen=True)
class Q1Factorial(WindowSpec):
    """The cyclic subgroup ``{k / n! : 0 <= k < n!}`` of Q1."""

    n: int

    def __post_init__(self):
        _check_n(self.n, 1)

    def group(self):
        return RationalCircleQ1()

    def enumerate(self, group):
        d = math.factorial(self.n)
        return [Fraction(k, d) for k in range(d)]


@dataclass(frozen=True)
class FiniteWhole(WindowSpec):
    """All of a finite group."""

    of: Group
    n: int = 0

    def group(self):
        return self.of

    def enumerate(self, group):
        return list(self.of.elements())


@dataclass(frozen=True)
class ProductWindow(WindowSpec):
    """Cartesian product of factor windows, for a direct product of supported groups."""

    parts: tuple
    n: int = 0

    def group(self):
        return DirectProduct(tuple(p.group() for p in self.parts))

    def enumerate(self, group):
        import itertools

        return list(itertools.product(*(p.enumerate(p.group()) for p in self.parts)))


@dataclass(frozen=True)
class Window:
    spec: WindowSpec
    elements: tuple
    measure: FiniteSupportMeasure

    @property
    def size(self) -> int:
        return len(self.elements)


def build_window(group: Optional[Group], spec: WindowSpec, offset=None) -> Window:
    """Enumerate ``offset * F`` and its uniform empirical measure."""
    natural = spec.group()
    if group is None:
        group = natural
    elif group != natural:
        raise VariantMismatch(f"{type(spec).__name__} does not live on {group.tag}")
    elems = spec.enumerate(group)
    if offset is not None:
        group.check(offset)
        elems = [group.combine(offset, x) for x in elems]
    if not elems:
        raise GroupGameError(f"{spec} is empty; enlarge n or widen the cone")
    return Window(spec, tuple(elems), uniform_on(elems))


def invariance_defect(window, g, group: Optional[Group] = None) -> Fraction:
    """``|(g * F) symmetric-difference F| / |F|`` exactly."""
    if isinstance(window, Window):
        elems, group = window.elements, group or window.spec.group()
    else:
        elems = tuple(window)
        if group is None:
            raise GroupGameError("pass the group when giving a bare element list")
    base = set(elems)
    shifted = {group.combine(g, x) for x in elems}
    return Fraction(len(base ^ shifted), len(base))


@dataclass(frozen=True)
class SweepRow:
    n: int
    window_size: int
    value: Fraction


def _density(indicator: Callable, window: Window) -> Fraction:
    total = Fraction(0)
    for x in window.elements:
        total += indicator(x)
    return total / window.size


def density_sweep(indicator: PayoffFn, windows: Sequence[WindowSpec], offset=None) -> list:
    """``|A cap F_n| / |F_n|`` (or the window mean of a general function) along the windows."""
    windows = list(windows)

    def one(spec):
        w = build_window(None, spec, offset)
        return SweepRow(spec.n, w.size, _density(indicator, w))

    workers = min(max_workers(), max(1, len(windows)))
    if workers == 1:
        return [one(s) for s in windows]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, windows))


def sweep_csv(rows: Iterable, value_attr: str = "value") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "window_size", "value_num", "value_den", "value_decimal"])
    for r in rows:
        v = getattr(r, value_attr)
        writer.writerow([r.n, r.window_size, v.numerator, v.denominator, f"{float(v):.12g}"])
    return buf.getvalue()


def _scaled_values(phi: PayoffFn, xs: np.ndarray) -> tuple:
    """Integer numerators of ``phi`` on ``xs`` over a common denominator."""
    if isinstance(phi, EventuallyPeriodicZ):
        vals = list(phi.right) + list(phi.left) + [v for _, v in phi.core]
        den = 1
        for v in vals:
            den = den * v.denominator // math.gcd(den, v.denominator)
        right = np.array([int(v * den) for v in phi.right], dtype=np.int64)
        left = np.array([int(v * den) for v in phi.left], dtype=np.int64)
        out = np.where(xs > 0, right[xs % phi.period], left[xs % phi.period])
        k = phi.radius
        mask_core = np.abs(xs) <= k
        if mask_core.any():
            core = np.array([int(v * den) for _, v in phi.core], dtype=np.int64)
            out[mask_core] = core[xs[mask_core] + k]
        return out, den
    vals = [phi(int(x)) for x in xs]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return np.array([int(v * den) for v in vals], dtype=np.int64), den


def upper_banach_density(
    indicator: PayoffFn,
    n: int,
    translate_range: Optional[int] = None,
    group: Optional[Group] = None,
) -> Fraction:
    """Largest window mean of ``indicator`` over translates of a symmetric window.

    On Z the window is ``{-n..n}`` translated by every ``t`` with
    ``|t| <= translate_range`` (default ``10 n``); on Z^2 it is the square
    ``{-n..n}^2`` translated over ``{-R..R}^2``. The result is a lower bound
    for the largest invariant-mean value of the set.
    """
    _check_n(n)
    if group is None:
        if isinstance(indicator, PredicateZ2):
            group = LatticeZ2()
        elif isinstance(indicator, StepQ1):
            group = RationalCircleQ1()
        else:
            group = IntegersZ()
    reach = 10 * n if translate_range is None else int(translate_range)
    if isinstance(group, IntegersZ):
        xs = np.arange(-reach - n, reach + n + 1, dtype=np.int64)
        vals, den = _scaled_values(indicator, xs)
        csum = np.concatenate(([0], np.cumsum(vals)))
        width = 2 * n + 1
        sums = csum[width:] - csum[:-width]
        return Fraction(int(sums.max()), den * width)
    if isinstance(group, LatticeZ2):
        r = range(-reach - n, reach + n + 1)
        grid = np.array([[int(indicator((x, y))) for y in r] for x in r], dtype=np.int64)
        c = np.zeros((grid.shape[0] + 1, grid.shape[1] + 1), dtype=np.int64)
        c[1:, 1:] = grid.cumsum(0).cumsum(1)
        w = 2 * n + 1
        sums = c[w:, w:] - c[:-w, w:] - c[w:, :-w] + c[:-w, :-w]
        return Fraction(int(sums.max()), w * w)
    if isinstance(group, RationalCircleQ1):
        base = math.factorial(max(n, 1))
        window = [Fraction(k, base) for k in range(base)]
        steps = n + 1 if translate_range is None else int(translate_range)
        best = Fraction(0)
        for k in range(steps):
            t = Fraction(k, base * steps)
            best = max(best, sum((indicator(mod1(t + x)) for x in window), Fraction(0)) / base)
        return best
    raise UnsupportedClass(f"no upper Banach density oracle for {group.tag}")
