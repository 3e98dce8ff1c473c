"""Payoff functions with exact statistics.

Four representable classes, each closed under translation and finite linear
combination so that integrating out a finitely supported strategy never leaves
the class:

* :class:`FiniteTableFn` - one value per element of a finite group.
* :class:`EventuallyPeriodicZ` - a finite core on ``[-K, K]`` and periodic
  tails on either side.
* :class:`StepQ1` - piecewise-linear on ``[0, 1)`` with rational breakpoints
  and finitely many point overrides.
* Predicates on ``Z^2`` (:class:`ConeZ2`, :class:`PeriodicZ2`,
  :class:`FiniteSetZ2` and boolean combinations), plus the generic
  :class:`TranslateCombination` that carries their finite convolutions.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

from .exceptions import GroupGameError, UnsupportedClass, VariantMismatch
from .groups import (
    AffineQ1,
    AffineZ,
    Bijection,
    FinitePermutation,
    Group,
    Identity,
    mod1,
)
from .rationals import as_fraction

__all__ = [
    "PayoffFn",
    "FiniteTableFn",
    "EventuallyPeriodicZ",
    "StepQ1",
    "PredicateZ2",
    "ConeZ2",
    "PeriodicZ2",
    "FiniteSetZ2",
    "NotZ2",
    "AndZ2",
    "OrZ2",
    "TranslateCombination",
    "eval_fn",
    "eventual_averages",
    "sup_fn",
    "inf_fn",
    "argsup_fn",
    "lebesgue_q1",
    "precompose_affine",
    "linear_combination",
    "indicator_z",
    "indicator_q1",
]

_ONE = Fraction(1)
_ZERO = Fraction(0)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


class PayoffFn:
    """Base class. Subclasses are immutable and evaluate exactly."""

    kind: str = "abstract"

    def __call__(self, x) -> Fraction:
        raise NotImplementedError

    def is_constant(self) -> bool:
        return False

    def constant_like(self, c) -> "PayoffFn":
        """A constant function of the same class."""
        raise NotImplementedError

    def translate(self, t, group: Optional[Group] = None) -> "PayoffFn":
        """``w -> self(w * t)``."""
        raise NotImplementedError

    def scaled(self, c) -> "PayoffFn":
        return linear_combination([(c, self)])

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other):
        if isinstance(other, PayoffFn):
            return linear_combination([(1, self), (1, other)])
        return linear_combination([(1, self), (1, self.constant_like(as_fraction(other)))])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PayoffFn):
            return linear_combination([(1, self), (-1, other)])
        return self + (-as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other


# --- finite groups ----------------------------------------------------------


@dataclass(frozen=True)
class FiniteTableFn(PayoffFn):
    values: tuple

    kind = "table"

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if not vals:
            raise GroupGameError("a table function needs at least one value")
        object.__setattr__(self, "values", vals)

    def __call__(self, x):
        if not (_is_int(x) and 0 <= x < len(self.values)):
            raise VariantMismatch(f"table function of length {len(self.values)} evaluated at {x!r}")
        return self.values[x]

    def check_group(self, group: Group):
        if not group.is_finite or group.order != len(self.values):
            raise VariantMismatch(f"table of length {len(self.values)} does not fit {group.tag}")

    def is_constant(self):
        return len(set(self.values)) == 1

    def constant_like(self, c):
        return FiniteTableFn((as_fraction(c),) * len(self.values))

    def translate(self, t, group=None):
        if group is None:
            raise GroupGameError("translating a table function needs its group")
        self.check_group(group)
        return FiniteTableFn(tuple(self.values[group.combine(w, t)] for w in group.elements()))

    def mean(self) -> Fraction:
        return sum(self.values, _ZERO) / len(self.values)


# --- eventually periodic functions on Z -------------------------------------


@dataclass(frozen=True)
class EventuallyPeriodicZ(PayoffFn):
    """A bounded function on Z: explicit on ``[-radius, radius]``, periodic outside.

    For ``x > radius`` the value is ``right[x % period]``; for
    ``x < -radius`` it is ``left[x % period]`` (Python's non-negative
    residue). ``core`` is a sorted tuple of ``(x, value)`` pairs covering every
    integer in ``[-radius, radius]``.
    """

    period: int
    right: tuple
    left: tuple
    core: tuple
    radius: int

    kind = "ep-z"

    def __post_init__(self):
        m, k = self.period, self.radius
        if not _is_int(m) or m < 1:
            raise GroupGameError(f"period must be an integer >= 1, got {m!r}")
        if not _is_int(k) or k < 0:
            raise GroupGameError(f"core radius must be an integer >= 0, got {k!r}")
        right = tuple(as_fraction(v) for v in self.right)
        left = tuple(as_fraction(v) for v in self.left)
        if len(right) != m or len(left) != m:
            raise GroupGameError(f"right and left tails need exactly {m} values each")
        items = self.core.items() if isinstance(self.core, Mapping) else self.core
        core = {}
        for x, v in items:
            x = int(x)
            if abs(x) > k:
                raise GroupGameError(f"core point {x} lies outside radius {k}")
            core[x] = as_fraction(v)
        missing = [x for x in range(-k, k + 1) if x not in core]
        if missing:
            raise GroupGameError(f"core must define every point in [-{k}, {k}]; missing {missing[:5]}")
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "core", tuple(sorted(core.items())))

    @classmethod
    def from_callable(cls, f: Callable[[int], Fraction], period: int, radius: int) -> "EventuallyPeriodicZ":
        """Tabulate ``f``, assumed ``period``-periodic beyond ``radius`` on both sides."""
        right = [f(_tail_point(r, period, radius, +1)) for r in range(period)]
        left = [f(_tail_point(r, period, radius, -1)) for r in range(period)]
        core = [(x, f(x)) for x in range(-radius, radius + 1)]
        return cls(period, tuple(right), tuple(left), tuple(core), radius)

    @classmethod
    def constant(cls, c) -> "EventuallyPeriodicZ":
        c = as_fraction(c)
        return cls(1, (c,), (c,), ((0, c),), 0)

    @property
    def core_map(self) -> dict:
        return dict(self.core)

    def __call__(self, x):
        if not _is_int(x):
            raise VariantMismatch(f"function on Z evaluated at {x!r}")
        if x > self.radius:
            return self.right[x % self.period]
        if x < -self.radius:
            return self.left[x % self.period]
        return self.core[x + self.radius][1]

    def averages(self) -> tuple:
        """``(A_minus, A_plus)``: the mean of the left and of the right tail."""
        m = self.period
        return sum(self.left, _ZERO) / m, sum(self.right, _ZERO) / m

    def is_constant(self):
        vals = set(self.right) | set(self.left) | {v for _, v in self.core}
        return len(vals) == 1

    def constant_like(self, c):
        return EventuallyPeriodicZ.constant(c)

    def translate(self, t, group=None):
        if not _is_int(t):
            raise VariantMismatch(f"cannot translate a function on Z by {t!r}")
        return self.precompose(AffineZ(1, t))

    def precompose(self, eta: Bijection) -> "EventuallyPeriodicZ":
        """``w -> self(eta(w))`` for ``eta`` an integer affine map."""
        if isinstance(eta, Identity):
            return self
        if not isinstance(eta, AffineZ):
            raise VariantMismatch(f"cannot precompose a function on Z with {eta!r}")
        return EventuallyPeriodicZ.from_callable(
            lambda w: self(eta(w)), self.period, self.radius + abs(eta.c)
        )

    def canonical(self) -> "EventuallyPeriodicZ":
        """Same function with the smallest common period and core radius."""
        m = self.period
        best = m
        for d in sorted(_divisors(m)):
            if all(self.right[r] == self.right[r % d] and self.left[r] == self.left[r % d] for r in range(m)):
                best = d
                break
        right, left = self.right[:best], self.left[:best]
        core = self.core_map
        k = self.radius
        while k > 0 and core[k] == right[k % best] and core[-k] == left[(-k) % best]:
            k -= 1
        return EventuallyPeriodicZ(best, right, left, tuple((x, core[x]) for x in range(-k, k + 1)), k)

    def same_function(self, other: "EventuallyPeriodicZ") -> bool:
        return self.canonical() == other.canonical()

    def values_between(self, lo: int, hi: int) -> list:
        return [self(x) for x in range(lo, hi + 1)]


def _tail_point(r: int, m: int, k: int, side: int) -> int:
    """Smallest ``x > k`` (side +1) or largest ``x < -k`` (side -1) with ``x % m == r``."""
    if side > 0:
        x = k + 1
        return x + ((r - x) % m)
    x = -k - 1
    return x - ((x - r) % m)


def _divisors(m: int) -> list:
    out = set()
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            out.add(d)
            out.add(m // d)
    return sorted(out)


def indicator_z(predicate: Callable[[int], bool], period: int, radius: int) -> EventuallyPeriodicZ:
    """Eventually periodic indicator of ``{x : predicate(x)}``."""
    return EventuallyPeriodicZ.from_callable(lambda x: _ONE if predicate(x) else _ZERO, period, radius)


# --- step / piecewise-linear functions on Q1 --------------------------------


@dataclass(frozen=True)
class StepQ1(PayoffFn):
    """Piecewise-linear function on the rationals of ``[0, 1)``.

    ``pieces[j] = (slope, intercept)`` gives the value ``slope*x + intercept``
    on the open interval ``(breakpoints[j], breakpoints[j+1])``. At a
    breakpoint the function is right-continuous unless ``points`` overrides
    the value; ``points`` may also override values anywhere inside a piece.
    """

    breakpoints: tuple
    pieces: tuple
    points: tuple = ()

    kind = "step-q1"

    def __post_init__(self):
        bps = tuple(as_fraction(b) for b in self.breakpoints)
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise GroupGameError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise GroupGameError("breakpoints must be strictly increasing")
        pieces = []
        for p in self.pieces:
            if isinstance(p, (tuple, list)):
                slope, icpt = p
            else:
                slope, icpt = 0, p
            pieces.append((as_fraction(slope), as_fraction(icpt)))
        if len(pieces) != len(bps) - 1:
            raise GroupGameError(f"{len(bps) - 1} intervals need {len(bps) - 1} pieces, got {len(pieces)}")
        items = self.points.items() if isinstance(self.points, Mapping) else self.points
        pts = {}
        for x, v in items:
            x = as_fraction(x)
            if not 0 <= x < 1:
                raise GroupGameError(f"point override {x} lies outside [0, 1)")
            pts[x] = as_fraction(v)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(pieces))
        object.__setattr__(self, "points", tuple(sorted(pts.items())))

    @classmethod
    def constant(cls, c) -> "StepQ1":
        return cls((0, 1), ((0, as_fraction(c)),))

    @property
    def point_map(self) -> dict:
        return dict(self.points)

    def _piece_index(self, x: Fraction) -> int:
        return bisect.bisect_right(self.breakpoints, x) - 1

    def piece_value(self, j: int, x: Fraction) -> Fraction:
        slope, icpt = self.pieces[j]
        return slope * x + icpt

    def __call__(self, x):
        if not (isinstance(x, Fraction) and 0 <= x < 1):
            raise VariantMismatch(f"function on Q1 evaluated at {x!r}")
        pm = self.point_map
        if x in pm:
            return pm[x]
        return self.piece_value(self._piece_index(x), x)

    def integral(self) -> Fraction:
        total = _ZERO
        for (a, b), (slope, icpt) in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            total += slope * (b * b - a * a) / 2 + icpt * (b - a)
        return total

    def is_constant(self):
        c = self.canonical()
        return len(c.pieces) == 1 and c.pieces[0][0] == 0 and not c.points

    def constant_like(self, c):
        return StepQ1.constant(c)

    def translate(self, t, group=None):
        return self.precompose(AffineQ1(1, mod1(as_fraction(t))))

    def precompose(self, eta: Bijection) -> "StepQ1":
        """``w -> self(eta(w))`` for ``eta`` an affine map of the circle."""
        if isinstance(eta, Identity):
            return self
        if not isinstance(eta, AffineQ1):
            raise VariantMismatch(f"cannot precompose a function on Q1 with {eta!r}")
        s, c = eta.s, eta.c
        inv = eta.inverse()
        cuts = {_ZERO, _ONE}
        cuts.update(inv(b) for b in self.breakpoints[:-1])
        cuts.update(inv(p) for p, _ in self.points)
        bps = sorted(cuts)
        pieces = []
        for a, b in zip(bps, bps[1:]):
            mid = (a + b) / 2
            raw = s * mid + c
            wrap = math.floor(raw)
            j = self._piece_index(raw - wrap)
            slope, icpt = self.pieces[j]
            # y(w) = s*w + c - wrap on this interval
            pieces.append((slope * s, slope * (c - wrap) + icpt))
        pts = {w: self(eta(w)) for w in bps[:-1]}
        return StepQ1(tuple(bps), tuple(pieces), tuple(pts.items())).canonical()

    def canonical(self) -> "StepQ1":
        """Merge redundant breakpoints and drop point overrides equal to the default."""
        bps = list(self.breakpoints)
        pieces = list(self.pieces)
        pm = self.point_map
        j = 1
        while j < len(bps) - 1:
            t = bps[j]
            left, right = pieces[j - 1], pieces[j]
            line_t = right[0] * t + right[1]
            if left == right and pm.get(t, line_t) == line_t:
                del bps[j]
                del pieces[j]
                pm.pop(t, None)
            else:
                j += 1
        probe = StepQ1(tuple(bps), tuple(pieces), ())
        kept = {x: v for x, v in pm.items() if probe(x) != v}
        return StepQ1(tuple(bps), tuple(pieces), tuple(sorted(kept.items())))

    def same_function(self, other: "StepQ1") -> bool:
        return self.canonical() == other.canonical()

    def sup_candidates(self) -> list:
        """``(value, witness_or_None)`` pairs whose maximum is the supremum."""
        cands = []
        pm = self.point_map
        for j, (a, b) in enumerate(zip(self.breakpoints, self.breakpoints[1:])):
            slope, icpt = self.pieces[j]
            if slope == 0:
                # any interior point free of overrides attains the constant
                k = 2
                while a + (b - a) / k in pm:
                    k += 1
                cands.append((icpt, a + (b - a) / k))
            else:
                # open interval: endpoint limits are approached, never attained
                cands.append((slope * a + icpt, None))
                cands.append((slope * b + icpt, None))
        for t in self.breakpoints[:-1]:
            cands.append((self(t), t))
        for x, v in self.points:
            cands.append((v, x))
        return cands


def indicator_q1(a, b, closed: tuple = (True, True)) -> StepQ1:
    """Indicator of the interval from ``a`` to ``b`` inside ``[0, 1)``."""
    a, b = as_fraction(a), as_fraction(b)
    if not 0 <= a < b <= 1:
        raise GroupGameError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
    bps = [_ZERO]
    pieces = []
    if a > 0:
        bps.append(a)
        pieces.append(_ZERO)
    pieces.append(_ONE)
    if b < 1:
        bps.append(b)
        pieces.append(_ZERO)
    bps.append(_ONE)
    pts = {}
    if not closed[0]:
        pts[a] = _ZERO
    if closed[1] and b < 1:
        pts[b] = _ONE
    return StepQ1(tuple(bps), tuple(pieces), tuple(pts.items())).canonical()


# --- predicates on Z^2 ------------------------------------------------------


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _primitive(w) -> tuple:
    den = math.lcm(w[0].denominator, w[1].denominator)
    a, b = int(w[0] * den), int(w[1] * den)
    g = math.gcd(a, b)
    return a // g, b // g


class PredicateZ2(PayoffFn):
    """Indicator of a decidable subset of the lattice."""

    kind = "predicate-z2"

    def contains(self, p) -> bool:
        raise NotImplementedError

    def __call__(self, p):
        if not (isinstance(p, tuple) and len(p) == 2 and all(_is_int(c) for c in p)):
            raise VariantMismatch(f"predicate on Z2 evaluated at {p!r}")
        return _ONE if self.contains(p) else _ZERO

    def constant_like(self, c):
        return TranslateCombination(((as_fraction(c), None, (0, 0)),))

    def translate(self, t, group=None):
        return TranslateCombination(((_ONE, self, tuple(t)),))

    def __and__(self, other):
        return AndZ2((self, other))

    def __or__(self, other):
        return OrZ2((self, other))

    def __invert__(self):
        return NotZ2(self)


@dataclass(frozen=True)
class ConeZ2(PredicateZ2):
    """Open sector swept counterclockwise from direction ``u`` to direction ``v``.

    The origin is never a member. If ``u`` and ``v`` point the same way the
    sector is the whole plane minus that closed ray.
    """

    u: tuple
    v: tuple

    kind = "cone-z2"

    def __post_init__(self):
        u = tuple(as_fraction(c) for c in self.u)
        v = tuple(as_fraction(c) for c in self.v)
        if len(u) != 2 or len(v) != 2 or u == (0, 0) or v == (0, 0):
            raise GroupGameError("cone directions must be non-zero 2-vectors")
        # positive rescaling leaves the sector unchanged; integers keep membership tests cheap
        u, v = _primitive(u), _primitive(v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def opening(self) -> str:
        """``"convex"`` (angle < pi), ``"half-plane"`` or ``"reflex"`` (angle > pi)."""
        cr = _cross(self.u, self.v)
        if cr > 0:
            return "convex"
        if cr < 0:
            return "reflex"
        dot = self.u[0] * self.v[0] + self.u[1] * self.v[1]
        return "half-plane" if dot < 0 else "reflex"

    def contains(self, p):
        if p == (0, 0):
            return False
        kind = self.opening
        if kind == "convex":
            return _cross(self.u, p) > 0 and _cross(p, self.v) > 0
        if kind == "half-plane":
            return _cross(self.u, p) > 0
        # complement of the closed convex sector from v to u
        if _cross(self.v, self.u) == 0:  # u, v parallel: plane minus one closed ray
            return not (_cross(self.u, p) == 0 and self.u[0] * p[0] + self.u[1] * p[1] > 0)
        return not (_cross(self.v, p) >= 0 and _cross(p, self.u) >= 0)


@dataclass(frozen=True)
class PeriodicZ2(PredicateZ2):
    """``table[x % m1][y % m2]`` decides membership."""

    periods: tuple
    table: tuple

    kind = "periodic-z2"

    def __post_init__(self):
        m1, m2 = (int(p) for p in self.periods)
        if m1 < 1 or m2 < 1:
            raise GroupGameError("periods must be >= 1")
        table = tuple(tuple(bool(b) for b in row) for row in self.table)
        if len(table) != m1 or any(len(row) != m2 for row in table):
            raise GroupGameError(f"membership table must be {m1} x {m2}")
        object.__setattr__(self, "periods", (m1, m2))
        object.__setattr__(self, "table", table)

    def contains(self, p):
        return self.table[p[0] % self.periods[0]][p[1] % self.periods[1]]


@dataclass(frozen=True)
class FiniteSetZ2(PredicateZ2):
    members: frozenset

    kind = "finite-z2"

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(tuple(int(c) for c in p) for p in self.members))

    def contains(self, p):
        return p in self.members


@dataclass(frozen=True)
class NotZ2(PredicateZ2):
    inner: PredicateZ2

    kind = "not-z2"

    def contains(self, p):
        return not self.inner.contains(p)


@dataclass(frozen=True)
class AndZ2(PredicateZ2):
    parts: tuple

    kind = "and-z2"

    def contains(self, p):
        return all(q.contains(p) for q in self.parts)


@dataclass(frozen=True)
class OrZ2(PredicateZ2):
    parts: tuple

    kind = "or-z2"

    def contains(self, p):
        return any(q.contains(p) for q in self.parts)


@dataclass(frozen=True)
class TranslateCombination(PayoffFn):
    """``w -> sum(coef * fn(w + shift))`` on Z^2; ``fn=None`` stands for the constant 1."""

    terms: tuple

    kind = "translate-z2"

    def __call__(self, p):
        total = _ZERO
        for coef, fn, shift in self.terms:
            if fn is None:
                total += coef
            else:
                total += coef * fn((p[0] + shift[0], p[1] + shift[1]))
        return total

    def is_constant(self):
        return all(fn is None for _, fn, _ in self.terms)

    def constant_like(self, c):
        return TranslateCombination(((as_fraction(c), None, (0, 0)),))

    def translate(self, t, group=None):
        t = tuple(t)
        return TranslateCombination(
            tuple((coef, fn, (s[0] + t[0], s[1] + t[1])) for coef, fn, s in self.terms)
        )


# --- linear combinations ----------------------------------------------------


def linear_combination(terms: Iterable) -> PayoffFn:
    """Exact ``sum(c_k * f_k)`` for functions of one class."""
    terms = [(as_fraction(c), f) for c, f in terms]
    if not terms:
        raise GroupGameError("empty linear combination")
    kinds = {_family(f) for _, f in terms}
    if len(kinds) != 1:
        raise VariantMismatch(f"cannot combine functions of different classes: {sorted(kinds)}")
    family = kinds.pop()
    if family == "table":
        n = {len(f.values) for _, f in terms}
        if len(n) != 1:
            raise VariantMismatch("table functions of different lengths")
        size = n.pop()
        return FiniteTableFn(tuple(sum((c * f.values[x] for c, f in terms), _ZERO) for x in range(size)))
    if family == "ep-z":
        period = 1
        for _, f in terms:
            period = period * f.period // math.gcd(period, f.period)
        radius = max(f.radius for _, f in terms)
        return EventuallyPeriodicZ.from_callable(
            lambda x: sum((c * f(x) for c, f in terms), _ZERO), period, radius
        )
    if family == "step-q1":
        cuts = set()
        pts = set()
        for _, f in terms:
            cuts.update(f.breakpoints)
            pts.update(x for x, _ in f.points)
        bps = sorted(cuts)
        pieces = []
        for a, b in zip(bps, bps[1:]):
            mid = (a + b) / 2
            slope = icpt = _ZERO
            for c, f in terms:
                s, i = f.pieces[f._piece_index(mid)]
                slope += c * s
                icpt += c * i
            pieces.append((slope, icpt))
        pts.update(bps[:-1])
        values = {x: sum((c * f(x) for c, f in terms), _ZERO) for x in pts}
        return StepQ1(tuple(bps), tuple(pieces), tuple(values.items())).canonical()
    # Z^2: flatten into one TranslateCombination
    out = []
    for c, f in terms:
        if isinstance(f, TranslateCombination):
            out.extend((c * coef, g, s) for coef, g, s in f.terms)
        else:
            out.append((c, f, (0, 0)))
    return TranslateCombination(tuple(out))


def _family(f: PayoffFn) -> str:
    if isinstance(f, (PredicateZ2, TranslateCombination)):
        return "z2"
    if isinstance(f, (FiniteTableFn, EventuallyPeriodicZ, StepQ1)):
        return f.kind
    raise UnsupportedClass(f"unknown payoff class {type(f).__name__}")


# --- module-level operations ------------------------------------------------


def eval_fn(phi: PayoffFn, x) -> Fraction:
    return phi(x)


def eventual_averages(phi: EventuallyPeriodicZ) -> tuple:
    """``(A_minus, A_plus)``, the average of the left and right periodic tails."""
    if not isinstance(phi, EventuallyPeriodicZ):
        raise UnsupportedClass("eventual averages are defined for eventually periodic functions on Z")
    return phi.averages()


def argsup_fn(phi: PayoffFn) -> tuple:
    """``(sup, witness)``; ``witness`` is ``None`` when the supremum is not attained."""
    if isinstance(phi, FiniteTableFn):
        best = max(phi.values)
        return best, phi.values.index(best)
    if isinstance(phi, EventuallyPeriodicZ):
        cands = [(v, x) for x, v in phi.core]
        cands += [(v, _tail_point(r, phi.period, phi.radius, +1)) for r, v in enumerate(phi.right)]
        cands += [(v, _tail_point(r, phi.period, phi.radius, -1)) for r, v in enumerate(phi.left)]
        best = max(v for v, _ in cands)
        return best, next(x for v, x in cands if v == best)
    if isinstance(phi, StepQ1):
        cands = phi.sup_candidates()
        best = max(v for v, _ in cands)
        attained = [x for v, x in cands if v == best and x is not None]
        return best, (min(attained) if attained else None)
    raise UnsupportedClass(
        f"no exact supremum for {type(phi).__name__}; use the Folner-window bounds instead"
    )


def sup_fn(phi: PayoffFn) -> Fraction:
    return argsup_fn(phi)[0]


def inf_fn(phi: PayoffFn) -> Fraction:
    return -sup_fn(-phi)


def lebesgue_q1(phi: StepQ1) -> Fraction:
    """Integral against Lebesgue measure; point overrides contribute nothing."""
    if not isinstance(phi, StepQ1):
        raise UnsupportedClass("the Lebesgue integral is defined here for StepQ1 functions")
    return phi.integral()


def precompose_affine(phi: PayoffFn, eta: Bijection) -> PayoffFn:
    """The function ``w -> phi(eta(w))``, in the same class as ``phi``."""
    if isinstance(eta, Identity):
        return phi
    if isinstance(phi, EventuallyPeriodicZ) and isinstance(eta, AffineZ):
        return phi.precompose(eta)
    if isinstance(phi, StepQ1) and isinstance(eta, AffineQ1):
        return phi.precompose(eta)
    if isinstance(phi, FiniteTableFn) and isinstance(eta, FinitePermutation):
        if len(eta.perm) != len(phi.values):
            raise VariantMismatch("permutation size differs from table length")
        return FiniteTableFn(tuple(phi.values[eta.perm[w]] for w in range(len(phi.values))))
    raise VariantMismatch(f"cannot precompose {type(phi).__name__} with {type(eta).__name__}")

