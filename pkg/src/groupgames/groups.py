"""Strategy groups, their elements, and the bijections used to re-coordinatize games.

Elements are plain Python values so they can be used as dict keys and sorted:

=====================  ==========================================
group                  element
=====================  ==========================================
``FiniteCyclic(m)``    ``int`` in ``0..m-1``
``FiniteTable``        ``int`` index into the Cayley table
``IntegersZ``          ``int``
``LatticeZ2``          ``tuple[int, int]``
``RationalCircleQ1``   reduced ``Fraction`` in ``[0, 1)``
``DirectProduct``      ``tuple`` of factor elements
=====================  ==========================================
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Optional

from .exceptions import GroupGameError, VariantMismatch

__all__ = [
    "Group",
    "FiniteCyclic",
    "FiniteTable",
    "IntegersZ",
    "LatticeZ2",
    "RationalCircleQ1",
    "DirectProduct",
    "group_eval",
    "Bijection",
    "Identity",
    "AffineZ",
    "AffineQ1",
    "FinitePermutation",
    "bijection_apply",
    "mod1",
]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def mod1(x: Fraction) -> Fraction:
    """Representative of ``x`` modulo 1 in ``[0, 1)``."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


class Group:
    """Common interface of the strategy groups."""

    is_abelian: bool = True
    is_fc: bool = True

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def identity(self):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def check(self, x):
        if not self.contains(x):
            raise VariantMismatch(f"{x!r} is not an element of {self.tag}")
        return x

    def combine(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def fold(self, xs: Iterable):
        """Left-to-right product; the empty product is the identity."""
        return reduce(self.combine, xs, self.identity)

    @property
    def tag(self) -> str:
        raise NotImplementedError

    # finite groups override these
    @property
    def order(self) -> int:
        raise GroupGameError(f"{self.tag} is infinite")

    def elements(self) -> list:
        raise GroupGameError(f"{self.tag} is infinite; cannot enumerate")


@dataclass(frozen=True)
class FiniteCyclic(Group):
    modulus: int

    def __post_init__(self):
        if not _is_int(self.modulus) or self.modulus < 1:
            raise GroupGameError(f"cyclic modulus must be an integer >= 1, got {self.modulus!r}")

    @property
    def tag(self):
        return f"zc {self.modulus}"

    @property
    def is_finite(self):
        return True

    @property
    def order(self):
        return self.modulus

    def elements(self):
        return list(range(self.modulus))

    def index(self, x) -> int:
        return self.check(x)

    @property
    def identity(self):
        return 0

    def contains(self, x):
        return _is_int(x) and 0 <= x < self.modulus

    def combine(self, a, b):
        self.check(a)
        self.check(b)
        return (a + b) % self.modulus

    def inverse(self, a):
        return (-self.check(a)) % self.modulus


@dataclass(frozen=True)
class FiniteTable(Group):
    """A finite group given by its Cayley table ``table[a][b] = a * b``.

    The table is validated at construction: it must be a Latin square with a
    two-sided identity, and the product must be associative. ``is_abelian``
    is declared by the caller and checked against the table.
    """

    table: tuple
    names: Optional[tuple] = None
    is_abelian: bool = False
    is_fc: bool = True
    identity_index: int = field(init=False)
    inverse_table: tuple = field(init=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        k = len(table)
        if k == 0:
            raise GroupGameError("Cayley table must be non-empty")
        full = set(range(k))
        for r, row in enumerate(table):
            if len(row) != k or set(row) != full:
                raise GroupGameError(f"Cayley table row {r} is not a permutation of 0..{k - 1}")
        for c in range(k):
            if {table[r][c] for r in range(k)} != full:
                raise GroupGameError(f"Cayley table column {c} is not a permutation of 0..{k - 1}")
        ident = [e for e in range(k) if all(table[e][x] == x and table[x][e] == x for x in range(k))]
        if not ident:
            raise GroupGameError("Cayley table has no two-sided identity")
        e = ident[0]
        for a, b, c in itertools.product(range(k), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupGameError(f"Cayley table is not associative at ({a}, {b}, {c})")
        inv = tuple(next(b for b in range(k) if table[a][b] == e) for a in range(k))
        if any(table[inv[a]][a] != e for a in range(k)):
            raise GroupGameError("left and right inverses disagree")
        symmetric = all(table[a][b] == table[b][a] for a in range(k) for b in range(k))
        if self.is_abelian and not symmetric:
            raise GroupGameError("table declared abelian but is not commutative")
        if self.is_abelian and not self.is_fc:
            raise GroupGameError("abelian groups are FC; is_fc must be true")
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != k or len(set(names)) != k:
                raise GroupGameError("element names must be distinct, one per table row")
            object.__setattr__(self, "names", names)
        object.__setattr__(self, "identity_index", e)
        object.__setattr__(self, "inverse_table", inv)

    @property
    def tag(self):
        return "table"

    @property
    def is_finite(self):
        return True

    @property
    def order(self):
        return len(self.table)

    def elements(self):
        return list(range(len(self.table)))

    def index(self, x) -> int:
        return self.check(x)

    @property
    def identity(self):
        return self.identity_index

    def contains(self, x):
        return _is_int(x) and 0 <= x < len(self.table)

    def combine(self, a, b):
        return self.table[self.check(a)][self.check(b)]

    def inverse(self, a):
        return self.inverse_table[self.check(a)]

    def element(self, name: str) -> int:
        """Look up an element index by its display name."""
        if self.names is None or name not in self.names:
            raise VariantMismatch(f"unknown element name {name!r}")
        return self.names.index(name)

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)


@dataclass(frozen=True)
class IntegersZ(Group):
    @property
    def tag(self):
        return "Z"

    @property
    def identity(self):
        return 0

    def contains(self, x):
        return _is_int(x)

    def combine(self, a, b):
        return self.check(a) + self.check(b)

    def inverse(self, a):
        return -self.check(a)


@dataclass(frozen=True)
class LatticeZ2(Group):
    @property
    def tag(self):
        return "Z2"

    @property
    def identity(self):
        return (0, 0)

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == 2 and all(_is_int(c) for c in x)

    def combine(self, a, b):
        self.check(a)
        self.check(b)
        return (a[0] + b[0], a[1] + b[1])

    def inverse(self, a):
        self.check(a)
        return (-a[0], -a[1])


@dataclass(frozen=True)
class RationalCircleQ1(Group):
    """The rationals in ``[0, 1)`` under addition modulo 1."""

    @property
    def tag(self):
        return "Q1"

    @property
    def identity(self):
        return Fraction(0)

    def contains(self, x):
        return isinstance(x, Fraction) and 0 <= x < 1

    def combine(self, a, b):
        return mod1(self.check(a) + self.check(b))

    def inverse(self, a):
        return mod1(-self.check(a))


@dataclass(frozen=True)
class DirectProduct(Group):
    factors: tuple
    is_abelian: bool = field(init=False)
    is_fc: bool = field(init=False)

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise GroupGameError("a direct product needs at least one factor")
        if not all(isinstance(f, Group) for f in factors):
            raise GroupGameError("direct product factors must be groups")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "is_abelian", all(f.is_abelian for f in factors))
        object.__setattr__(self, "is_fc", all(f.is_fc for f in factors))

    @property
    def tag(self):
        return "product"

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    @property
    def order(self):
        n = 1
        for f in self.factors:
            n *= f.order
        return n

    def elements(self):
        return list(itertools.product(*(f.elements() for f in self.factors)))

    @property
    def identity(self):
        return tuple(f.identity for f in self.factors)

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(f.contains(c) for f, c in zip(self.factors, x))
        )

    def combine(self, a, b):
        self.check(a)
        self.check(b)
        return tuple(f.combine(x, y) for f, x, y in zip(self.factors, a, b))

    def inverse(self, a):
        self.check(a)
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))


_OPS = {"combine", "inverse", "identity", "fold"}


def group_eval(group: Group, op: str, *args) -> Any:
    """Evaluate ``combine(a, b)``, ``inverse(a)``, ``identity`` or ``fold(xs)`` in ``group``."""
    if op not in _OPS:
        raise GroupGameError(f"unknown group operation {op!r}")
    if op == "combine":
        a, b = args
        return group.combine(a, b)
    if op == "inverse":
        (a,) = args
        return group.inverse(a)
    if op == "identity":
        if args:
            raise GroupGameError("identity takes no arguments")
        return group.identity
    (xs,) = args
    return group.fold(xs)


# --- bijections -------------------------------------------------------------


class Bijection:
    def __call__(self, x):
        raise NotImplementedError

    def inverse(self) -> "Bijection":
        raise NotImplementedError

    def compatible(self, group: Group) -> bool:
        raise NotImplementedError

    @property
    def sign(self) -> int:
        """Orientation for the affine families; +1 elsewhere."""
        return 1


@dataclass(frozen=True)
class Identity(Bijection):
    def __call__(self, x):
        return x

    def inverse(self):
        return self

    def compatible(self, group):
        return True


def _check_sign(s):
    if s not in (1, -1) or isinstance(s, bool):
        raise GroupGameError(f"affine sign must be +1 or -1, got {s!r}")


@dataclass(frozen=True)
class AffineZ(Bijection):
    """``x -> s*x + c`` on the integers."""

    s: int = 1
    c: int = 0

    def __post_init__(self):
        _check_sign(self.s)
        if not _is_int(self.c):
            raise GroupGameError(f"AffineZ shift must be an integer, got {self.c!r}")

    @property
    def sign(self):
        return self.s

    def __call__(self, x):
        if not _is_int(x):
            raise VariantMismatch(f"AffineZ applied to non-integer {x!r}")
        return self.s * x + self.c

    def inverse(self):
        return AffineZ(self.s, -self.s * self.c)

    def compatible(self, group):
        return isinstance(group, IntegersZ)


@dataclass(frozen=True)
class AffineQ1(Bijection):
    """``x -> s*x + c (mod 1)`` on the rationals in ``[0, 1)``."""

    s: int = 1
    c: Fraction = Fraction(0)

    def __post_init__(self):
        _check_sign(self.s)
        c = Fraction(self.c)
        if not 0 <= c < 1:
            raise GroupGameError(f"AffineQ1 shift must lie in [0, 1), got {c}")
        object.__setattr__(self, "c", c)

    @property
    def sign(self):
        return self.s

    def __call__(self, x):
        if not (isinstance(x, Fraction) and 0 <= x < 1):
            raise VariantMismatch(f"AffineQ1 applied to non-Q1 element {x!r}")
        return mod1(self.s * x + self.c)

    def inverse(self):
        return AffineQ1(self.s, mod1(-self.s * self.c))

    def compatible(self, group):
        return isinstance(group, RationalCircleQ1)


@dataclass(frozen=True)
class FinitePermutation(Bijection):
    """An arbitrary bijection of a finite group's element indices."""

    perm: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise GroupGameError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        object.__setattr__(self, "perm", perm)

    def __call__(self, x):
        if not (_is_int(x) and 0 <= x < len(self.perm)):
            raise VariantMismatch(f"permutation of size {len(self.perm)} applied to {x!r}")
        return self.perm[x]

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return FinitePermutation(tuple(inv))

    def compatible(self, group):
        return isinstance(group, (FiniteCyclic, FiniteTable)) and group.order == len(self.perm)

    @classmethod
    def group_inverse(cls, group: Group) -> "FinitePermutation":
        """The inversion map ``x -> x^-1`` of a finite group."""
        return cls(tuple(group.inverse(x) for x in group.elements()))


def bijection_apply(eta: Bijection, x, group: Optional[Group] = None):
    if group is not None:
        if not eta.compatible(group):
            raise VariantMismatch(f"{eta!r} does not act on {group.tag}")
        group.check(x)
    return eta(x)

