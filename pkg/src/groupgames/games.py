"""Game and order-weight containers shared by the integration and equilibrium layers.

Players are 0-based here; documents and reports number them from 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .exceptions import GroupGameError, VariantMismatch
from .functions import (
    EventuallyPeriodicZ,
    FiniteTableFn,
    PayoffFn,
    PredicateZ2,
    StepQ1,
    TranslateCombination,
)
from .groups import Bijection, Group, Identity, IntegersZ, LatticeZ2, RationalCircleQ1
from .measures import Measure, validate_measure
from .rationals import as_fraction

__all__ = ["OrderWeights", "GameSpec", "check_function_group"]


@dataclass(frozen=True)
class OrderWeights:
    """A probability distribution over orders of integration.

    ``weights`` maps a permutation ``pi`` (tuple of 0-based players, ``pi[0]``
    integrated innermost) to its weight. Zero-weight orders are dropped.
    """

    n_players: int
    weights: tuple

    def __post_init__(self):
        n = self.n_players
        items = self.weights.items() if isinstance(self.weights, dict) else self.weights
        acc: dict = {}
        for perm, w in items:
            perm = tuple(int(p) for p in perm)
            if sorted(perm) != list(range(n)):
                raise GroupGameError(f"{perm} is not an order of players 0..{n - 1}")
            w = as_fraction(w)
            if w < 0:
                raise GroupGameError(f"negative order weight {w}")
            if w:
                acc[perm] = acc.get(perm, Fraction(0)) + w
        total = sum(acc.values(), Fraction(0))
        if total != 1:
            raise GroupGameError(f"order weights sum to {total}, not 1")
        object.__setattr__(self, "weights", tuple(sorted(acc.items())))

    @classmethod
    def uniform(cls, n: int) -> "OrderWeights":
        w = Fraction(1, math.factorial(n))
        return cls(n, tuple((p, w) for p in itertools.permutations(range(n))))

    @classmethod
    def single(cls, order: Sequence[int]) -> "OrderWeights":
        order = tuple(order)
        return cls(len(order), ((order, 1),))

    def items(self):
        return iter(self.weights)

    def flipped(self) -> "OrderWeights":
        """Same weights with every order reversed (outermost becomes innermost)."""
        return OrderWeights(self.n_players, tuple((p[::-1], w) for p, w in self.weights))

    def weight_where_first(self, player: int, among: Optional[Sequence[int]] = None) -> Fraction:
        """Total weight of orders in which ``player`` comes first among ``among``."""
        among = set(range(self.n_players)) if among is None else set(among)
        total = Fraction(0)
        for perm, w in self.weights:
            first = next(p for p in perm if p in among)
            if first == player:
                total += w
        return total

    def restricted(self, subset: Sequence[int]) -> dict:
        """Marginal weights of the relative orders on ``subset``."""
        keep = set(subset)
        out: dict = {}
        for perm, w in self.weights:
            key = tuple(p for p in perm if p in keep)
            out[key] = out.get(key, Fraction(0)) + w
        return out


_FN_GROUPS = {
    EventuallyPeriodicZ: (IntegersZ,),
    StepQ1: (RationalCircleQ1,),
    PredicateZ2: (LatticeZ2,),
    TranslateCombination: (LatticeZ2,),
}


def check_function_group(phi: PayoffFn, group: Group) -> None:
    if isinstance(phi, FiniteTableFn):
        phi.check_group(group)
        return
    for cls, groups in _FN_GROUPS.items():
        if isinstance(phi, cls):
            if not isinstance(group, groups):
                raise VariantMismatch(f"{type(phi).__name__} does not live on {group.tag}")
            return
    raise VariantMismatch(f"unsupported payoff function {type(phi).__name__}")


@dataclass(frozen=True)
class GameSpec:
    """Player ``i`` receives ``phi[i]`` of the group product of ``eta[j](x_j)`` over ``j`` in ``neighborhoods[i]``.

    Products are taken in increasing player order, which matters only for
    non-abelian finite groups.
    """

    group: Group
    phi: tuple
    eta: tuple = ()
    neighborhoods: tuple = ()
    nu: Optional[OrderWeights] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        phi = tuple(self.phi)
        n = len(phi)
        if n < 2:
            raise GroupGameError("a game needs at least two players")
        eta = tuple(self.eta) if self.eta else (Identity(),) * n
        if len(eta) != n:
            raise GroupGameError(f"{n} players need {n} bijections, got {len(eta)}")
        nbhd = (
            tuple(tuple(sorted(set(int(j) for j in p))) for p in self.neighborhoods)
            if self.neighborhoods
            else (tuple(range(n)),) * n
        )
        if len(nbhd) != n:
            raise GroupGameError(f"{n} players need {n} neighborhoods, got {len(nbhd)}")
        for i, p in enumerate(nbhd):
            if i not in p:
                raise GroupGameError(f"player {i + 1} must belong to its own neighborhood")
            if len(p) < 2:
                raise GroupGameError(f"neighborhood of player {i + 1} needs at least two players")
            if any(not 0 <= j < n for j in p):
                raise GroupGameError(f"neighborhood of player {i + 1} names an unknown player")
        for i, f in enumerate(phi):
            check_function_group(f, self.group)
        for j, e in enumerate(eta):
            if not isinstance(e, Bijection) or not e.compatible(self.group):
                raise VariantMismatch(f"bijection of player {j + 1} does not act on {self.group.tag}")
        nu = self.nu if self.nu is not None else OrderWeights.uniform(n)
        if nu.n_players != n:
            raise GroupGameError(f"order weights are for {nu.n_players} players, game has {n}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "neighborhoods", nbhd)
        object.__setattr__(self, "nu", nu)

    @property
    def n_players(self) -> int:
        return len(self.phi)

    def with_nu(self, nu: OrderWeights) -> "GameSpec":
        return replace(self, nu=nu)

    def check_profile(self, profile: Sequence[Measure]) -> tuple:
        profile = tuple(profile)
        if len(profile) != self.n_players:
            raise GroupGameError(f"profile has {len(profile)} strategies for {self.n_players} players")
        for m in profile:
            if not isinstance(m, Measure):
                raise GroupGameError(f"profile entry {m!r} is not a measure")
            validate_measure(m, self.group)
        return profile
