"""Exact finitely additive integration of group-game payoffs.

Conventions
-----------
An order ``pi`` lists players from the innermost integral outwards:
``pi[0]`` is integrated first. Player ``i``'s payoff is
``phi_i(sum_j eta_j(x_j))`` over ``j`` in its neighborhood, so after
integrating some players out what remains is again a function of the sum of
the remaining transformed strategies. Integrating out a finitely supported
measure convolves that function; integrating out an invariant mean collapses
it to a constant.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exceptions import GroupGameError, UnsupportedClass, VariantMismatch
from .functions import (
    EventuallyPeriodicZ,
    FiniteTableFn,
    PayoffFn,
    StepQ1,
    linear_combination,
    precompose_affine,
)
from .games import GameSpec, OrderWeights
from .groups import Bijection, Group, Identity
from .measures import (
    FiniteSupportMeasure,
    IntervalMeanQ1,
    Measure,
    Mixture,
    TwoEndedMeanZ,
    UniformFinite,
    atoms,
    is_symbolic,
)

__all__ = [
    "integrate",
    "partial_integrate",
    "iterated_payoff",
    "payoff_terms",
    "payoff_nu",
    "fubini_gap",
    "pure_response",
    "finite_expectation",
]

_ZERO = Fraction(0)


def integrate(phi: PayoffFn, mu: Measure, group: Optional[Group] = None) -> Fraction:
    """``int phi dmu`` exactly."""
    if isinstance(mu, Mixture):
        return mu.weight * integrate(phi, mu.first, group) + (1 - mu.weight) * integrate(phi, mu.second, group)
    if isinstance(mu, FiniteSupportMeasure):
        return sum((w * phi(x) for x, w in mu.weights), _ZERO)
    if isinstance(mu, TwoEndedMeanZ):
        if not isinstance(phi, EventuallyPeriodicZ):
            raise VariantMismatch(
                f"two-ended means integrate only eventually periodic functions, not {type(phi).__name__}"
            )
        a_minus, a_plus = phi.averages()
        return mu.theta * a_plus + (1 - mu.theta) * a_minus
    if isinstance(mu, IntervalMeanQ1):
        if not isinstance(phi, StepQ1):
            raise VariantMismatch(f"the interval mean integrates step functions on Q1, not {type(phi).__name__}")
        return phi.integral()
    if isinstance(mu, UniformFinite):
        if not isinstance(phi, FiniteTableFn):
            raise VariantMismatch(f"uniform measures integrate table functions, not {type(phi).__name__}")
        if group is not None:
            phi.check_group(group)
        return phi.mean()
    raise GroupGameError(f"unknown measure type {type(mu).__name__}")


def _law(mu: Measure, eta: Bijection, group: Group) -> dict:
    """Distribution of ``eta(x)`` for ``x ~ mu``; ``mu`` must be countably additive."""
    out: dict = {}
    for w, m in atoms(mu):
        if isinstance(m, FiniteSupportMeasure):
            pairs = m.weights
        elif isinstance(m, UniformFinite):
            p = Fraction(1, group.order)
            pairs = [(x, p) for x in group.elements()]
        else:
            raise UnsupportedClass(f"{type(m).__name__} has no countably additive law")
        for x, p in pairs:
            y = eta(x)
            out[y] = out.get(y, _ZERO) + w * p
    return out


def _convolve(group: Group, dists: Sequence[dict]) -> dict:
    acc = {group.identity: Fraction(1)}
    for d in dists:
        nxt: dict = {}
        for a, p in acc.items():
            for b, q in d.items():
                c = group.combine(a, b)
                nxt[c] = nxt.get(c, _ZERO) + p * q
        acc = nxt
    return acc


def finite_expectation(game: GameSpec, profile: Sequence[Measure], i: int) -> Fraction:
    """Payoff of player ``i`` when every strategy in its neighborhood is countably additive.

    Plain expectation over the product measure, so every order of integration
    gives this value. Works on non-abelian finite groups (products are taken in
    player order).
    """
    group = game.group
    players = game.neighborhoods[i]
    dist = _convolve(group, [_law(profile[j], game.eta[j], group) for j in players])
    phi = game.phi[i]
    return sum((p * phi(g) for g, p in dist.items()), _ZERO)


def partial_integrate(psi: PayoffFn, mu: Measure, eta: Bijection, group: Optional[Group] = None) -> PayoffFn:
    """Integrate one variable out of ``w -> psi(w + eta(x))``.

    A finitely supported ``mu`` gives the convolution
    ``w -> sum_s mu(s) psi(w + eta(s))`` in the class of ``psi``; an
    invariant mean gives a constant function.
    """
    if group is not None and not group.is_abelian:
        raise UnsupportedClass("partial integration needs an abelian group; use finite_expectation")
    if isinstance(mu, Mixture):
        return linear_combination([(w, partial_integrate(psi, m, eta, group)) for w, m in atoms(mu)])
    if isinstance(mu, FiniteSupportMeasure):
        if isinstance(psi, EventuallyPeriodicZ):
            shifts = [(eta(s), w) for s, w in mu.weights]
            reach = max(abs(t) for t, _ in shifts)
            return EventuallyPeriodicZ.from_callable(
                lambda x: sum((w * psi(x + t) for t, w in shifts), _ZERO), psi.period, psi.radius + reach
            )
        if len(mu.weights) == 1:
            (s, _), = mu.weights
            return psi.translate(eta(s), group)
        return linear_combination([(w, psi.translate(eta(s), group)) for s, w in mu.weights])
    if is_symbolic(mu):
        if isinstance(mu, UniformFinite):
            if not isinstance(psi, FiniteTableFn):
                raise VariantMismatch("uniform measures integrate table functions")
            return psi.constant_like(psi.mean())
        return psi.constant_like(integrate(precompose_affine(psi, eta), mu, group))
    raise GroupGameError(f"unknown measure type {type(mu).__name__}")


def _all_countable(measures) -> bool:
    return all(
        isinstance(m, (FiniteSupportMeasure, UniformFinite)) for mu in measures for _, m in atoms(mu)
    )


def _iterate(psi: PayoffFn, steps: list, group: Group) -> Fraction:
    """Integrate ``psi`` over ``steps = [(mu, eta), ...]`` innermost first and evaluate."""
    if not steps or psi.is_constant():
        return psi(group.identity)
    if _all_countable([mu for mu, _ in steps]):
        # finite Fubini: the remaining integrals are an ordinary expectation
        dist = _convolve(group, [_law(mu, eta, group) for mu, eta in steps])
        return sum((p * psi(g) for g, p in dist.items()), _ZERO)
    (mu, eta), rest = steps[0], steps[1:]
    total = _ZERO
    for w, m in atoms(mu):
        total += w * _iterate(partial_integrate(psi, m, eta, group), rest, group)
    return total


def _integrate_out(psi: PayoffFn, steps: list, group: Group) -> PayoffFn:
    """Like :func:`_iterate` but returns the function of the variables left over."""
    if not steps or psi.is_constant():
        return psi
    (mu, eta), rest = steps[0], steps[1:]
    parts = [(w, _integrate_out(partial_integrate(psi, m, eta, group), rest, group)) for w, m in atoms(mu)]
    if len(parts) == 1 and parts[0][0] == 1:
        return parts[0][1]
    return linear_combination(parts)


def _check_abelian(group: Group):
    if not group.is_finite and not group.is_abelian:
        raise UnsupportedClass(f"{group.tag} is infinite and not declared abelian")


def iterated_payoff(game: GameSpec, profile: Sequence[Measure], order: Sequence[int], i: int) -> Fraction:
    """Player ``i``'s payoff integrating in ``order`` (``order[0]`` innermost).

    Players outside ``i``'s neighborhood integrate a constant and are skipped.
    """
    profile = game.check_profile(profile)
    group = game.group
    _check_abelian(group)
    nbhd = set(game.neighborhoods[i])
    rel = [j for j in order if j in nbhd]
    if sorted(order) != list(range(game.n_players)):
        raise GroupGameError(f"{tuple(order)} is not an order of all players")
    if group.is_finite and (not group.is_abelian or _all_countable([profile[j] for j in rel])):
        return finite_expectation(game, profile, i)
    steps = [(profile[j], game.eta[j]) for j in rel]
    return _iterate(game.phi[i], steps, group)


def _first_symbolic_prefix(order: Sequence[int], profile) -> tuple:
    """The part of ``order`` that can influence the term: up to the first purely symbolic measure."""
    out = []
    for j in order:
        out.append(j)
        if is_symbolic(profile[j]):
            break
    return tuple(out)


def payoff_terms(game: GameSpec, profile: Sequence[Measure], i: int, nu: Optional[OrderWeights] = None) -> list:
    """``[(relative_order, weight, value), ...]`` for player ``i``.

    Orders are marginalised onto ``i``'s neighborhood; terms sharing the
    prefix up to the first invariant mean are computed once.
    """
    profile = game.check_profile(profile)
    nu = nu or game.nu
    nbhd = game.neighborhoods[i]
    cache: dict = {}
    out = []
    for rel, w in sorted(nu.restricted(nbhd).items()):
        key = _first_symbolic_prefix(rel, profile)
        if key not in cache:
            full = list(rel) + [j for j in range(game.n_players) if j not in nbhd]
            cache[key] = iterated_payoff(game, profile, full, i)
        out.append((rel, w, cache[key]))
    return out


def payoff_nu(game: GameSpec, profile: Sequence[Measure], i: int, nu: Optional[OrderWeights] = None) -> Fraction:
    """``sum_pi nu(pi) * iterated_payoff(pi)``."""
    return sum((w * v for _, w, v in payoff_terms(game, profile, i, nu)), _ZERO)


def fubini_gap(
    phi: PayoffFn,
    mu: Measure,
    lam: Measure,
    group: Group,
    eta: tuple = (Identity(), Identity()),
) -> tuple:
    """``(mu innermost, lam innermost)`` for the two-player form ``phi(eta1(x) + eta2(y))``."""
    first = _iterate(phi, [(mu, eta[0]), (lam, eta[1])], group)
    second = _iterate(phi, [(lam, eta[1]), (mu, eta[0])], group)
    return first, second


def pure_response(game: GameSpec, profile: Sequence[Measure], i: int, nu: Optional[OrderWeights] = None) -> PayoffFn:
    """The function ``x -> payoff of player i after switching to the point mass at x``.

    Built per order by integrating out everyone but ``i`` (point masses
    commute with every integral), then re-expressed in ``x`` through
    ``eta_i``. The result lives in the class of ``phi_i``.
    """
    profile = game.check_profile(profile)
    nu = nu or game.nu
    group = game.group
    _check_abelian(group)
    if group.is_finite:
        from .measures import dirac

        values = []
        for x in group.elements():
            trial = list(profile)
            trial[i] = dirac(x)
            values.append(payoff_nu(game, trial, i, nu))
        return FiniteTableFn(tuple(values))
    nbhd = game.neighborhoods[i]
    parts = []
    for rel, w in sorted(nu.restricted(nbhd).items()):
        steps = [(profile[j], game.eta[j]) for j in rel if j != i]
        residual = _integrate_out(game.phi[i], steps, group)
        if not residual.is_constant():
            residual = precompose_affine(residual, game.eta[i])
        parts.append((w, residual))
    return linear_combination(parts)
