from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import strategies as S
from groupgames import (
    AffineQ1,
    AffineZ,
    EventuallyPeriodicZ,
    FiniteCyclic,
    FinitePermutation,
    FiniteSupportMeasure,
    FiniteTableFn,
    IntegersZ,
    IntervalMeanQ1,
    RationalCircleQ1,
    TwoEndedMeanZ,
    UniformFinite,
    VariantMismatch,
    dirac,
    integrate,
    pushforward,
    validate_measure,
)
from groupgames.exceptions import GroupGameError
from groupgames.measures import Mixture, atoms, mix, uniform_on


def test_validate_examples():
    validate_measure(FiniteSupportMeasure(((0, F(1, 2)), (1, F(1, 2)))), IntegersZ())
    with pytest.raises(GroupGameError, match="5/6"):
        FiniteSupportMeasure(((0, F(1, 2)), (1, F(1, 3))))
    with pytest.raises(VariantMismatch):
        validate_measure(TwoEndedMeanZ(F(1)), RationalCircleQ1())
    with pytest.raises(VariantMismatch):
        validate_measure(IntervalMeanQ1(), IntegersZ())
    with pytest.raises(VariantMismatch):
        validate_measure(UniformFinite(), IntegersZ())
    with pytest.raises(GroupGameError):
        FiniteSupportMeasure(((0, F(3, 2)), (1, F(-1, 2))))
    with pytest.raises(GroupGameError):
        TwoEndedMeanZ(F(4, 3))


def test_zero_weights_dropped_and_merged():
    m = FiniteSupportMeasure(((1, F(1, 2)), (2, 0), (1, F(1, 2))))
    assert m == dirac(1)


def test_pushforward_examples():
    assert pushforward(TwoEndedMeanZ(F(1)), AffineZ(-1, 0)) == TwoEndedMeanZ(F(0))
    assert pushforward(dirac(5), AffineZ(1, 3)) == dirac(2)
    assert pushforward(IntervalMeanQ1(), AffineQ1(-1, F(0))) == IntervalMeanQ1()
    assert pushforward(UniformFinite(), FinitePermutation((1, 2, 0))) == UniformFinite()


def test_pushforward_direct_set_evaluation():
    # rho({2}) = lambda(eta({2})) = lambda({5})
    eta = AffineZ(1, 3)
    rho = pushforward(dirac(5), eta)
    assert rho.weight_map.get(2, 0) == dirac(5).weight_map.get(eta(2), 0) == 1


def test_mixture_integrates_linearly():
    phi = EventuallyPeriodicZ(1, (1,), (0,), ((0, 0),), 0)
    m = mix(F(1, 3), dirac(-4), TwoEndedMeanZ(F(1)))
    assert integrate(phi, m) == F(2, 3)
    assert [w for w, _ in atoms(Mixture(F(1, 2), m, dirac(3)))] == [F(2, 3), F(1, 3)]


def test_uniform_on_window():
    u = uniform_on(range(4))
    assert u.weight_map == {x: F(1, 4) for x in range(4)}


@given(mu=S.z_measure(), eta=S.affine_z)
def test_pushforward_round_trip(mu, eta):
    assert pushforward(pushforward(mu, eta), eta.inverse()) == mu


@given(mu=S.finite_measure(S.unit_q), eta=S.affine_q1)
def test_pushforward_round_trip_q1(mu, eta):
    assert pushforward(pushforward(mu, eta), eta.inverse()) == mu


@given(values=st.lists(S.small_q, min_size=6, max_size=6), t=st.integers(0, 5))
def test_uniform_is_invariant(values, t):
    g = FiniteCyclic(6)
    phi = FiniteTableFn(tuple(values))
    assert integrate(phi.translate(t, g), UniformFinite(), g) == integrate(phi, UniformFinite(), g)


@given(values=st.lists(S.small_q, min_size=6, max_size=6), t=st.integers(0, 5))
def test_uniform_is_invariant_non_abelian(values, t):
    g = S.s3()
    phi = FiniteTableFn(tuple(values))
    assert integrate(phi.translate(t, g), UniformFinite(), g) == integrate(phi, UniformFinite(), g)
