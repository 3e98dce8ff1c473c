from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import frozen
import oracles
import strategies as S
from groupgames import ConeZ2, FiniteCyclic, GroupGameError, IntegersZ, VariantMismatch, indicator_q1
from groupgames.foelner import (
    FiniteWhole,
    ProductWindow,
    Q1Factorial,
    Z2ConeWindow,
    Z2Square,
    ZLeft,
    ZRight,
    ZSymmetric,
    build_window,
    density_sweep,
    invariance_defect,
    max_workers,
    sweep_csv,
    upper_banach_density,
)
from groupgames.functions import indicator_z

EVENS = indicator_z(lambda x: x % 2 == 0, 2, 0)
NATURALS = indicator_z(lambda x: x >= 0, 1, 0)
EMPTY = indicator_z(lambda x: False, 1, 0)


def test_window_sizes():
    assert build_window(None, ZSymmetric(2)).elements == (-2, -1, 0, 1, 2)
    assert build_window(None, ZRight(3)).size == 4
    assert build_window(None, ZLeft(3)).elements == (-3, -2, -1, 0)
    w = build_window(None, Q1Factorial(3))
    assert w.size == 6 and F(5, 6) in w.elements
    assert build_window(None, Z2ConeWindow(3, ConeZ2((1, 0), (0, 1)))).size == 9
    assert build_window(None, Z2Square(1)).size == 9
    assert build_window(None, FiniteWhole(FiniteCyclic(5))).size == 5
    prod = build_window(None, ProductWindow((FiniteWhole(FiniteCyclic(2)), ZSymmetric(1))))
    assert prod.size == 6


def test_window_measure_is_uniform():
    w = build_window(None, ZSymmetric(4))
    assert sum(wt for _, wt in w.measure.weights) == 1
    assert {wt for _, wt in w.measure.weights} == {F(1, 9)}


def test_offset_and_errors():
    assert build_window(None, ZSymmetric(1), offset=10).elements == (9, 10, 11)
    with pytest.raises(VariantMismatch):
        build_window(IntegersZ(), Q1Factorial(2))
    with pytest.raises(GroupGameError):
        ZSymmetric(-1)
    with pytest.raises(GroupGameError):
        Q1Factorial(0)
    with pytest.raises(GroupGameError):
        build_window(None, Z2ConeWindow(0, ConeZ2((1, 0), (0, 1))))


def test_defect_examples():
    assert invariance_defect(build_window(None, ZSymmetric(10)), 1) == frozen.Z_SYMMETRIC_10_DEFECT_1
    assert invariance_defect(build_window(None, Q1Factorial(4)), F(1, 8)) == 0
    assert invariance_defect(build_window(None, Q1Factorial(2)), F(1, 3)) == 2
    assert invariance_defect([0, 1, 2], 1, IntegersZ()) == F(2, 3)
    with pytest.raises(GroupGameError):
        invariance_defect([0, 1], 1)
    cone = ConeZ2((1, 0), (0, 1))
    assert invariance_defect(build_window(None, Z2ConeWindow(200, cone)), (1, 1)) == frozen.QUADRANT_DEFECT_200


@given(n=st.integers(0, 60), g=st.integers(-30, 30))
def test_symmetric_defect_bound(n, g):
    d = invariance_defect(build_window(None, ZSymmetric(n)), g)
    assert d == oracles.symmetric_difference_ratio(range(-n, n + 1), lambda x: x + g)
    assert d <= F(2 * abs(g), 2 * n + 1)


@given(g=st.integers(-5, 5))
def test_symmetric_defect_monotone(g):
    vals = [invariance_defect(build_window(None, ZSymmetric(n)), g) for n in range(0, 40)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


@given(g=S.small_q, n=st.integers(1, 5))
def test_factorial_window_is_subgroup_for_its_elements(g, n):
    w = build_window(None, Q1Factorial(n))
    shift = g - (g.numerator // g.denominator)
    if (shift * w.size).denominator == 1:
        assert invariance_defect(w, shift) == 0


def test_density_of_even_integers():
    rows = density_sweep(EVENS, [ZSymmetric(n) for n in range(1, 30)])
    for r in rows:
        assert r.value == oracles.window_mean(EVENS, range(-r.n, r.n + 1))
        expected = F(r.n + 1, 2 * r.n + 1) if r.n % 2 == 0 else F(r.n, 2 * r.n + 1)
        assert r.value == expected
    assert rows[-1].window_size == 59


def test_density_sweep_q1_and_cones():
    rows = density_sweep(indicator_q1(F(0), F(1, 2), (True, False)), [Q1Factorial(n) for n in range(2, 7)])
    assert all(r.value == F(1, 2) for r in rows)
    cone = ConeZ2((1, 0), (0, 1))
    assert all(r.value == 1 for r in density_sweep(cone, [Z2ConeWindow(n, cone) for n in (1, 5, 9)]))


def test_sweep_csv_columns():
    text = sweep_csv(density_sweep(EVENS, [ZSymmetric(1), ZSymmetric(2)]))
    lines = text.splitlines()
    assert lines[0] == "n,window_size,value_num,value_den,value_decimal"
    assert lines[1] == "1,3,1,3,0.333333333333"
    assert lines[2].startswith("2,5,3,5,")


def test_max_workers_env(monkeypatch):
    monkeypatch.delenv("GROUPGAMES_MAX_WORKERS", raising=False)
    assert max_workers() == 1
    monkeypatch.setenv("GROUPGAMES_MAX_WORKERS", "4")
    assert max_workers() == 4
    serial = [ZSymmetric(n) for n in range(1, 12)]
    assert density_sweep(EVENS, serial) == [r for r in density_sweep(EVENS, serial)]
    monkeypatch.setenv("GROUPGAMES_MAX_WORKERS", "lots")
    with pytest.raises(GroupGameError):
        max_workers()


def test_upper_banach_density_examples():
    assert upper_banach_density(NATURALS, 20) == 1
    assert upper_banach_density(EVENS, 20) == F(21, 41)
    assert upper_banach_density(EMPTY, 20) == 0
    assert upper_banach_density(ConeZ2((1, 0), (0, 1)), 3, translate_range=6) == 1
    assert upper_banach_density(indicator_q1(F(0), F(1, 4)), 3) >= F(1, 4)


def test_upper_banach_density_of_evens_tends_to_half():
    assert abs(upper_banach_density(EVENS, 5000) - F(1, 2)) < F(1, 10000)
