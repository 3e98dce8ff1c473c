"""Exact finitely additive equilibria of group games."""

from .equilibrium import (
    GapReport,
    IRange,
    best_response_gap,
    construct_equilibrium,
    deviation_value,
    i_range,
    verify_equilibrium,
    z_structure_check,
)
from .estimator import GroupGameSolver
from .exceptions import DocumentError, GroupGameError, UnsupportedClass, VariantMismatch
from .functions import (
    ConeZ2,
    EventuallyPeriodicZ,
    FiniteTableFn,
    PeriodicZ2,
    StepQ1,
    eval_fn,
    eventual_averages,
    indicator_q1,
    indicator_z,
    lebesgue_q1,
    precompose_affine,
    sup_fn,
)
from .games import GameSpec, OrderWeights
from .groups import (
    AffineQ1,
    AffineZ,
    DirectProduct,
    FiniteCyclic,
    FinitePermutation,
    FiniteTable,
    Identity,
    IntegersZ,
    LatticeZ2,
    RationalCircleQ1,
    bijection_apply,
    group_eval,
)
from .integration import fubini_gap, integrate, iterated_payoff, partial_integrate, payoff_nu
from .measures import (
    FiniteSupportMeasure,
    IntervalMeanQ1,
    Mixture,
    TwoEndedMeanZ,
    UniformFinite,
    dirac,
    pushforward,
    validate_measure,
)
from .validation import check_game, check_nu, check_profile

__version__ = "0.1.0"

__all__ = [
    "AffineQ1",
    "AffineZ",
    "ConeZ2",
    "DirectProduct",
    "DocumentError",
    "EventuallyPeriodicZ",
    "FiniteCyclic",
    "FinitePermutation",
    "FiniteSupportMeasure",
    "FiniteTable",
    "FiniteTableFn",
    "GameSpec",
    "GapReport",
    "GroupGameError",
    "GroupGameSolver",
    "IRange",
    "Identity",
    "IntegersZ",
    "IntervalMeanQ1",
    "LatticeZ2",
    "Mixture",
    "OrderWeights",
    "PeriodicZ2",
    "RationalCircleQ1",
    "StepQ1",
    "TwoEndedMeanZ",
    "UniformFinite",
    "UnsupportedClass",
    "VariantMismatch",
    "best_response_gap",
    "bijection_apply",
    "check_game",
    "check_nu",
    "check_profile",
    "construct_equilibrium",
    "deviation_value",
    "dirac",
    "eval_fn",
    "eventual_averages",
    "fubini_gap",
    "group_eval",
    "i_range",
    "indicator_q1",
    "indicator_z",
    "integrate",
    "iterated_payoff",
    "lebesgue_q1",
    "partial_integrate",
    "payoff_nu",
    "precompose_affine",
    "pushforward",
    "sup_fn",
    "validate_measure",
    "verify_equilibrium",
    "z_structure_check",
]
