"""Frozen expected values for the worked examples.

Values are exact. Each was either read off the example text, derived by
hand, or produced by an oracle in ``oracles.py`` before the engine existed.
"""

from fractions import Fraction as F

# finite matching pennies: player 1 gets -1 on a match
MP_FINITE_PHI1 = (F(-1), F(1))
MP_FINITE_VALUE = (F(0), F(0))

# finite rock-scissors-paper: R=0, P=1, S=2
RSP_PHI1 = (F(1, 2), F(0), F(1))
RSP_U1 = F(1, 2)
RSP_TABLE = {("R", "R"): "R", ("P", "S"): "R", ("S", "P"): "R", ("R", "P"): "P", ("P", "R"): "P", ("S", "S"): "P"}

# Wald's game
WALD_AVERAGES = (F(0), F(1))
WALD_CONSTRUCTED_THETA = (F(1), F(1))
WALD_PAYOFFS_UNIFORM = (F(1, 2), F(1, 2))
WALD_STATED_THETA = (F(1), F(0))
FUBINI_ONE_N = (F(0), F(1))

# countable rock-scissors-paper, alpha=1/3, beta=2/3
RSP_Q1_U1 = (1 - F(2, 3)) + (F(2, 3) - F(1, 3)) / 2

# love and hate, four players
LOVE_HATE_PAYOFFS = (F(1, 4), F(-1, 4), F(1, 4), F(-1, 4))
CIRCLE_DISTANCE_INTEGRAL = F(1, 4)

# Folner windows
Z_SYMMETRIC_10_DEFECT_1 = F(2, 21)
QUADRANT_DEFECT_200 = F(2 * 399, 200 * 200)
