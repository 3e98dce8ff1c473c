"""Estimator-style facade over construction and verification."""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .equilibrium import construct_equilibrium, i_range, verify_equilibrium
from .integration import payoff_nu
from .rationals import as_fraction
from .validation import check_game, check_nu, check_profile

__all__ = ["GroupGameSolver"]


class GroupGameSolver(BaseEstimator):
    """Build the invariant-mean equilibrium of a group game and score profiles against it.

    ``fit`` takes a game (spec, builtin name or document). ``predict`` and
    ``transform`` take a list of profiles and return, respectively, whether
    each is certified and its per-player gaps. Everything is exact.

    Parameters
    ----------
    nu : "uniform", "single 1-2-...", an OrderWeights, or None for the game's own weights
    flip_order : reverse every order (outermost becomes innermost)
    tie_theta : lambda(N) used on Z when both tail averages agree
    """

    def __init__(self, nu=None, flip_order=False, tie_theta=Fraction(1, 2)):
        self.nu = nu
        self.flip_order = flip_order
        self.tie_theta = tie_theta

    def _weights(self, game):
        nu = check_nu(self.nu, game.n_players) or game.nu
        return nu.flipped() if self.flip_order else nu

    def fit(self, game, y=None):
        game = check_game(game)
        tie = as_fraction(self.tie_theta)
        if not 0 <= tie <= 1:
            raise ValueError(f"tie_theta must lie in [0, 1], got {tie}")
        self.game_ = game
        self.nu_ = self._weights(game)
        self.i_ranges_ = tuple(i_range(phi, game.group, tie) for phi in game.phi)
        self.profile_ = construct_equilibrium(game, tie)
        self.report_ = verify_equilibrium(game, self.profile_, self.nu_)
        return self

    def verify(self, profile=None):
        check_is_fitted(self, "profile_")
        if profile is None:
            return self.report_
        return verify_equilibrium(self.game_, check_profile(profile, self.game_), self.nu_)

    def payoffs(self, profile=None) -> tuple:
        check_is_fitted(self, "profile_")
        prof = self.profile_ if profile is None else check_profile(profile, self.game_)
        return tuple(payoff_nu(self.game_, prof, i, self.nu_) for i in range(self.game_.n_players))

    def transform(self, profiles):
        return [self.verify(p).gaps for p in profiles]

    def predict(self, profiles):
        return [self.verify(p).certified for p in profiles]

    def score(self, profiles=None, y=None) -> Fraction:
        """Minus the largest gap (0 for a certified profile), worst case over ``profiles``."""
        reports = [self.verify()] if profiles is None else [self.verify(p) for p in profiles]
        return -max(max(r.gaps) for r in reports)
