"""Input-validation helpers: accept the loose forms users pass and return checked objects."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from .documents import game_from_dict, parse_game_document, parse_profile_document, profile_from_list
from .exceptions import GroupGameError
from .games import GameSpec, OrderWeights

__all__ = ["check_game", "check_profile", "check_nu"]


def check_game(game) -> GameSpec:
    """A :class:`GameSpec` from a spec, a builtin name, a JSON document (text, dict or path)."""
    if isinstance(game, GameSpec):
        return game
    if isinstance(game, tuple) and game and isinstance(game[0], GameSpec):
        return game[0]
    if isinstance(game, dict):
        return game_from_dict(game)[0]
    if isinstance(game, Path):
        return parse_game_document(game.read_text())[0]
    if isinstance(game, str):
        text = game.lstrip()
        if text.startswith("{"):
            return parse_game_document(game)[0]
        from .demos import BUILTINS, builtin_game

        if game in BUILTINS:
            return builtin_game(game)[0]
        path = Path(game)
        if path.is_file():
            return parse_game_document(path.read_text())[0]
        raise GroupGameError(f"{game!r} is neither a builtin game, a file nor a JSON document")
    raise GroupGameError(f"cannot interpret {type(game).__name__} as a game")


def check_profile(profile, game: GameSpec) -> tuple:
    """A validated profile from measures, a JSON list/text, or a ``{"profile": [...]}`` document."""
    if isinstance(profile, str):
        return parse_profile_document(profile, game)
    if isinstance(profile, dict):
        return profile_from_list(profile.get("profile"), game)
    profile = list(profile)
    if profile and not all(hasattr(m, "__dataclass_fields__") for m in profile):
        return profile_from_list(profile, game)
    return game.check_profile(profile)


def check_nu(nu: Union[str, OrderWeights, None], n_players: int) -> Optional[OrderWeights]:
    """``None`` keeps the game's weights; ``"uniform"`` or ``"single 2-1"`` are accepted as text."""
    if nu is None or isinstance(nu, OrderWeights):
        if nu is not None and nu.n_players != n_players:
            raise GroupGameError(f"order weights are for {nu.n_players} players, game has {n_players}")
        return nu
    text = str(nu).strip()
    if text == "uniform":
        return OrderWeights.uniform(n_players)
    head, _, rest = text.partition(" ")
    if head == "single" and rest:
        try:
            order = [int(p) - 1 for p in rest.replace(",", "-").split("-")]
        except ValueError:
            raise GroupGameError(f"malformed order {rest!r}; write e.g. 'single 2-1'") from None
        if len(order) != n_players:
            raise GroupGameError(f"order {rest!r} does not list all {n_players} players")
        return OrderWeights.single(order)
    raise GroupGameError(f"unknown order weights {nu!r}; use 'uniform' or 'single 1-2-...'")
