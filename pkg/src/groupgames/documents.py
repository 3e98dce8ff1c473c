"""JSON game/profile documents and report serialization.

Every rational is written as a reduced ``"p/q"`` string and read from either
that form or an integer literal. Players are numbered from 1 in documents.

A game document::

    {
      "name": "wald",
      "group": "Z",
      "players": 2,
      "phi": [{"tag": "ep-z", "period": 1, "right": ["1/1"], "left": ["0/1"],
               "core": {"0": "1/2"}}, ...],
      "eta": ["id", {"tag": "affine-z", "sign": -1, "shift": 0}],
      "neighborhoods": [[1, 2], [1, 2]],
      "nu": "uniform",
      "profile": [...]            # optional
    }
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any, Optional

from .exceptions import DocumentError, GroupGameError
from .functions import (
    AndZ2,
    ConeZ2,
    EventuallyPeriodicZ,
    FiniteSetZ2,
    FiniteTableFn,
    NotZ2,
    OrZ2,
    PayoffFn,
    PeriodicZ2,
    StepQ1,
)
from .games import GameSpec, OrderWeights
from .groups import (
    AffineQ1,
    AffineZ,
    Bijection,
    DirectProduct,
    FiniteCyclic,
    FinitePermutation,
    FiniteTable,
    Group,
    Identity,
    IntegersZ,
    LatticeZ2,
    RationalCircleQ1,
)
from .measures import (
    FiniteSupportMeasure,
    IntervalMeanQ1,
    Measure,
    Mixture,
    TwoEndedMeanZ,
    UniformFinite,
)
from .rationals import as_fraction, format_fraction

__all__ = [
    "parse_game_document",
    "parse_profile_document",
    "emit_game",
    "emit_profile",
    "game_to_dict",
    "game_from_dict",
    "measure_to_doc",
    "measure_from_doc",
    "element_to_doc",
    "element_from_doc",
    "dumps",
]


def dumps(doc: Any) -> str:
    """Deterministic JSON text (fixed key order as built, two-space indent, trailing newline)."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _frac(value, field):
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as exc:
        raise DocumentError(str(exc), field) from None


def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError(f"expected an integer, got {value!r}", field)
    try:
        return int(value)
    except ValueError:
        raise DocumentError(f"expected an integer, got {value!r}", field) from None


# --- groups -----------------------------------------------------------------


def group_from_doc(doc, field="group") -> Group:
    if isinstance(doc, str):
        s = doc.strip()
        if s == "Z":
            return IntegersZ()
        if s == "Z2":
            return LatticeZ2()
        if s == "Q1":
            return RationalCircleQ1()
        m = re.fullmatch(r"zc\s+(\d+)", s)
        if m:
            return FiniteCyclic(int(m.group(1)))
        raise DocumentError(f"unknown group tag {doc!r}", field)
    if not isinstance(doc, dict) or "tag" not in doc:
        raise DocumentError("group must be a tag string or an object with a 'tag'", field)
    tag = doc["tag"]
    try:
        if tag == "zc":
            return FiniteCyclic(_int(doc.get("modulus"), f"{field}.modulus"))
        if tag == "table":
            return FiniteTable(
                tuple(tuple(r) for r in doc["table"]),
                tuple(doc["names"]) if doc.get("names") is not None else None,
                bool(doc.get("abelian", False)),
            )
        if tag == "product":
            return DirectProduct(
                tuple(group_from_doc(f, f"{field}.factors[{k}]") for k, f in enumerate(doc["factors"]))
            )
        if tag in ("Z", "Z2", "Q1"):
            return group_from_doc(tag, field)
    except KeyError as exc:
        raise DocumentError(f"missing key {exc.args[0]!r}", field) from None
    except DocumentError:
        raise
    except (GroupGameError, TypeError, ValueError) as exc:
        raise DocumentError(str(exc), field) from None
    raise DocumentError(f"unknown group tag {tag!r}", field)


def group_to_doc(group: Group):
    if isinstance(group, (IntegersZ, LatticeZ2, RationalCircleQ1, FiniteCyclic)):
        return group.tag
    if isinstance(group, FiniteTable):
        out = {"tag": "table", "table": [list(r) for r in group.table]}
        if group.names is not None:
            out["names"] = list(group.names)
        out["abelian"] = group.is_abelian
        return out
    if isinstance(group, DirectProduct):
        return {"tag": "product", "factors": [group_to_doc(f) for f in group.factors]}
    raise GroupGameError(f"cannot serialize group {group!r}")


# --- elements ---------------------------------------------------------------


def element_from_doc(group: Group, doc, field="element"):
    try:
        if isinstance(group, (IntegersZ, FiniteCyclic)):
            x = _int(doc, field)
        elif isinstance(group, FiniteTable):
            if isinstance(doc, str) and group.names is not None and doc in group.names:
                x = group.element(doc)
            else:
                x = _int(doc, field)
        elif isinstance(group, LatticeZ2):
            if isinstance(doc, str):
                doc = doc.split(",")
            x = tuple(_int(c, field) for c in doc)
        elif isinstance(group, RationalCircleQ1):
            x = _frac(doc, field)
        elif isinstance(group, DirectProduct):
            x = tuple(element_from_doc(f, d, field) for f, d in zip(group.factors, doc))
        else:
            raise DocumentError(f"no element syntax for {group.tag}", field)
    except TypeError:
        raise DocumentError(f"malformed element {doc!r}", field) from None
    if not group.contains(x):
        raise DocumentError(f"{doc!r} is not an element of {group.tag}", field)
    return x


def element_to_doc(group: Group, x):
    if isinstance(group, FiniteTable) and group.names is not None:
        return group.names[x]
    if isinstance(group, LatticeZ2):
        return [x[0], x[1]]
    if isinstance(group, RationalCircleQ1):
        return format_fraction(x)
    if isinstance(group, DirectProduct):
        return [element_to_doc(f, c) for f, c in zip(group.factors, x)]
    return x


# --- payoff functions -------------------------------------------------------


def _fmap(d: dict, field: str, key_parse):
    if isinstance(d, dict):
        items = d.items()
    elif isinstance(d, list):
        items = d
    else:
        raise DocumentError("expected an object or a list of [key, value] pairs", field)
    return [(key_parse(k), _frac(v, f"{field}[{k!r}]")) for k, v in items]


def function_from_doc(doc, group: Group, field="phi") -> PayoffFn:
    if not isinstance(doc, dict) or "tag" not in doc:
        raise DocumentError("payoff function must be an object with a 'tag'", field)
    tag = doc["tag"]
    try:
        if tag == "ep-z":
            core = _fmap(doc.get("core", {}), f"{field}.core", lambda k: _int(k, f"{field}.core"))
            radius = doc.get("radius")
            radius = _int(radius, f"{field}.radius") if radius is not None else max((abs(x) for x, _ in core), default=0)
            if not core and radius == 0:
                raise DocumentError("core must define the value at 0", f"{field}.core")
            return EventuallyPeriodicZ(
                _int(doc["period"], f"{field}.period"),
                tuple(_frac(v, f"{field}.right") for v in doc["right"]),
                tuple(_frac(v, f"{field}.left") for v in doc["left"]),
                tuple(core),
                radius,
            )
        if tag == "step-q1":
            pieces = []
            for k, p in enumerate(doc["pieces"]):
                if isinstance(p, list):
                    pieces.append(tuple(_frac(v, f"{field}.pieces[{k}]") for v in p))
                else:
                    pieces.append((Fraction(0), _frac(p, f"{field}.pieces[{k}]")))
            pts = _fmap(doc.get("points", {}), f"{field}.points", lambda k: _frac(k, f"{field}.points"))
            return StepQ1(
                tuple(_frac(b, f"{field}.breakpoints") for b in doc["breakpoints"]), tuple(pieces), tuple(pts)
            )
        if tag == "table":
            values = doc["values"]
            if isinstance(values, dict):
                values = [values[element_to_doc(group, x)] for x in group.elements()]
            return FiniteTableFn(tuple(_frac(v, f"{field}.values") for v in values))
        if tag == "cone-z2":
            return ConeZ2(tuple(_frac(c, f"{field}.u") for c in doc["u"]), tuple(_frac(c, f"{field}.v") for c in doc["v"]))
        if tag == "periodic-z2":
            return PeriodicZ2(tuple(doc["periods"]), tuple(tuple(r) for r in doc["table"]))
        if tag == "finite-z2":
            return FiniteSetZ2(frozenset(tuple(p) for p in doc["points"]))
        if tag == "not-z2":
            return NotZ2(function_from_doc(doc["of"], group, f"{field}.of"))
        if tag in ("and-z2", "or-z2"):
            parts = tuple(function_from_doc(p, group, f"{field}.parts[{k}]") for k, p in enumerate(doc["parts"]))
            return AndZ2(parts) if tag == "and-z2" else OrZ2(parts)
    except KeyError as exc:
        raise DocumentError(f"missing key {exc.args[0]!r}", field) from None
    except DocumentError:
        raise
    except (GroupGameError, TypeError, ValueError) as exc:
        raise DocumentError(str(exc), field) from None
    raise DocumentError(f"unknown function tag {tag!r}", field)


def function_to_doc(phi: PayoffFn, group: Group):
    f = format_fraction
    if isinstance(phi, EventuallyPeriodicZ):
        return {
            "tag": "ep-z",
            "period": phi.period,
            "right": [f(v) for v in phi.right],
            "left": [f(v) for v in phi.left],
            "radius": phi.radius,
            "core": {str(x): f(v) for x, v in phi.core},
        }
    if isinstance(phi, StepQ1):
        return {
            "tag": "step-q1",
            "breakpoints": [f(b) for b in phi.breakpoints],
            "pieces": [f(i) if s == 0 else [f(s), f(i)] for s, i in phi.pieces],
            "points": {f(x): f(v) for x, v in phi.points},
        }
    if isinstance(phi, FiniteTableFn):
        return {"tag": "table", "values": [f(v) for v in phi.values]}
    if isinstance(phi, ConeZ2):
        return {"tag": "cone-z2", "u": [f(c) for c in phi.u], "v": [f(c) for c in phi.v]}
    if isinstance(phi, PeriodicZ2):
        return {"tag": "periodic-z2", "periods": list(phi.periods), "table": [[int(b) for b in r] for r in phi.table]}
    if isinstance(phi, FiniteSetZ2):
        return {"tag": "finite-z2", "points": sorted([list(p) for p in phi.members])}
    if isinstance(phi, NotZ2):
        return {"tag": "not-z2", "of": function_to_doc(phi.inner, group)}
    if isinstance(phi, (AndZ2, OrZ2)):
        tag = "and-z2" if isinstance(phi, AndZ2) else "or-z2"
        return {"tag": tag, "parts": [function_to_doc(p, group) for p in phi.parts]}
    raise GroupGameError(f"cannot serialize {type(phi).__name__}")


# --- bijections -------------------------------------------------------------


def bijection_from_doc(doc, group: Group, field="eta") -> Bijection:
    if doc in (None, "id", "identity"):
        return Identity()
    if doc == "inverse":
        if not group.is_finite:
            raise DocumentError("'inverse' is only available on finite groups; use affine-z/affine-q1", field)
        return FinitePermutation.group_inverse(group)
    if doc == "negate":
        if isinstance(group, IntegersZ):
            return AffineZ(-1, 0)
        if isinstance(group, RationalCircleQ1):
            return AffineQ1(-1, Fraction(0))
        raise DocumentError(f"'negate' is not defined on {group.tag}", field)
    if not isinstance(doc, dict) or "tag" not in doc:
        raise DocumentError("bijection must be 'id', 'inverse', 'negate' or an object with a 'tag'", field)
    tag = doc["tag"]
    try:
        if tag == "affine-z":
            return AffineZ(_int(doc.get("sign", 1), f"{field}.sign"), _int(doc.get("shift", 0), f"{field}.shift"))
        if tag == "affine-q1":
            return AffineQ1(_int(doc.get("sign", 1), f"{field}.sign"), _frac(doc.get("shift", 0), f"{field}.shift"))
        if tag == "perm":
            return FinitePermutation(tuple(element_from_doc(group, p, field) for p in doc["perm"]))
    except KeyError as exc:
        raise DocumentError(f"missing key {exc.args[0]!r}", field) from None
    except DocumentError:
        raise
    except GroupGameError as exc:
        raise DocumentError(str(exc), field) from None
    raise DocumentError(f"unknown bijection tag {tag!r}", field)


def bijection_to_doc(eta: Bijection, group: Group):
    if isinstance(eta, Identity):
        return "id"
    if isinstance(eta, AffineZ):
        return {"tag": "affine-z", "sign": eta.s, "shift": eta.c}
    if isinstance(eta, AffineQ1):
        return {"tag": "affine-q1", "sign": eta.s, "shift": format_fraction(eta.c)}
    if isinstance(eta, FinitePermutation):
        return {"tag": "perm", "perm": [element_to_doc(group, p) for p in eta.perm]}
    raise GroupGameError(f"cannot serialize {eta!r}")


# --- order weights ----------------------------------------------------------


def nu_from_doc(doc, n: int, field="nu") -> OrderWeights:
    if doc in (None, "uniform"):
        return OrderWeights.uniform(n)
    if not isinstance(doc, list):
        raise DocumentError("nu must be 'uniform' or a list of {order, weight}", field)
    items = []
    for k, entry in enumerate(doc):
        if not isinstance(entry, dict) or "order" not in entry or "weight" not in entry:
            raise DocumentError("each entry needs 'order' and 'weight'", f"{field}[{k}]")
        order = [_int(p, f"{field}[{k}].order") - 1 for p in entry["order"]]
        items.append((tuple(order), _frac(entry["weight"], f"{field}[{k}].weight")))
    try:
        return OrderWeights(n, tuple(items))
    except GroupGameError as exc:
        raise DocumentError(str(exc), field) from None


def nu_to_doc(nu: OrderWeights):
    if nu == OrderWeights.uniform(nu.n_players):
        return "uniform"
    return [{"order": [p + 1 for p in perm], "weight": format_fraction(w)} for perm, w in nu.weights]


# --- measures ---------------------------------------------------------------


def measure_from_doc(doc, group: Group, field="profile") -> Measure:
    if isinstance(doc, str):
        head, _, rest = doc.strip().partition(" ")
        rest = rest.strip()
        if head == "dirac":
            return FiniteSupportMeasure(((element_from_doc(group, rest, field), 1),))
        if head == "two-ended":
            return TwoEndedMeanZ(_frac(rest, field))
        if head == "interval-mean" and not rest:
            return IntervalMeanQ1()
        if head == "uniform" and not rest:
            return UniformFinite()
        raise DocumentError(f"unknown measure {doc!r}", field)
    if not isinstance(doc, dict) or "tag" not in doc:
        raise DocumentError("measure must be a string form or an object with a 'tag'", field)
    tag = doc["tag"]
    try:
        if tag == "dirac":
            return FiniteSupportMeasure(((element_from_doc(group, doc["at"], f"{field}.at"), 1),))
        if tag == "finite":
            w = doc["weights"]
            items = w.items() if isinstance(w, dict) else w
            return FiniteSupportMeasure(
                tuple((element_from_doc(group, x, f"{field}.weights"), _frac(p, f"{field}.weights")) for x, p in items)
            )
        if tag == "two-ended":
            return TwoEndedMeanZ(_frac(doc["theta"], f"{field}.theta"))
        if tag == "interval-mean":
            return IntervalMeanQ1()
        if tag == "uniform":
            return UniformFinite()
        if tag == "mix":
            return Mixture(
                _frac(doc["weight"], f"{field}.weight"),
                measure_from_doc(doc["first"], group, f"{field}.first"),
                measure_from_doc(doc["second"], group, f"{field}.second"),
            )
    except KeyError as exc:
        raise DocumentError(f"missing key {exc.args[0]!r}", field) from None
    except DocumentError:
        raise
    except GroupGameError as exc:
        raise DocumentError(str(exc), field) from None
    raise DocumentError(f"unknown measure tag {tag!r}", field)


def measure_to_doc(mu: Measure, group: Group):
    if isinstance(mu, FiniteSupportMeasure):
        if len(mu.weights) == 1:
            return {"tag": "dirac", "at": element_to_doc(group, mu.weights[0][0])}
        return {"tag": "finite", "weights": [[element_to_doc(group, x), format_fraction(w)] for x, w in mu.weights]}
    if isinstance(mu, TwoEndedMeanZ):
        return {"tag": "two-ended", "theta": format_fraction(mu.theta)}
    if isinstance(mu, IntervalMeanQ1):
        return {"tag": "interval-mean"}
    if isinstance(mu, UniformFinite):
        return {"tag": "uniform"}
    if isinstance(mu, Mixture):
        return {
            "tag": "mix",
            "weight": format_fraction(mu.weight),
            "first": measure_to_doc(mu.first, group),
            "second": measure_to_doc(mu.second, group),
        }
    raise GroupGameError(f"cannot serialize {type(mu).__name__}")


# --- whole documents --------------------------------------------------------


_GAME_KEYS = {"name", "group", "players", "phi", "eta", "neighborhoods", "nu", "profile", "notes"}


def game_from_dict(doc: dict) -> tuple:
    """Validated ``(GameSpec, profile or None)`` from a parsed document."""
    if not isinstance(doc, dict):
        raise DocumentError("game document must be a JSON object")
    unknown = sorted(set(doc) - _GAME_KEYS)
    if unknown:
        raise DocumentError(f"unknown key {unknown[0]!r}", unknown[0])
    for key in ("group", "players", "phi"):
        if key not in doc:
            raise DocumentError("required key is missing", key)
    group = group_from_doc(doc["group"])
    n = _int(doc["players"], "players")
    if n < 2:
        raise DocumentError("a game needs at least two players", "players")
    phis = doc["phi"]
    if not isinstance(phis, list) or len(phis) != n:
        raise DocumentError(f"expected a list of {n} payoff functions", "phi")
    phi = tuple(function_from_doc(p, group, f"phi[{k}]") for k, p in enumerate(phis))
    etas = doc.get("eta")
    if etas is None:
        eta = (Identity(),) * n
    else:
        if not isinstance(etas, list) or len(etas) != n:
            raise DocumentError(f"expected a list of {n} bijections", "eta")
        eta = tuple(bijection_from_doc(e, group, f"eta[{k}]") for k, e in enumerate(etas))
    nb = doc.get("neighborhoods")
    if nb is None:
        nbhd = ()
    else:
        if not isinstance(nb, list) or len(nb) != n:
            raise DocumentError(f"expected a list of {n} neighborhoods", "neighborhoods")
        nbhd = tuple(tuple(_int(p, f"neighborhoods[{k}]") - 1 for p in part) for k, part in enumerate(nb))
    nu = nu_from_doc(doc.get("nu"), n)
    try:
        game = GameSpec(group, phi, eta, nbhd, nu, name=str(doc.get("name", "")))
    except GroupGameError as exc:
        field = "neighborhoods" if "neighborhood" in str(exc) else "eta" if "bijection" in str(exc) else "phi"
        raise DocumentError(str(exc), field) from None
    profile = None
    if doc.get("profile") is not None:
        profile = profile_from_list(doc["profile"], game, "profile")
    return game, profile


def profile_from_list(items, game: GameSpec, field="profile") -> tuple:
    if not isinstance(items, list) or len(items) != game.n_players:
        raise DocumentError(f"expected a list of {game.n_players} measures", field)
    prof = tuple(measure_from_doc(m, game.group, f"{field}[{k}]") for k, m in enumerate(items))
    try:
        return game.check_profile(prof)
    except GroupGameError as exc:
        raise DocumentError(str(exc), field) from None


def _locate(text: str, field: Optional[str]) -> Optional[int]:
    if not field:
        return None
    key = re.split(r"[.\[]", field, maxsplit=1)[0]
    for lineno, line in enumerate(text.splitlines(), 1):
        if f'"{key}"' in line:
            return lineno
    return None


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, None, exc.lineno) from None


def parse_game_document(text: str) -> tuple:
    """``(GameSpec, profile or None)`` or a :class:`DocumentError` naming line and field."""
    doc = _loads(text)
    try:
        return game_from_dict(doc)
    except DocumentError as exc:
        if exc.line is None:
            raise DocumentError(exc.reason, exc.field, _locate(text, exc.field)) from None
        raise


def parse_profile_document(text: str, game: GameSpec) -> tuple:
    doc = _loads(text)
    items = doc.get("profile") if isinstance(doc, dict) else doc
    try:
        return profile_from_list(items, game)
    except DocumentError as exc:
        raise DocumentError(exc.reason, exc.field, _locate(text, "profile") if isinstance(doc, dict) else None) from None


def game_to_dict(game: GameSpec, profile=None) -> dict:
    doc = {}
    if game.name:
        doc["name"] = game.name
    doc["group"] = group_to_doc(game.group)
    doc["players"] = game.n_players
    doc["phi"] = [function_to_doc(p, game.group) for p in game.phi]
    doc["eta"] = [bijection_to_doc(e, game.group) for e in game.eta]
    doc["neighborhoods"] = [[j + 1 for j in p] for p in game.neighborhoods]
    doc["nu"] = nu_to_doc(game.nu)
    if profile is not None:
        doc["profile"] = emit_profile(profile, game.group)
    return doc


def emit_game(game: GameSpec, profile=None) -> str:
    return dumps(game_to_dict(game, profile))


def emit_profile(profile, group: Group) -> list:
    return [measure_to_doc(m, group) for m in profile]


def order_to_doc(order) -> list:
    return [p + 1 for p in order]


def fraction_doc(x: Fraction) -> str:
    return format_fraction(x)


def decimal_note(x: Fraction) -> float:
    # annotation only; exact value is the "p/q" string beside it
    return float(x) if math.isfinite(float(x)) else None
