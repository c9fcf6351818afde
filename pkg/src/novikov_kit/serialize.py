"""JSON encodings of the library's values.

Laurent elements are term lists sorted lexicographically by exponent, so
encoding is deterministic and every value round-trips.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cones import IntegralCone, ShiftedCone
from .complex import CriticalPoint, MorseSystem
from .group_ring import GradingForm, LaurentElement, as_exponent
from .novikov_series import NovikovTruncation, TypeLDatum
from .rationality import RationalPresentation


class FormatError(ValueError):
    pass


def _need(obj: Any, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj[key]


def rational_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def rational_from_json(x, where: str = "value") -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"{where}: expected an integer or 'num/den' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: bad rational {x!r}") from exc


def exponent_from_json(v, where: str = "exponent") -> tuple:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise FormatError(f"{where}: expected a list of integers, got {v!r}")
    try:
        return as_exponent(v)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


# -- group ring --------------------------------------------------------------


def element_to_json(a: LaurentElement) -> list:
    return [{"exp": list(g), "coeff": c} for g, c in a.items()]


def element_from_json(obj, rank: int | None = None, where: str = "element") -> LaurentElement:
    if not isinstance(obj, list):
        raise FormatError(f"{where}: expected a list of terms")
    terms = []
    for i, t in enumerate(obj):
        loc = f"{where}[{i}]"
        g = exponent_from_json(_need(t, "exp", loc), f"{loc}.exp")
        c = _need(t, "coeff", loc)
        if not isinstance(c, int) or isinstance(c, bool):
            raise FormatError(f"{loc}.coeff: expected an integer, got {c!r}")
        if rank is not None and len(g) != rank:
            raise FormatError(f"{loc}.exp: expected rank {rank}, got {len(g)}")
        terms.append((g, c))
    if rank is None and not terms:
        raise FormatError(f"{where}: cannot infer the rank of an empty element")
    return LaurentElement(terms, rank=rank)


def form_to_json(xi: GradingForm) -> dict:
    return {"weights": [rational_to_json(w) for w in xi.weights]}


def form_from_json(obj, where: str = "xi") -> GradingForm:
    if isinstance(obj, list):
        weights = obj
    else:
        weights = _need(obj, "weights", where)
    if not isinstance(weights, list):
        raise FormatError(f"{where}.weights: expected a list")
    try:
        return GradingForm(tuple(rational_from_json(w, f"{where}.weights") for w in weights))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def matrix_to_json(A) -> dict:
    return {"size": len(A), "entries": [[element_to_json(x) for x in row] for row in A]}


def matrix_from_json(obj, rank: int, where: str = "matrix") -> tuple:
    size = _need(obj, "size", where)
    rows = _need(obj, "entries", where)
    if not isinstance(rows, list) or len(rows) != size or any(not isinstance(r, list) or len(r) != size for r in rows):
        raise FormatError(f"{where}: entries must be a {size}x{size} array")
    return tuple(
        tuple(element_from_json(x, rank, f"{where}.entries[{i}][{j}]") for j, x in enumerate(row))
        for i, row in enumerate(rows)
    )


def matrix_rank(obj, where: str = "matrix") -> int | None:
    for row in _need(obj, "entries", where):
        for x in row:
            for t in x:
                return len(t["exp"])
    return None


# -- series ------------------------------------------------------------------


def truncation_to_json(a: NovikovTruncation) -> dict:
    return {"xi": form_to_json(a.xi), "cutoff": rational_to_json(a.cutoff), "terms": element_to_json(a.terms)}


def truncation_from_json(obj, where: str = "series") -> NovikovTruncation:
    xi = form_from_json(_need(obj, "xi", where), f"{where}.xi")
    cutoff = rational_from_json(_need(obj, "cutoff", where), f"{where}.cutoff")
    terms = element_from_json(_need(obj, "terms", where), xi.rank, f"{where}.terms")
    return NovikovTruncation(terms, xi, cutoff)


def datum_to_json(d: TypeLDatum) -> dict:
    return {
        "r": list(d.r),
        "q": list(d.q),
        "A": matrix_to_json(d.A),
        "X": [element_to_json(x) for x in d.X],
        "Y": [element_to_json(y) for y in d.Y],
        "theta": list(d.theta),
        "xi": form_to_json(d.xi),
    }


def datum_from_json(obj, xi: GradingForm | None = None, theta=None, where: str = "datum") -> TypeLDatum:
    if isinstance(obj, dict) and "xi" in obj:
        xi = form_from_json(obj["xi"], f"{where}.xi")
    if xi is None:
        raise FormatError(f"{where}: missing key 'xi'")
    m = xi.rank
    if isinstance(obj, dict) and obj.get("theta") is not None:
        theta = exponent_from_json(obj["theta"], f"{where}.theta")
    r = exponent_from_json(_need(obj, "r", where), f"{where}.r")
    q = exponent_from_json(_need(obj, "q", where), f"{where}.q")
    A = matrix_from_json(_need(obj, "A", where), m, f"{where}.A")
    X = tuple(element_from_json(x, m, f"{where}.X[{i}]") for i, x in enumerate(_need(obj, "X", where)))
    Y = tuple(element_from_json(y, m, f"{where}.Y[{i}]") for i, y in enumerate(_need(obj, "Y", where)))
    try:
        return TypeLDatum(r, q, A, X, Y, xi, theta)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def presentation_to_json(rp: RationalPresentation) -> dict:
    return {
        "P": element_to_json(rp.P),
        "Q": element_to_json(rp.Q),
        "shift": list(rp.shift),
        "xi": form_to_json(rp.xi),
    }


def presentation_from_json(obj, xi: GradingForm | None = None, where: str = "presentation") -> RationalPresentation:
    if isinstance(obj, dict) and "xi" in obj:
        xi = form_from_json(obj["xi"], f"{where}.xi")
    if xi is None:
        raise FormatError(f"{where}: missing key 'xi'")
    m = xi.rank
    P = element_from_json(_need(obj, "P", where), m, f"{where}.P")
    Q = element_from_json(_need(obj, "Q", where), m, f"{where}.Q")
    shift = exponent_from_json(_need(obj, "shift", where), f"{where}.shift")
    try:
        return RationalPresentation(P, Q, shift, xi)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


# -- cones -------------------------------------------------------------------


def cone_to_json(c: IntegralCone) -> dict:
    return {"generators": [list(g) for g in c.generators]}


def cone_from_json(obj, where: str = "cone") -> IntegralCone:
    gens = _need(obj, "generators", where)
    if not isinstance(gens, list) or not gens:
        raise FormatError(f"{where}.generators: expected a nonempty list")
    vecs = [exponent_from_json(g, f"{where}.generators[{i}]") for i, g in enumerate(gens)]
    if len({len(v) for v in vecs}) != 1:
        raise FormatError(f"{where}.generators: mixed ranks")
    return IntegralCone(tuple(vecs), len(vecs[0]))


def shifted_cone_to_json(s: ShiftedCone) -> dict:
    out = cone_to_json(s.cone)
    out["shift"] = list(s.shift)
    return out


def shifted_cone_from_json(obj, where: str = "cone") -> ShiftedCone:
    cone = cone_from_json(obj, where)
    shift = obj.get("shift", [0] * cone.rank)
    return ShiftedCone(cone, exponent_from_json(shift, f"{where}.shift"))


# -- Morse systems -----------------------------------------------------------


def system_to_json(sys: MorseSystem) -> dict:
    entries = []
    for (x, y), e in sorted(sys.entries.items()):
        if e is None:
            datum = "zero"
        elif isinstance(e, TypeLDatum):
            datum = datum_to_json(e)
        else:
            datum = {"rational": presentation_to_json(e)}
        entries.append({"from": x, "to": y, "datum": datum})
    return {
        "m": sys.rank,
        "xi": form_to_json(sys.xi),
        "theta": list(sys.theta),
        "points": [{"name": p.name, "index": p.index} for p in sys.points],
        "entries": entries,
    }


def system_from_json(obj, where: str = "system") -> MorseSystem:
    m = _need(obj, "m", where)
    xi = form_from_json(_need(obj, "xi", where), f"{where}.xi")
    if xi.rank != m:
        raise FormatError(f"{where}: xi has rank {xi.rank}, expected {m}")
    theta = exponent_from_json(_need(obj, "theta", where), f"{where}.theta")
    points = []
    for i, p in enumerate(_need(obj, "points", where)):
        loc = f"{where}.points[{i}]"
        name, index = _need(p, "name", loc), _need(p, "index", loc)
        if not isinstance(name, str) or not isinstance(index, int):
            raise FormatError(f"{loc}: name must be a string and index an integer")
        points.append(CriticalPoint(name, index))
    entries = {}
    for i, e in enumerate(_need(obj, "entries", where)):
        loc = f"{where}.entries[{i}]"
        x, y = _need(e, "from", loc), _need(e, "to", loc)
        d = _need(e, "datum", loc)
        if d == "zero":
            entry = None
        elif isinstance(d, dict) and "rational" in d:
            entry = presentation_from_json(d["rational"], xi, f"{loc}.datum.rational")
        else:
            entry = datum_from_json(d, xi, theta, f"{loc}.datum")
        entries[(x, y)] = entry
    try:
        return MorseSystem(m, xi, theta, tuple(points), entries)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


# -- files -------------------------------------------------------------------


def load_json(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
