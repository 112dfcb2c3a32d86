# src/cli/codec.py
#
# JSON build_*/parse_* pairs for every external format. build_* returns plain
# JSON-ready objects; parse_* validates and raises CodecError on malformed payloads.

import json
from types import MappingProxyType
from typing import Any, Callable, Dict, Tuple, TypeVar

from src.common.constants import COVER_KEY_SEP, DIRECTION_COVARIANT, VALID_DIRECTIONS
from src.common.errors import CodecError, ThinPosetError, require
from src.common.laurent import LaurentPoly
from src.common.linalg import Ring, as_int_matrix, to_lists
from src.homology.complex import CochainComplex, CohomologyResult
from src.homology.functor import FreeFunctor
from src.homology.khovanov import LinkDiagram
from src.posets.coloring import EdgeColoring, Potential
from src.posets.core import Poset, from_cover_relations

T = TypeVar("T")


# -------------------------
# Helpers
# -------------------------
def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CodecError(f"Invalid JSON: {e.msg} at line {e.lineno} column {e.colno}") from e


def _field(obj: Any, key: str, kind: type = object) -> Any:
    require(isinstance(obj, dict), CodecError, f"Expected a JSON object holding {key!r}")
    require(key in obj, CodecError, f"Missing field {key!r}")
    value = obj[key]
    require(isinstance(value, kind), CodecError, f"Field {key!r} must be {kind.__name__}")
    return value


def _int(value: Any, what: str) -> int:
    require(isinstance(value, int) and not isinstance(value, bool), CodecError, f"{what} must be an integer")
    return value


def _int_key(key: str) -> int:
    try:
        return int(key)
    except ValueError as e:
        raise CodecError(f"Degree key {key!r} is not an integer") from e


def _guarded(parse: Callable[..., T]) -> Callable[..., T]:
    """Shape errors raised by constructors during parsing surface as CodecError."""
    def wrapper(*args: Any, **kwargs: Any) -> T:
        try:
            return parse(*args, **kwargs)
        except ThinPosetError:
            raise
        except (TypeError, KeyError, IndexError, ValueError) as e:
            raise CodecError(f"{parse.__name__}: malformed payload ({e})") from e
    wrapper.__name__ = parse.__name__
    wrapper.__doc__ = parse.__doc__
    return wrapper


def cover_key(x: str, y: str) -> str:
    return f"{x}{COVER_KEY_SEP}{y}"


def split_cover_key(key: str) -> Tuple[str, str]:
    parts = key.split(COVER_KEY_SEP)
    require(len(parts) == 2, CodecError, f"Cover key {key!r} must look like 'x{COVER_KEY_SEP}y'")
    return parts[0], parts[1]


# -------------------------
# Poset
# -------------------------
def build_poset(p: Poset) -> Dict[str, Any]:
    return {"elements": list(p.elements), "covers": [list(e) for e in p.sorted_covers]}


@_guarded
def parse_poset(obj: Any) -> Poset:
    elements = _field(obj, "elements", list)
    covers = _field(obj, "covers", list)
    require(all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in elements), CodecError,
            "Element ids must be strings or integers")
    require(all(isinstance(c, list) for c in covers), CodecError, "Covers must be [x, y] lists")
    return from_cover_relations(elements, covers)


# -------------------------
# Colorings and potentials
# -------------------------
def build_coloring(c: EdgeColoring) -> Dict[str, Any]:
    return {"edges": [[x, y, c[(x, y)]] for x, y in c]}


@_guarded
def parse_coloring(obj: Any, p: Poset) -> EdgeColoring:
    edges = _field(obj, "edges", list)
    values: Dict[tuple, int] = {}
    for row in edges:
        require(isinstance(row, list) and len(row) == 3, CodecError, f"Edge entry must be [x, y, sign]: {row!r}")
        x, y, v = str(row[0]), str(row[1]), _int(row[2], "Edge sign")
        require((x, y) not in values, CodecError, f"Edge ({x},{y}) listed twice")
        values[(x, y)] = v
    return EdgeColoring(p, values)


def build_potential(f: Potential) -> Dict[str, Any]:
    return {"values": [[x, f[x]] for x in sorted(f.values)]}


@_guarded
def parse_potential(obj: Any, p: Poset) -> Potential:
    rows = _field(obj, "values", list)
    values: Dict[str, int] = {}
    for row in rows:
        require(isinstance(row, list) and len(row) == 2, CodecError, f"Value entry must be [x, sign]: {row!r}")
        values[str(row[0])] = _int(row[1], "Potential value")
    return Potential(p, values)


# -------------------------
# Functors
# -------------------------
def build_functor(f: FreeFunctor) -> Dict[str, Any]:
    return {
        "poset": build_poset(f.poset),
        "dims": {x: list(f.dims[x]) for x in f.poset.elements},
        "maps": {cover_key(x, y): to_lists(f.maps[(x, y)]) for x, y in f.poset.sorted_covers},
        "ring": f.ring.tag,
    }


@_guarded
def parse_functor(obj: Any) -> FreeFunctor:
    p = parse_poset(_field(obj, "poset", dict))
    dims_raw = _field(obj, "dims", dict)
    maps_raw = _field(obj, "maps", dict)
    ring = Ring.parse(str(obj.get("ring", "Z")))

    dims = {}
    for x, qs in dims_raw.items():
        require(isinstance(qs, list), CodecError, f"dims[{x!r}] must be a list of q-degrees")
        dims[x] = tuple(_int(q, f"q-degree of {x}") for q in qs)
    maps = {}
    for key, rows in maps_raw.items():
        x, y = split_cover_key(key)
        require(x in dims and y in dims, CodecError, f"Map key {key!r} names unknown elements")
        maps[(x, y)] = as_int_matrix(rows, len(dims[y]), len(dims[x]))
    return FreeFunctor(p, dims, maps, ring)


# -------------------------
# Complexes and results
# -------------------------
def build_complex(cx: CochainComplex) -> Dict[str, Any]:
    return {
        "ring": cx.ring.tag,
        "direction": cx.direction,
        "degrees": {str(k): list(cx.degrees[k]) for k in cx.degree_range},
        "blocks": {str(k): [list(b) for b in cx.blocks.get(k, ())] for k in cx.degree_range},
        "differentials": {str(k): to_lists(m) for k, m in sorted(cx.differentials.items())},
    }


@_guarded
def parse_complex(obj: Any) -> CochainComplex:
    ring = Ring.parse(str(_field(obj, "ring", str)))
    direction = _field(obj, "direction", str)
    require(direction in VALID_DIRECTIONS, CodecError, f"Unknown direction {direction!r}")
    degrees = {_int_key(k): tuple(_int(q, "q-degree") for q in v) for k, v in _field(obj, "degrees", dict).items()}
    blocks = {
        _int_key(k): tuple((str(x), _int(off, "offset"), _int(size, "size")) for x, off, size in v)
        for k, v in _field(obj, "blocks", dict).items()
    }
    diffs = {}
    for k, rows in _field(obj, "differentials", dict).items():
        deg = _int_key(k)
        diffs[deg] = as_int_matrix(rows, len(degrees.get(deg + 1, ())), len(degrees.get(deg, ())))
    cx = CochainComplex(
        ring=ring,
        direction=direction,
        degrees=MappingProxyType(degrees),
        blocks=MappingProxyType(blocks),
        differentials=MappingProxyType(diffs),
    )
    cx.check_d_squared()
    return cx


def build_laurent(poly: LaurentPoly) -> Dict[str, Any]:
    return {"terms": [list(t) for t in poly.terms], "text": str(poly)}


@_guarded
def parse_laurent(obj: Any) -> LaurentPoly:
    terms = _field(obj, "terms", list)
    out: Dict[int, int] = {}
    for row in terms:
        require(isinstance(row, list) and len(row) == 2, CodecError, f"Term must be [exponent, coeff]: {row!r}")
        e, c = _int(row[0], "Exponent"), _int(row[1], "Coefficient")
        out[e] = out.get(e, 0) + c
    return LaurentPoly.from_dict(out)


def build_result(r: CohomologyResult) -> Dict[str, Any]:
    return {
        "ring": r.ring,
        "direction": r.direction,
        "betti": {str(k): n for k, n in r.betti.items()},
        "torsion": {str(k): list(t) for k, t in r.torsion.items()},
        "graded_betti": [[k, q, n] for (k, q), n in sorted(r.graded_betti.items())],
        "graded_torsion": [[k, q, list(t)] for (k, q), t in sorted(r.graded_torsion.items())],
    }


@_guarded
def parse_result(obj: Any) -> CohomologyResult:
    return CohomologyResult(
        betti={_int_key(k): _int(n, "Betti number") for k, n in _field(obj, "betti", dict).items()},
        torsion={_int_key(k): tuple(_int(t, "Torsion factor") for t in v)
                 for k, v in _field(obj, "torsion", dict).items()},
        graded_betti={(_int(k, "Degree"), _int(q, "q-degree")): _int(n, "Betti number")
                      for k, q, n in _field(obj, "graded_betti", list)},
        graded_torsion={(_int(k, "Degree"), _int(q, "q-degree")): tuple(_int(t, "Torsion factor") for t in ts)
                        for k, q, ts in _field(obj, "graded_torsion", list)},
        ring=str(obj.get("ring", "Z")),
        direction=str(obj.get("direction", DIRECTION_COVARIANT)),
    )


# -------------------------
# PD codes
# -------------------------
def build_pd(d: LinkDiagram) -> Dict[str, Any]:
    out: Dict[str, Any] = {"pd": [list(x) for x in d.pd], "signs": list(d.signs)}
    if d.loops and not (d.pd == () and d.loops == 1):
        out["loops"] = d.loops
    return out


@_guarded
def parse_pd(obj: Any) -> LinkDiagram:
    pd = _field(obj, "pd", list)
    signs = _field(obj, "signs", list)
    loops = _int(obj.get("loops", 0), "loops")
    crossings = []
    for x in pd:
        require(isinstance(x, list), CodecError, f"Crossing must be a list of 4 arc labels: {x!r}")
        crossings.append(tuple(_int(a, "Arc label") for a in x))
    return LinkDiagram(tuple(crossings), tuple(_int(s, "Crossing sign") for s in signs), loops)


# -------------------------
# Loading
# -------------------------
def parse_text(text: str, parse: Callable[[Any], T]) -> T:
    return parse(loads(text))
