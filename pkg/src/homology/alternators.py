# src/homology/alternators.py
#
# Decategorified values: rank alternators of familiar polynomial invariants.

from collections import Counter
from typing import Any, Iterable, Tuple

from src.common.errors import NoBottom, require
from src.common.laurent import LaurentPoly, ONE, Q
from src.posets.constructors import face_poset_simplicial
from src.posets.core import Poset

from .complex import rank_alternator
from .functor import FreeFunctor, graded_rank


def f_vector(facets: Iterable[Iterable[Any]]) -> Tuple[int, ...]:
    """(f_-1, f_0, f_1, ...): number of faces with 0, 1, 2, ... vertices."""
    p = face_poset_simplicial(facets)
    counts = Counter(p.rank.values())
    return tuple(counts[k] for k in range(max(counts) + 1))


def h_polynomial_at_minus_q(facets: Iterable[Iterable[Any]]) -> LaurentPoly:
    """sum_i f_(i-1) (-q)^i (1+q)^(m-i), m the largest facet size."""
    f = f_vector(facets)
    m = len(f) - 1
    out = LaurentPoly()
    for i, n in enumerate(f):
        out = out + n * (-Q) ** i * (ONE + Q) ** (m - i)
    return out


def h_alternator(facets: Iterable[Iterable[Any]]) -> LaurentPoly:
    """Same value as a rank alternator over the face poset: F -> q^|F| (1+q)^(m-|F|)."""
    facets = [list(f) for f in facets]
    p = face_poset_simplicial(facets)
    m = max(p.rank.values())
    return rank_alternator(p, lambda x: Q ** p.rank[x] * (ONE + Q) ** (m - p.rank[x]))


def characteristic_alternator(p: Poset) -> LaurentPoly:
    """sum of (-1)^rk(x) t^(rk P - rk x); equals the characteristic polynomial when p is Eulerian."""
    require(p.bottom is not None, NoBottom, "Characteristic polynomial needs a unique minimum")
    top = max(p.rank.values())
    return rank_alternator(p, lambda x: Q ** (top - p.rank[x]))


def functor_alternator(f: FreeFunctor) -> LaurentPoly:
    return rank_alternator(f.poset, lambda x: graded_rank(f, x))
