# src/homology/complex.py

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from src.common.constants import DIRECTION_COVARIANT, VALID_DIRECTIONS
from src.common.errors import DSquaredNonzero, NotBalanced, NotFunctorial, ParameterError, require
from src.common.laurent import LaurentPoly
from src.common.linalg import INTEGERS, Ring, invariant_factors, is_zero, matmul, rank, zeros
from src.common.logging_utils import get_logger, log_stage, matrix_summary
from src.posets.coloring import EdgeColoring, is_balanced
from src.posets.core import Poset

from .functor import FreeFunctor, check_functoriality

log = get_logger("homology.complex")

Block = Tuple[str, int, int]     # (element, offset, size)


# -------------------------
# Complex
# -------------------------
@dataclass(frozen=True, eq=False)
class CochainComplex:
    """
    degrees[k]: q-degrees of the basis of C^k, block by block.
    blocks[k]: (element, offset, size) in lexicographic element order.
    differentials[k]: C^k -> C^(k+1), shape dim(k+1) x dim(k).
    """
    ring: Ring = INTEGERS
    direction: str = DIRECTION_COVARIANT
    degrees: Mapping[int, Tuple[int, ...]] = field(default_factory=dict)
    blocks: Mapping[int, Tuple[Block, ...]] = field(default_factory=dict)
    differentials: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        require(self.direction in VALID_DIRECTIONS, ParameterError, f"Unknown direction {self.direction!r}")
        for k, m in self.differentials.items():
            require(m.shape == (self.dim(k + 1), self.dim(k)), ParameterError,
                    f"Differential {k} has shape {m.shape}, expected {(self.dim(k + 1), self.dim(k))}")

    @property
    def degree_range(self) -> List[int]:
        return sorted(self.degrees)

    def dim(self, k: int) -> int:
        return len(self.degrees.get(k, ()))

    def d(self, k: int) -> np.ndarray:
        if k in self.differentials:
            return self.differentials[k]
        return zeros(self.dim(k + 1), self.dim(k))

    def block_index(self) -> Dict[str, Tuple[int, int, int]]:
        """element -> (degree, offset, size)"""
        return {x: (k, off, size) for k, bl in self.blocks.items() for x, off, size in bl}

    def euler_characteristic(self) -> LaurentPoly:
        out = LaurentPoly()
        for k, qs in self.degrees.items():
            out = out + LaurentPoly.from_degrees(qs) * (-1) ** (k % 2)
        return out

    def check_d_squared(self) -> None:
        for k in self.degree_range:
            sq = self.ring.normalize(matmul(self.d(k + 1), self.d(k)))
            require(is_zero(sq), DSquaredNonzero, f"d^{k + 1} d^{k} != 0 ({matrix_summary(sq)})", witness=k)


def zero_complex(ring: Ring = INTEGERS, direction: str = DIRECTION_COVARIANT) -> CochainComplex:
    return CochainComplex(ring=ring, direction=direction)


def _degree_of(p: Poset, x: str, direction: str) -> int:
    return p.rank[x] if direction == DIRECTION_COVARIANT else -p.rank[x]


def assemble(
    f: FreeFunctor,
    c: EdgeColoring,
    direction: str = DIRECTION_COVARIANT,
    check: bool = True,
) -> CochainComplex:
    """
    C^k = sum of F(x) over rank-k elements, d^k = sum of c(x<y) F(x<y).
    The contravariant direction uses transposed maps and complex degree -rank.
    """
    p = f.poset
    require(direction in VALID_DIRECTIONS, ParameterError, f"Unknown direction {direction!r}")
    require(set(c.values) == set(p.covers), ParameterError, "Coloring and functor live on different posets")
    if check:
        func = check_functoriality(f)
        require(func.ok, NotFunctorial, f"Functor is not functorial: {func.witness}", witness=func.witness)
        require(is_balanced(c), NotBalanced, "Coloring is not balanced")

    blocks: Dict[int, List[Block]] = {}
    degrees: Dict[int, List[int]] = {}
    for x in sorted(p.elements):
        k = _degree_of(p, x, direction)
        off = len(degrees.setdefault(k, []))
        blocks.setdefault(k, []).append((x, off, f.dim(x)))
        degrees[k].extend(f.dims[x])

    where = {x: off for bl in blocks.values() for x, off, _ in bl}
    diffs: Dict[int, np.ndarray] = {}
    for k in degrees:
        if k + 1 in degrees:
            diffs[k] = zeros(len(degrees[k + 1]), len(degrees[k]))
    for x, y in p.sorted_covers:
        m = f.maps[(x, y)] * c[(x, y)]
        if direction == DIRECTION_COVARIANT:
            src, tgt, block = x, y, m
        else:
            src, tgt, block = y, x, m.T
        k = _degree_of(p, src, direction)
        r0, c0 = where[tgt], where[src]
        diffs[k][r0:r0 + block.shape[0], c0:c0 + block.shape[1]] += block

    cx = CochainComplex(
        ring=f.ring,
        direction=direction,
        degrees=MappingProxyType({k: tuple(v) for k, v in degrees.items()}),
        blocks=MappingProxyType({k: tuple(v) for k, v in blocks.items()}),
        differentials=MappingProxyType({k: f.ring.normalize(m) for k, m in diffs.items()}),
    )
    cx.check_d_squared()
    log_stage(log, "assemble", repr(p), direction=direction, ring=f.ring.tag,
              dims=[cx.dim(k) for k in cx.degree_range])
    return cx


def restrict_complex(cx: CochainComplex, ids: Iterable[str]) -> CochainComplex:
    """Sub-collection of blocks (with the differentials between them)."""
    keep = set(ids)
    blocks: Dict[int, List[Block]] = {}
    degrees: Dict[int, List[int]] = {}
    picks: Dict[int, List[int]] = {}
    for k in cx.degree_range:
        for x, off, size in cx.blocks[k]:
            if x not in keep:
                continue
            new_off = len(picks.setdefault(k, []))
            blocks.setdefault(k, []).append((x, new_off, size))
            picks[k].extend(range(off, off + size))
            degrees.setdefault(k, []).extend(cx.degrees[k][off:off + size])
    diffs = {}
    for k in picks:
        if k + 1 not in picks:
            continue
        rows, cols = picks[k + 1], picks[k]
        diffs[k] = cx.d(k)[np.ix_(rows, cols)] if rows and cols else zeros(len(rows), len(cols))
    out = CochainComplex(
        ring=cx.ring,
        direction=cx.direction,
        degrees=MappingProxyType({k: tuple(v) for k, v in degrees.items()}),
        blocks=MappingProxyType({k: tuple(v) for k, v in blocks.items()}),
        differentials=MappingProxyType(diffs),
    )
    out.check_d_squared()
    return out


# -------------------------
# Cohomology
# -------------------------
@dataclass(frozen=True)
class CohomologyResult:
    betti: Mapping[int, int]
    torsion: Mapping[int, Tuple[int, ...]]
    graded_betti: Mapping[Tuple[int, int], int]              # (k, q) -> rank, nonzero only
    graded_torsion: Mapping[Tuple[int, int], Tuple[int, ...]]  # (k, q) -> factors, nonempty only
    ring: str = "Z"
    direction: str = DIRECTION_COVARIANT

    def betti_vector(self) -> Tuple[int, ...]:
        return tuple(self.betti[k] for k in sorted(self.betti))

    def euler_characteristic(self) -> LaurentPoly:
        out: Dict[int, int] = {}
        for (k, q), n in self.graded_betti.items():
            out[q] = out.get(q, 0) + (-1) ** (k % 2) * n
        return LaurentPoly.from_dict(out)

    def shifted(self, hom: int, q: int) -> "CohomologyResult":
        return CohomologyResult(
            betti={k + hom: n for k, n in self.betti.items()},
            torsion={k + hom: t for k, t in self.torsion.items()},
            graded_betti={(k + hom, d + q): n for (k, d), n in self.graded_betti.items()},
            graded_torsion={(k + hom, d + q): t for (k, d), t in self.graded_torsion.items()},
            ring=self.ring,
            direction=self.direction,
        )

    def poincare_table(self) -> Dict[int, LaurentPoly]:
        """k -> graded rank of the free part of H^k."""
        out: Dict[int, Dict[int, int]] = {}
        for (k, q), n in self.graded_betti.items():
            out.setdefault(k, {})[q] = n
        return {k: LaurentPoly.from_dict(v) for k, v in sorted(out.items())}


def cohomology(cx: CochainComplex) -> CohomologyResult:
    """
    Per q-degree block: betti_k = dim C^k - rank d^k - rank d^(k-1); over Z the torsion of
    H^k is given by the invariant factors > 1 of d^(k-1).
    """
    ring = cx.ring
    qdegrees = sorted({q for qs in cx.degrees.values() for q in qs})
    index = {
        (k, q): [i for i, d in enumerate(cx.degrees[k]) if d == q]
        for k in cx.degree_range for q in qdegrees
    }

    def block(k: int, q: int) -> np.ndarray:
        rows, cols = index.get((k + 1, q), []), index.get((k, q), [])
        if not rows or not cols:
            return zeros(len(rows), len(cols))
        return cx.d(k)[np.ix_(rows, cols)]

    betti: Dict[int, int] = {}
    torsion: Dict[int, List[int]] = {}
    graded_betti: Dict[Tuple[int, int], int] = {}
    graded_torsion: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for q in qdegrees:
        ranks = {k: rank(block(k, q), ring) for k in cx.degree_range}
        for k in cx.degree_range:
            n = len(index[(k, q)])
            b = n - ranks[k] - ranks.get(k - 1, 0)
            h = k if cx.direction == DIRECTION_COVARIANT else -k
            betti[h] = betti.get(h, 0) + b
            if b:
                graded_betti[(h, q)] = b
            if ring.kind == "Z" and ranks.get(k - 1, 0):
                tors = tuple(t for t in invariant_factors(block(k - 1, q)) if t > 1)
                if tors:
                    graded_torsion[(h, q)] = tors
                    torsion.setdefault(h, []).extend(tors)
    for k in cx.degree_range:
        h = k if cx.direction == DIRECTION_COVARIANT else -k
        betti.setdefault(h, 0)
    result = CohomologyResult(
        betti=dict(sorted(betti.items())),
        torsion={h: tuple(sorted(torsion.get(h, []))) for h in sorted(betti)},
        graded_betti=dict(sorted(graded_betti.items())),
        graded_torsion=dict(sorted(graded_torsion.items())),
        ring=ring.tag,
        direction=cx.direction,
    )
    log_stage(log, "cohomology", f"{len(cx.degrees)} degrees", ring=ring.tag,
              betti=list(result.betti_vector()))
    return result


# -------------------------
# Euler characteristics
# -------------------------
def euler_characteristic(cx: CochainComplex, result: Optional[CohomologyResult] = None) -> LaurentPoly:
    """Graded Euler characteristic, computed from C* and from H* and compared."""
    from_chains = cx.euler_characteristic()
    from_homology = (result or cohomology(cx)).euler_characteristic()
    if from_chains != from_homology:
        raise AssertionError(f"Euler characteristic mismatch: C*={from_chains} H*={from_homology}")
    return from_chains


AlternatorValue = Union[LaurentPoly, int]


def rank_alternator(p: Poset, f: Union[Callable[[str], AlternatorValue], Mapping[str, AlternatorValue]]) -> LaurentPoly:
    """sum over x of (-1)^rk(x) f(x)"""
    get = f.__getitem__ if isinstance(f, Mapping) else f
    out = LaurentPoly()
    for x in p.graded_order:
        out = out + get(x) * (-1) ** (p.rank[x] % 2)
    return out
