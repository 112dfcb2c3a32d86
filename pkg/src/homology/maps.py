# src/homology/maps.py

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional

import numpy as np

from src.common.constants import DIRECTION_COVARIANT
from src.common.errors import (
    ColoringIncompatible, NaturalityViolated, NoBalancedColoring, NotCentral, NotChainMap, NotEmbedding,
    NotUpperIdeal, ShapeMismatch, require,
)
from src.common.laurent import LaurentPoly
from src.common.linalg import identity, is_zero, matmul, zeros
from src.common.logging_utils import get_logger, log_stage, matrix_summary
from src.posets.coloring import (
    CoverEmbedding, EdgeColoring, Potential, find_balanced_coloring, greedy_potential, is_central, transport,
)
from src.posets.core import CheckResult, is_upper_ideal, restrict

from .complex import CochainComplex, assemble, restrict_complex, zero_complex
from .functor import FreeFunctor

log = get_logger("homology.maps")


@dataclass(frozen=True, eq=False)
class ChainMap:
    """components[k]: C^k(source) -> C^(k+shift)(target)."""
    source: CochainComplex
    target: CochainComplex
    components: Mapping[int, np.ndarray]
    shift: int = 0

    def component(self, k: int) -> np.ndarray:
        if k in self.components:
            return self.components[k]
        return zeros(self.target.dim(k + self.shift), self.source.dim(k))

    def _degrees(self) -> List[int]:
        return sorted(set(self.source.degree_range) | {k - self.shift for k in self.target.degree_range})

    def check(self) -> CheckResult:
        """d_target phi = phi d_source in every degree."""
        ring = self.target.ring
        for k in self._degrees():
            lhs = matmul(self.target.d(k + self.shift), self.component(k))
            rhs = matmul(self.component(k + 1), self.source.d(k))
            if not ring.equal(lhs, rhs):
                log_stage(log, "chain-map", f"degree {k}", lhs=matrix_summary(lhs), rhs=matrix_summary(rhs))
                return CheckResult(False, k)
        return CheckResult(True)

    def verify(self) -> "ChainMap":
        res = self.check()
        require(res.ok, NotChainMap, f"Chain-map identity fails in degree {res.witness}", witness=res.witness)
        return self

    def then(self, second: "ChainMap") -> "ChainMap":
        """second after self."""
        comps = {k: matmul(second.component(k + self.shift), self.component(k)) for k in self._degrees()}
        return ChainMap(self.source, second.target, MappingProxyType(comps), self.shift + second.shift)

    def same_as(self, other: "ChainMap") -> bool:
        ring = self.target.ring
        return self.shift == other.shift and all(
            ring.equal(self.component(k), other.component(k)) for k in set(self._degrees()) | set(other._degrees())
        )


def block_map(
    source: CochainComplex,
    target: CochainComplex,
    shift: int,
    image: Callable[[str], str],
    block: Callable[[str], np.ndarray],
) -> ChainMap:
    """Block matrix with block(x) from the block of x to the block of image(x)."""
    tindex = target.block_index()
    comps: Dict[int, np.ndarray] = {}
    for k in source.degree_range:
        m = zeros(target.dim(k + shift), source.dim(k))
        for x, off, size in source.blocks[k]:
            y = image(x)
            if y not in tindex:
                continue
            tk, toff, tsize = tindex[y]
            require(tk == k + shift, ShapeMismatch, f"Block of {x} lands in degree {tk}, expected {k + shift}")
            b = block(x)
            require(b.shape == (tsize, size), ShapeMismatch,
                    f"Block for {x} has shape {b.shape}, expected {(tsize, size)}", witness=x)
            m[toff:toff + tsize, off:off + size] = b
        comps[k] = m
    return ChainMap(source, target, MappingProxyType(comps), shift)


# -------------------------
# Recoloring
# -------------------------
def recolor_map(
    f: FreeFunctor,
    c1: EdgeColoring,
    c2: EdgeColoring,
    direction: str = DIRECTION_COVARIANT,
) -> ChainMap:
    """Isomorphism C(F, c1) -> C(F, c2): gr^(c1 c2)(x) times the identity on the block of x."""
    g = greedy_potential(f.poset, c1 * c2)
    source = assemble(f, c1, direction)
    target = assemble(f, c2, direction)
    cmap = block_map(source, target, 0, lambda x: x, lambda x: identity(f.dim(x)) * g[x])
    log_stage(log, "recolor", repr(f.poset), flipped=sum(1 for v in g.values.values() if v == -1))
    return cmap.verify()


# -------------------------
# Cover preserving embeddings
# -------------------------
def induced_chain_map(
    e: CoverEmbedding,
    f_src: FreeFunctor,
    f_tgt: FreeFunctor,
    eta: Mapping[str, np.ndarray],
    b: EdgeColoring,
    src_coloring: Optional[EdgeColoring] = None,
    tgt_coloring: Optional[EdgeColoring] = None,
) -> ChainMap:
    """
    Block gr^b(x) eta_x from C(P, F_src, c) to C(Q, F_tgt, d) where c = phi^-1(d) b.
    The target is the whole complex of Q when phi(P) is an upper ideal, otherwise the
    blocks of phi(P).
    """
    P, Q = e.source, e.target
    require(f_src.poset is P or f_src.poset.same_as(P), ShapeMismatch, "Source functor is not on the source poset")
    require(f_tgt.poset is Q or f_tgt.poset.same_as(Q), ShapeMismatch, "Target functor is not on the target poset")
    require(is_central(b), NotCentral, "Twisting coloring b is not central")

    shifts = {Q.rank[e(x)] - P.rank[x] for x in P.elements}
    require(len(shifts) == 1, NotEmbedding, f"Embedding does not shift ranks uniformly: {sorted(shifts)}")
    shift = shifts.pop()

    d = tgt_coloring or find_balanced_coloring(Q)
    require(d is not None, NoBalancedColoring, "Target poset has no balanced coloring")
    expected = transport(e, d) * b
    c = src_coloring or expected
    require(c == expected, ColoringIncompatible, "Source coloring times b differs from the pulled-back target coloring")

    for x, y in P.sorted_covers:
        lhs = matmul(eta[y], f_src.maps[(x, y)])
        rhs = matmul(f_tgt.maps[e.image_cover((x, y))], eta[x])
        if not f_tgt.ring.equal(lhs, rhs):
            require(False, NaturalityViolated, f"Naturality square fails on ({x},{y})", witness=(x, y))

    g = Potential.constant(P) if b.is_trivial() else greedy_potential(P, b)
    source = assemble(f_src, c)
    target = assemble(f_tgt, d)
    if not is_upper_ideal(Q, e.image):
        target = restrict_complex(target, e.image)
    cmap = block_map(source, target, shift, e, lambda x: eta[x] * g[x])
    return cmap.verify()


# -------------------------
# Upper ideals
# -------------------------
@dataclass(frozen=True, eq=False)
class IdealSplit:
    sub: CochainComplex
    total: CochainComplex
    quotient: CochainComplex
    inclusion: ChainMap
    projection: ChainMap
    chi_sub: LaurentPoly
    chi_total: LaurentPoly
    chi_quotient: LaurentPoly

    @property
    def additive(self) -> bool:
        return self.chi_total == self.chi_sub + self.chi_quotient


def _identity_blocks(f: FreeFunctor) -> Callable[[str], np.ndarray]:
    return lambda x: identity(f.dim(x))


def ideal_split(f: FreeFunctor, c: EdgeColoring, ideal: Iterable[str]) -> IdealSplit:
    """
    0 -> C(I) -> C(P) -> C(P minus I) -> 0 for an upper ideal I, with both maps checked
    degreewise and dimensions checked to add up.
    """
    p = f.poset
    ideal = frozenset(ideal)
    require(is_upper_ideal(p, ideal), NotUpperIdeal, "Subset is not an upper order ideal")
    rest = frozenset(p.elements) - ideal

    total = assemble(f, c)
    if ideal:
        sub_p = restrict(p, ideal)
        sub = assemble(f.restrict(sub_p), c.restrict(sub_p))
    else:
        sub = zero_complex(f.ring)
    if rest:
        quo_p = restrict(p, rest)
        quotient = assemble(f.restrict(quo_p), c.restrict(quo_p))
    else:
        quotient = zero_complex(f.ring)

    blocks = _identity_blocks(f)
    inclusion = block_map(sub, total, 0, lambda x: x, blocks).verify()
    # projection: identity on the blocks of P minus I, built in the transposed direction
    lift = block_map(quotient, total, 0, lambda x: x, blocks)
    projection = ChainMap(
        total, quotient, MappingProxyType({k: lift.component(k).T for k in total.degree_range}), 0,
    ).verify()

    for k in total.degree_range:
        require(total.dim(k) == sub.dim(k) + quotient.dim(k), ShapeMismatch,
                f"Degree {k}: {total.dim(k)} != {sub.dim(k)} + {quotient.dim(k)}")
        composite = matmul(projection.component(k), inclusion.component(k))
        require(is_zero(composite), NotChainMap,
                f"Projection after inclusion is nonzero in degree {k}")

    split = IdealSplit(
        sub=sub, total=total, quotient=quotient, inclusion=inclusion, projection=projection,
        chi_sub=sub.euler_characteristic(),
        chi_total=total.euler_characteristic(),
        chi_quotient=quotient.euler_characteristic(),
    )
    log_stage(log, "ideal-split", repr(p), ideal=len(ideal), additive=split.additive)
    return split
