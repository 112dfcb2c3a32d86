# src/homology/functor.py

import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Tuple

import numpy as np

from src.common.errors import GradingMismatch, NotThin, ShapeMismatch, require
from src.common.laurent import LaurentPoly
from src.common.linalg import INTEGERS, Ring, identity, matmul
from src.common.logging_utils import get_logger, log_stage, matrix_summary
from src.posets.core import CheckResult, Cover, Poset, is_thin, maximal_chains, restrict
from src.posets.diamonds import enumerate_diamonds, is_diamond_transitive

log = get_logger("homology.functor")


@dataclass(frozen=True, eq=False)
class FreeFunctor:
    """
    Graded free modules on elements (dims[x] = q-degrees of a basis) and integer
    matrices on covers (maps[(x, y)] has shape len(dims[y]) x len(dims[x])).
    """
    poset: Poset
    dims: Mapping[str, Tuple[int, ...]]
    maps: Mapping[Cover, np.ndarray]
    ring: Ring = INTEGERS

    def __post_init__(self) -> None:
        p = self.poset
        dims = {x: tuple(int(q) for q in qs) for x, qs in self.dims.items()}
        require(set(dims) == set(p.elements), ShapeMismatch, "dims must cover every element")
        require(set(self.maps) == set(p.covers), ShapeMismatch, "maps must cover every cover relation")
        for (x, y) in p.sorted_covers:
            m = self.maps[(x, y)]
            expected = (len(dims[y]), len(dims[x]))
            require(m.shape == expected, ShapeMismatch,
                    f"Map on ({x},{y}) has shape {m.shape}, expected {expected}", witness=(x, y))
            nz = self.ring.normalize(m)
            for i, j in zip(*np.nonzero(nz != 0)):
                require(dims[y][i] == dims[x][j], GradingMismatch,
                        f"Map on ({x},{y}) sends q-degree {dims[x][j]} to {dims[y][i]}", witness=(x, y))
        object.__setattr__(self, "dims", MappingProxyType(dims))
        object.__setattr__(self, "maps", MappingProxyType(dict(self.maps)))

    def dim(self, x: str) -> int:
        return len(self.dims[x])

    def graded_rank(self, x: str) -> LaurentPoly:
        return LaurentPoly.from_degrees(self.dims[x])

    @property
    def is_graded(self) -> bool:
        return any(q != 0 for qs in self.dims.values() for q in qs)

    def restrict(self, sub: Poset) -> "FreeFunctor":
        return FreeFunctor(
            poset=sub,
            dims={x: self.dims[x] for x in sub.elements},
            maps={e: self.maps[e] for e in sub.covers},
            ring=self.ring,
        )

    def restrict_to(self, ids: Iterable[str]) -> "FreeFunctor":
        return self.restrict(restrict(self.poset, ids))

    def composite(self, chain: Sequence[str]) -> np.ndarray:
        """F along a saturated chain x0 < x1 < ... < xk."""
        out = identity(self.dim(chain[0]))
        for x, y in zip(chain, chain[1:]):
            out = matmul(self.maps[(x, y)], out)
        return self.ring.normalize(out)


def graded_rank(f: FreeFunctor, x: str) -> LaurentPoly:
    return f.graded_rank(x)


def constant_functor(p: Poset, dim: int = 1, ring: Ring = INTEGERS) -> FreeFunctor:
    require(dim >= 1, ShapeMismatch, f"dim must be positive, got {dim}")
    return FreeFunctor(
        poset=p,
        dims={x: (0,) * dim for x in p.elements},
        maps={e: identity(dim) for e in p.covers},
        ring=ring,
    )


def check_functoriality(f: FreeFunctor) -> CheckResult:
    """
    Diamond commutation suffices on diamond transitive posets; otherwise composites are
    compared along every pair of maximal chains of every interval.
    """
    p = f.poset
    thin = is_thin(p)
    require(thin.ok, NotThin, f"Poset is not thin: {thin.witness}", witness=thin.witness)
    ring = f.ring

    if is_diamond_transitive(p).ok:
        for d in enumerate_diamonds(p):
            lhs = f.composite((d.bottom, d.left, d.top))
            rhs = f.composite((d.bottom, d.right, d.top))
            if not ring.equal(lhs, rhs):
                log_stage(log, "functoriality", repr(p), note=f"diamond {d} does not commute",
                          lhs=matrix_summary(lhs), rhs=matrix_summary(rhs))
                return CheckResult(False, d)
        return CheckResult(True)

    for x in sorted(p.elements):
        for y in sorted(p.up_set(x)):
            if p.rank[y] - p.rank[x] < 2:
                continue
            chains = maximal_chains(p, x, y)
            ref = f.composite(chains[0].elements)
            for c in chains[1:]:
                if not ring.equal(ref, f.composite(c.elements)):
                    log_stage(log, "functoriality", repr(p), note=f"chains disagree in [{x},{y}]")
                    return CheckResult(False, (chains[0], c))
    return CheckResult(True)


def random_commuting_functor(
    p: Poset,
    rng: random.Random,
    max_dim: int = 2,
    entry_bound: int = 2,
    ring: Ring = INTEGERS,
) -> FreeFunctor:
    """
    F(x<y) = s(x) s(y) N_rk(x) with a random sign potential s and one random matrix per
    rank. Composites along chains agree, so the result is always functorial.
    """
    ranks = sorted(set(p.rank.values()))
    size = {r: rng.randint(1, max_dim) for r in ranks}
    mats = {}
    for r in ranks:
        if r + 1 in size:
            mats[r] = np.array(
                [[rng.randint(-entry_bound, entry_bound) for _ in range(size[r])] for _ in range(size[r + 1])],
                dtype=object,
            )
    sign = {x: rng.choice((1, -1)) for x in p.elements}
    maps = {(x, y): mats[p.rank[x]] * (sign[x] * sign[y]) for x, y in p.covers}
    return FreeFunctor(p, {x: (0,) * size[p.rank[x]] for x in p.elements}, maps, ring)
