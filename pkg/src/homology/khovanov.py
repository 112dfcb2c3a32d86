# src/homology/khovanov.py
#
# Kauffman cube on a Boolean lattice from a PD code. Crossing (a, b, c, d) lists arc
# labels counterclockwise from the incoming under-strand; its 0-smoothing joins a-b and
# c-d, its 1-smoothing joins a-d and b-c.

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from networkx.utils import UnionFind

from src.common.errors import MalformedPD, NoBalancedColoring, ParameterError, require
from src.common.laurent import LaurentPoly, Q
from src.common.linalg import INTEGERS, Ring, zeros
from src.common.logging_utils import get_logger, log_stage
from src.posets.coloring import EdgeColoring, find_balanced_coloring
from src.posets.constructors import boolean_lattice, label_separator, subset_id

from .complex import CohomologyResult, assemble, cohomology
from .functor import FreeFunctor

log = get_logger("homology.khovanov")

Crossing = Tuple[int, int, int, int]
Circle = FrozenSet[int]

# v+ = 1 (q-degree +1), v- = x (q-degree -1)
PLUS, MINUS = 1, -1


# -------------------------
# Types
# -------------------------
@dataclass(frozen=True)
class LinkDiagram:
    pd: Tuple[Crossing, ...]
    signs: Tuple[int, ...]
    loops: int = 0          # crossingless unknotted components; an empty PD is one loop

    def __post_init__(self) -> None:
        pd = tuple(tuple(int(a) for a in x) for x in self.pd)
        require(all(len(x) == 4 for x in pd), MalformedPD, "Every crossing needs exactly 4 arc labels")
        require(len(self.signs) == len(pd), MalformedPD,
                f"{len(self.signs)} signs for {len(pd)} crossings")
        require(all(s in (1, -1) for s in self.signs), MalformedPD, "Crossing signs must be +1/-1")
        counts = Counter(a for x in pd for a in x)
        bad = sorted(a for a, n in counts.items() if n != 2)
        require(not bad, MalformedPD, f"Arc labels must appear exactly twice: {bad[:5]}", witness=bad)
        require(self.loops >= 0, MalformedPD, "loops must be non-negative")
        object.__setattr__(self, "pd", pd)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if not pd and self.loops == 0:
            object.__setattr__(self, "loops", 1)

    @property
    def n_crossings(self) -> int:
        return len(self.pd)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def mirror(self) -> "LinkDiagram":
        """Over/under swapped: each crossing rotated by one position, signs negated."""
        return LinkDiagram(
            tuple((b, c, d, a) for a, b, c, d in self.pd),
            tuple(-s for s in self.signs),
            self.loops,
        )


@dataclass(frozen=True)
class KauffmanState:
    subset: FrozenSet[int]
    circles: Tuple[Circle, ...]      # sorted by minimal arc label

    @property
    def n_circles(self) -> int:
        return len(self.circles)


# -------------------------
# States
# -------------------------
def resolve(d: LinkDiagram, subset: Iterable[int]) -> KauffmanState:
    """Circles after 1-smoothing the crossings in subset (0-based) and 0-smoothing the rest."""
    chosen = frozenset(subset)
    require(all(0 <= i < d.n_crossings for i in chosen), MalformedPD,
            f"Crossing indices out of range: {sorted(chosen)}")
    uf = UnionFind()
    for i, (a, b, c, e) in enumerate(d.pd):
        for arc in (a, b, c, e):
            uf[arc]
        if i in chosen:
            uf.union(a, e)
            uf.union(b, c)
        else:
            uf.union(a, b)
            uf.union(c, e)
    circles = sorted((frozenset(s) for s in uf.to_sets()), key=min)
    # crossingless loops get negative labels so they sort first and never collide
    loops = [frozenset({-(j + 1)}) for j in range(d.loops)]
    return KauffmanState(chosen, tuple(sorted(loops, key=min) + circles))


def states(d: LinkDiagram) -> List[KauffmanState]:
    """All 2^n states, ordered by (size, subset)."""
    n = d.n_crossings
    return [resolve(d, s) for k in range(n + 1) for s in combinations(range(n), k)]


def kauffman_bracket(d: LinkDiagram) -> LaurentPoly:
    """State sum of (-1)^|I| q^|I| (q + q^-1)^|D(I)|, independent of the cube machinery."""
    circle = Q + Q ** -1
    out = LaurentPoly()
    for st in states(d):
        k = len(st.subset)
        out = out + (circle ** st.n_circles) * LaurentPoly.monomial(k, (-1) ** k)
    return out


def unnormalized_jones(d: LinkDiagram) -> LaurentPoly:
    return kauffman_bracket(d) * LaurentPoly.monomial(d.n_plus - 2 * d.n_minus, (-1) ** d.n_minus)


# -------------------------
# Cube functor
# -------------------------
def _basis(n_circles: int) -> List[Tuple[int, ...]]:
    return list(product((PLUS, MINUS), repeat=n_circles))


def _edge_matrix(src: KauffmanState, tgt: KauffmanState) -> np.ndarray:
    """Merge m or split Delta on the circles that change, identity on the others."""
    src_basis, tgt_basis = _basis(src.n_circles), _basis(tgt.n_circles)
    tpos = {v: i for i, v in enumerate(tgt_basis)}
    old = [i for i, c in enumerate(src.circles) if c not in tgt.circles]
    new = [j for j, c in enumerate(tgt.circles) if c not in src.circles]
    kept = {tgt.circles.index(c): i for i, c in enumerate(src.circles) if c in tgt.circles}
    merge = len(old) == 2 and len(new) == 1
    split = len(old) == 1 and len(new) == 2
    require(merge or split, ParameterError,
            f"Cover changes {len(old)} circles into {len(new)}; expected a merge or a split")

    m = zeros(len(tgt_basis), len(src_basis))
    for col, v in enumerate(src_basis):
        images: List[Dict[int, int]] = []
        if merge:
            a, b = v[old[0]], v[old[1]]
            if a == PLUS and b == PLUS:
                images = [{new[0]: PLUS}]
            elif a == PLUS or b == PLUS:
                images = [{new[0]: MINUS}]
        else:
            a = v[old[0]]
            if a == PLUS:
                images = [{new[0]: PLUS, new[1]: MINUS}, {new[0]: MINUS, new[1]: PLUS}]
            else:
                images = [{new[0]: MINUS, new[1]: MINUS}]
        for changed in images:
            w = tuple(changed[j] if j in changed else v[kept[j]] for j in range(tgt.n_circles))
            m[tpos[w], col] += 1
    return m


def cube_functor(d: LinkDiagram, ring: Ring = INTEGERS) -> FreeFunctor:
    """
    Object at I: V^(tensor |D(I)|) shifted by q^|I|, factors ordered by minimal arc label;
    edge maps from the Frobenius algebra Z[x]/(x^2).
    """
    n = d.n_crossings
    p = boolean_lattice(n)
    labels = [str(i + 1) for i in range(n)]
    sep = label_separator(labels)
    state_of: Dict[str, KauffmanState] = {}
    for st in states(d):
        state_of[subset_id([labels[i] for i in st.subset], sep)] = st

    dims = {
        x: tuple(sum(v) + len(st.subset) for v in _basis(st.n_circles))
        for x, st in state_of.items()
    }
    maps = {(x, y): _edge_matrix(state_of[x], state_of[y]) for x, y in p.covers}
    f = FreeFunctor(p, dims, maps, ring)
    log_stage(log, "cube", f"{n} crossings", states=len(state_of),
              total_rank=sum(len(v) for v in dims.values()))
    return f


def khovanov_homology(
    d: LinkDiagram,
    coloring: Optional[EdgeColoring] = None,
    ring: Ring = INTEGERS,
) -> CohomologyResult:
    """Cube cohomology shifted by -n_minus in homological and n_plus - 2 n_minus in q-degree."""
    f = cube_functor(d, ring)
    c = coloring or find_balanced_coloring(f.poset)
    require(c is not None, NoBalancedColoring, "Cube has no balanced coloring")
    raw = cohomology(assemble(f, c))
    return raw.shifted(-d.n_minus, d.n_plus - 2 * d.n_minus)


def jones_check(d: LinkDiagram, result: CohomologyResult) -> bool:
    """Undo the degree shift and compare the Euler characteristic with the state-sum bracket."""
    chi = result.shifted(d.n_minus, 2 * d.n_minus - d.n_plus).euler_characteristic()
    bracket = kauffman_bracket(d)
    ok = chi == bracket
    if not ok:
        log.warning(f"Unshifted graded Euler characteristic {chi} != Kauffman bracket {bracket}")
    return ok


# -------------------------
# Sample diagrams
# -------------------------
_DIAGRAMS: Dict[str, LinkDiagram] = {
    "unknot": LinkDiagram((), ()),
    "unlink2": LinkDiagram((), (), loops=2),
    "hopf": LinkDiagram(((4, 1, 3, 2), (2, 3, 1, 4)), (-1, -1)),
    "trefoil": LinkDiagram(((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)), (-1, -1, -1)),
    "figure8": LinkDiagram(((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)), (1, 1, -1, -1)),
}


def sample_diagram(name: str) -> LinkDiagram:
    require(name in _DIAGRAMS, ParameterError,
            f"Unknown sample diagram {name!r}; known: {sorted(_DIAGRAMS)}")
    return _DIAGRAMS[name]
