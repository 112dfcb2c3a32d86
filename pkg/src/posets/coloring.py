# src/posets/coloring.py
#
# {+1,-1} colorings of cover relations. Over GF(2): +1 <-> 0, -1 <-> 1.

import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.common.constants import VALID_SIGNS
from src.common.errors import (
    NoBalancedColoring, NoBottom, NotCentral, NotDiamondTransitive, NotEmbedding, ParameterError, require,
)
from src.common.gf2 import bits_of, gf2_nullspace, gf2_solve
from src.common.logging_utils import get_logger, log_stage

from .core import Cover, Poset, restrict
from .diamonds import enumerate_diamonds, is_diamond_transitive, require_thin

log = get_logger("posets.coloring")


# -------------------------
# Types
# -------------------------
@dataclass(frozen=True)
class EdgeColoring:
    poset: Poset = field(compare=False, repr=False)
    values: Mapping[Cover, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        vals = dict(self.values)
        require(set(vals) == set(self.poset.covers), ParameterError,
                f"Coloring must be total on the {len(self.poset.covers)} covers, got {len(vals)} edges")
        bad = sorted(e for e, v in vals.items() if v not in VALID_SIGNS)
        require(not bad, ParameterError, f"Edge colors must be +1/-1: {bad[:3]}")
        object.__setattr__(self, "values", MappingProxyType(vals))

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def __getitem__(self, edge: Cover) -> int:
        return self.values[edge]

    def __iter__(self) -> Iterator[Cover]:
        return iter(sorted(self.values))

    def __mul__(self, other: "EdgeColoring") -> "EdgeColoring":
        require(set(self.values) == set(other.values), ParameterError,
                "Colorings live on different cover sets")
        return EdgeColoring(self.poset, {e: v * other.values[e] for e, v in self.values.items()})

    @classmethod
    def constant(cls, p: Poset, sign: int = 1) -> "EdgeColoring":
        return cls(p, {e: sign for e in p.covers})

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())

    def restrict(self, sub: Poset) -> "EdgeColoring":
        return EdgeColoring(sub, {e: self.values[e] for e in sub.covers})


@dataclass(frozen=True)
class Potential:
    poset: Poset = field(compare=False, repr=False)
    values: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        vals = dict(self.values)
        require(set(vals) == set(self.poset.elements), ParameterError,
                "Potential must be total on the elements")
        bad = sorted(x for x, v in vals.items() if v not in VALID_SIGNS)
        require(not bad, ParameterError, f"Potential values must be +1/-1: {bad[:3]}")
        object.__setattr__(self, "values", MappingProxyType(vals))

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def __getitem__(self, x: str) -> int:
        return self.values[x]

    def __mul__(self, other: "Potential") -> "Potential":
        return Potential(self.poset, {x: v * other.values[x] for x, v in self.values.items()})

    @classmethod
    def constant(cls, p: Poset, sign: int = 1) -> "Potential":
        return cls(p, {x: sign for x in p.elements})


@dataclass(frozen=True)
class CoverEmbedding:
    """Injective map that is an order embedding and sends covers to covers."""
    source: Poset
    target: Poset
    mapping: Mapping[str, str]

    def __post_init__(self) -> None:
        m = dict(self.mapping)
        s, t = self.source, self.target
        require(set(m) == set(s.elements), NotEmbedding, "Map must be defined on every source element")
        require(all(v in t for v in m.values()), NotEmbedding, "Map hits elements outside the target")
        require(len(set(m.values())) == len(m), NotEmbedding, "Map is not injective")
        for x, y in s.sorted_covers:
            require((m[x], m[y]) in t.covers, NotEmbedding,
                    f"Cover ({x},{y}) is not sent to a cover", witness=(x, y))
        for x in s.elements:
            for y in s.elements:
                require(s.leq(x, y) == t.leq(m[x], m[y]), NotEmbedding,
                        f"Order not reflected at ({x},{y})", witness=(x, y))
        object.__setattr__(self, "mapping", MappingProxyType(m))

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    @property
    def image(self) -> frozenset:
        return frozenset(self.mapping.values())

    def image_cover(self, edge: Cover) -> Cover:
        return (self.mapping[edge[0]], self.mapping[edge[1]])

    @classmethod
    def identity(cls, p: Poset) -> "CoverEmbedding":
        return cls(p, p, {x: x for x in p.elements})


# -------------------------
# Predicates
# -------------------------
def _diamond_products(c: EdgeColoring) -> Iterator[int]:
    for d in enumerate_diamonds(c.poset):
        prod = 1
        for e in d.edges:
            prod *= c.values[e]
        yield prod


def is_balanced(c: EdgeColoring) -> bool:
    return all(prod == -1 for prod in _diamond_products(c))


def is_central(c: EdgeColoring) -> bool:
    return all(prod == 1 for prod in _diamond_products(c))


# -------------------------
# GF(2) systems
# -------------------------
def _diamond_system(p: Poset) -> Tuple[List[Cover], List[int]]:
    edges = list(p.sorted_covers)
    pos = {e: i for i, e in enumerate(edges)}
    rows = [sum(1 << pos[e] for e in d.edges) for d in enumerate_diamonds(p)]
    return edges, rows


def _from_bits(p: Poset, edges: Sequence[Cover], bits: int) -> EdgeColoring:
    return EdgeColoring(p, {e: -1 if (bits >> i) & 1 else 1 for i, e in enumerate(edges)})


def find_balanced_coloring(p: Poset) -> Optional[EdgeColoring]:
    """GF(2) solve with one equation per diamond; free variables set to +1."""
    require_thin(p)
    edges, rows = _diamond_system(p)
    solution = gf2_solve(rows, [1] * len(rows))
    log_stage(log, "solve", repr(p), diamonds=len(rows), edges=len(edges), solvable=solution is not None)
    if solution is None:
        if is_diamond_transitive(p).ok:
            log.warning(f"Diamond transitive poset without a balanced coloring: {p!r}")
        return None
    return _from_bits(p, edges, solution)


def central_coloring_basis(p: Poset) -> List[EdgeColoring]:
    require_thin(p)
    edges, rows = _diamond_system(p)
    return [_from_bits(p, edges, v) for v in gf2_nullspace(rows, len(edges))]


def random_central_coloring(p: Poset, rng: random.Random) -> EdgeColoring:
    out = EdgeColoring.constant(p)
    for b in central_coloring_basis(p):
        if rng.random() < 0.5:
            out = out * b
    return out


def balanced_colorings(p: Poset, count: int, rng: Optional[random.Random] = None) -> List[EdgeColoring]:
    """
    Up to count distinct balanced colorings: the solver's coloring first, then its
    products with central colorings (all of them when there are few enough).
    """
    base = find_balanced_coloring(p)
    require(base is not None, NoBalancedColoring, f"No balanced coloring exists on {p!r}")
    basis = central_coloring_basis(p)
    out = [base]
    seen = {base}
    if 2 ** len(basis) <= count:
        for mask in range(1, 2 ** len(basis)):
            c = base
            for i in bits_of(mask):
                c = c * basis[i]
            out.append(c)
        return out
    rng = rng or random.Random(0)
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        c = base * random_central_coloring(p, rng)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


# -------------------------
# Potentials
# -------------------------
def coboundary(f: Potential) -> EdgeColoring:
    p = f.poset
    return EdgeColoring(p, {(x, y): f[x] * f[y] for x, y in p.covers})


def greedy_potential(p: Poset, c: EdgeColoring, order: Optional[Sequence[str]] = None) -> Potential:
    """
    gr^c: bottom gets +1; each later element (rank by rank, in `order` within a rank)
    gets +1 if that agrees with c on every cover below it, else -1.
    """
    require_thin(p)
    require(p.bottom is not None, NoBottom, "Greedy potential needs a unique minimum")
    require(is_central(c), NotCentral, "Coloring is not central")
    status = is_diamond_transitive(p)
    require(status.ok, NotDiamondTransitive, "Poset is not diamond transitive", witness=status.witness)

    if order is None:
        order = p.graded_order
    else:
        order = list(order)
        require(sorted(order) == sorted(p.elements), ParameterError, "Order must list every element once")
        ranks = [p.rank[x] for x in order]
        require(ranks == sorted(ranks), ParameterError, "Order must be rank by rank")

    values: Dict[str, int] = {}
    for z in order:
        below = p.down[z]
        if not below:
            values[z] = 1
            continue
        values[z] = 1 if all(c[(w, z)] * values[w] == 1 for w in below) else -1
    f = Potential(p, values)
    if coboundary(f) != c:
        raise AssertionError(f"greedy potential does not integrate a central coloring on {p!r}")
    return f


# -------------------------
# Transport along embeddings
# -------------------------
def transport(e: CoverEmbedding, d: EdgeColoring) -> EdgeColoring:
    """Pullback: (phi^-1 d)(a<b) = d(phi a < phi b)."""
    require(d.poset is e.target or set(d.values) == set(e.target.covers), NotEmbedding,
            "Coloring does not live on the embedding's target")
    return EdgeColoring(e.source, {edge: d[e.image_cover(edge)] for edge in e.source.covers})


def push(e: CoverEmbedding, c: EdgeColoring) -> Dict[Cover, int]:
    """Pushforward onto the image covers (a partial coloring of the target)."""
    return {e.image_cover(edge): v for edge, v in c.values.items()}


def pull_potential(e: CoverEmbedding, f: Potential) -> Potential:
    return Potential(e.source, {x: f[e(x)] for x in e.source.elements})


def restrict_coloring(c: EdgeColoring, ids: Iterable[str]) -> EdgeColoring:
    return c.restrict(restrict(c.poset, ids))
