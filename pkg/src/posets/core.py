# src/posets/core.py

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import (
    Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple,
)

import networkx as nx

from src.common.constants import COVER_KEY_SEP, INDEX_THRESHOLD
from src.common.errors import (
    CycleError, EmptyPoset, IdCollision, NoBottom, NotComparable, NotGraded, NotReduced,
    PosetInputError, UnknownElement, require,
)
from src.common.laurent import LaurentPoly
from src.common.logging_utils import get_logger, log_stage

log = get_logger("posets.core")

Cover = Tuple[str, str]


# -------------------------
# Types
# -------------------------
@dataclass(frozen=True, eq=False)
class Poset:
    """
    Finite graded poset given by its Hasse diagram.
    Immutable; hashing is by identity so per-poset results can be memoized.
    """
    elements: Tuple[str, ...]
    covers: FrozenSet[Cover]
    rank: Mapping[str, int]

    @cached_property
    def up(self) -> Mapping[str, Tuple[str, ...]]:
        out: Dict[str, List[str]] = {x: [] for x in self.elements}
        for x, y in self.covers:
            out[x].append(y)
        return MappingProxyType({x: tuple(sorted(ys)) for x, ys in out.items()})

    @cached_property
    def down(self) -> Mapping[str, Tuple[str, ...]]:
        out: Dict[str, List[str]] = {x: [] for x in self.elements}
        for x, y in self.covers:
            out[y].append(x)
        return MappingProxyType({y: tuple(sorted(xs)) for y, xs in out.items()})

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.covers)
        return g

    @cached_property
    def sorted_covers(self) -> Tuple[Cover, ...]:
        return tuple(sorted(self.covers))

    @cached_property
    def by_rank(self) -> Mapping[int, Tuple[str, ...]]:
        out: Dict[int, List[str]] = {}
        for x in self.elements:
            out.setdefault(self.rank[x], []).append(x)
        return MappingProxyType({k: tuple(sorted(v)) for k, v in sorted(out.items())})

    @cached_property
    def graded_order(self) -> Tuple[str, ...]:
        """Elements sorted by (rank, id)."""
        return tuple(sorted(self.elements, key=lambda x: (self.rank[x], x)))

    @cached_property
    def minimal(self) -> Tuple[str, ...]:
        return tuple(x for x in self.elements if not self.down[x])

    @cached_property
    def maximal(self) -> Tuple[str, ...]:
        return tuple(x for x in self.elements if not self.up[x])

    @property
    def bottom(self) -> Optional[str]:
        return self.minimal[0] if len(self.minimal) == 1 else None

    @property
    def top(self) -> Optional[str]:
        return self.maximal[0] if len(self.maximal) == 1 else None

    @property
    def length(self) -> int:
        return max(self.rank.values()) - min(self.rank.values())

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.rank

    def __repr__(self) -> str:
        return f"Poset(n={len(self.elements)}, covers={len(self.covers)}, length={self.length})"

    # bitset reachability index, only built above INDEX_THRESHOLD elements
    @cached_property
    def _position(self) -> Mapping[str, int]:
        return MappingProxyType({x: i for i, x in enumerate(self.elements)})

    @cached_property
    def _up_bits(self) -> Mapping[str, int]:
        bits: Dict[str, int] = {}
        for x in reversed(self.graded_order):
            b = 1 << self._position[x]
            for y in self.up[x]:
                b |= bits[y]
            bits[x] = b
        log_stage(log, "index", f"up-set bitsets n={len(self.elements)}")
        return bits

    @cached_property
    def _down_bits(self) -> Mapping[str, int]:
        bits: Dict[str, int] = {}
        for y in self.graded_order:
            b = 1 << self._position[y]
            for x in self.down[y]:
                b |= bits[x]
            bits[y] = b
        log_stage(log, "index", f"down-set bitsets n={len(self.elements)}")
        return bits

    @property
    def indexed(self) -> bool:
        return len(self.elements) > INDEX_THRESHOLD

    def _decode(self, bits: int) -> FrozenSet[str]:
        out = []
        while bits:
            low = (bits & -bits).bit_length() - 1
            out.append(self.elements[low])
            bits &= bits - 1
        return frozenset(out)

    def up_set(self, x: str) -> FrozenSet[str]:
        if self.indexed:
            return self._decode(self._up_bits[x])
        return frozenset(nx.descendants(self.graph, x)) | {x}

    def down_set(self, x: str) -> FrozenSet[str]:
        if self.indexed:
            return self._decode(self._down_bits[x])
        return frozenset(nx.ancestors(self.graph, x)) | {x}

    def leq(self, x: str, y: str) -> bool:
        if x == y:
            return True
        if self.rank[x] >= self.rank[y]:
            return False
        if self.indexed:
            return bool((self._up_bits[x] >> self._position[y]) & 1)
        # DFS pruned by rank
        target = self.rank[y]
        stack, seen = [x], {x}
        while stack:
            z = stack.pop()
            for w in self.up[z]:
                if w == y:
                    return True
                if w not in seen and self.rank[w] < target:
                    seen.add(w)
                    stack.append(w)
        return False

    def same_as(self, other: "Poset") -> bool:
        return (
            set(self.elements) == set(other.elements)
            and self.covers == other.covers
            and dict(self.rank) == dict(other.rank)
        )


@dataclass(frozen=True)
class SaturatedChain:
    elements: Tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    def covers(self) -> Iterator[Cover]:
        return zip(self.elements, self.elements[1:])

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __lt__(self, other: "SaturatedChain") -> bool:
        return self.elements < other.elements


@dataclass(frozen=True)
class Interval:
    bottom: str
    top: str
    members: FrozenSet[str]
    length: int


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural predicate, with a counterexample when it fails."""
    ok: bool
    witness: Optional[Any] = None

    def __bool__(self) -> bool:
        return self.ok


# -------------------------
# Construction
# -------------------------
def make_poset(elements: Iterable[str], covers: Iterable[Cover], rank: Mapping[str, int]) -> Poset:
    """Trusted constructor for builders that already know a valid rank function."""
    return Poset(
        elements=tuple(sorted(elements)),
        covers=frozenset(covers),
        rank=MappingProxyType(dict(rank)),
    )


def from_cover_relations(elements: Sequence[Any], covers: Iterable[Sequence[Any]]) -> Poset:
    """
    Validate a Hasse diagram and compute ranks as longest-path length from the minimal
    elements. Rejects cycles, redundant covers and covers that skip a rank.
    """
    ids = [str(x) for x in elements]
    require(len(ids) > 0, EmptyPoset, "Poset must have at least one element")
    require(len(set(ids)) == len(ids), IdCollision, "Duplicate element ids")
    bad = sorted(x for x in ids if COVER_KEY_SEP in x)
    require(not bad, PosetInputError, f"Element ids may not contain {COVER_KEY_SEP!r}: {bad[:3]}")

    known = set(ids)
    pairs: Set[Cover] = set()
    for pair in covers:
        require(len(pair) == 2, PosetInputError, f"Cover must be a pair, got {pair!r}")
        x, y = str(pair[0]), str(pair[1])
        require(x in known and y in known, UnknownElement,
                f"Cover ({x},{y}) references an unknown element", witness=(x, y))
        require(x != y, CycleError, f"Self-loop at {x}", witness=[(x, y)])
        pairs.add((x, y))

    g = nx.DiGraph()
    g.add_nodes_from(ids)
    g.add_edges_from(pairs)
    if not nx.is_directed_acyclic_graph(g):
        cycle = [tuple(e[:2]) for e in nx.find_cycle(g)]
        require(False, CycleError, f"Cover relations contain a directed cycle: {cycle}", witness=cycle)

    redundant = sorted(pairs - set(nx.transitive_reduction(g).edges()))
    require(not redundant, NotReduced,
            f"Cover {redundant[:1]} is implied by a longer path", witness=redundant[:1])

    rank: Dict[str, int] = {}
    for x in nx.topological_sort(g):
        rank[x] = max((rank[w] + 1 for w in g.predecessors(x)), default=0)

    skips = sorted((x, y) for x, y in pairs if rank[y] != rank[x] + 1)
    require(not skips, NotGraded,
            f"Cover {skips[:1]} skips a rank under the longest-path rank function",
            witness=skips[:1])

    p = make_poset(ids, pairs, rank)
    log_stage(log, "build", repr(p))
    return p


def restrict(p: Poset, ids: Iterable[str]) -> Poset:
    """Induced subposet on ids with the ambient covers and the ambient rank function."""
    keep = frozenset(ids)
    missing = sorted(keep - set(p.elements))
    require(not missing, UnknownElement, f"Unknown elements: {missing[:3]}")
    require(len(keep) > 0, EmptyPoset, "Cannot restrict to an empty set")
    covers = [(x, y) for x, y in p.covers if x in keep and y in keep]
    return make_poset(keep, covers, {x: p.rank[x] for x in keep})


# -------------------------
# Order queries
# -------------------------
def reachability(p: Poset) -> Callable[[str, str], bool]:
    return p.leq


def _require_members(p: Poset, *xs: str) -> None:
    for x in xs:
        require(x in p, UnknownElement, f"Unknown element {x!r}")


def interval(p: Poset, x: str, y: str) -> Interval:
    _require_members(p, x, y)
    require(p.leq(x, y), NotComparable, f"{x} is not below {y}", witness=(x, y))
    members = p.up_set(x) & p.down_set(y)
    return Interval(bottom=x, top=y, members=members, length=p.rank[y] - p.rank[x])


def maximal_chains(p: Poset, x: str, y: str) -> List[SaturatedChain]:
    """All saturated chains from x to y, sorted by their id sequences."""
    members = interval(p, x, y).members
    out: List[SaturatedChain] = []
    stack: List[Tuple[str, ...]] = [(x,)]
    while stack:
        path = stack.pop()
        last = path[-1]
        if last == y:
            out.append(SaturatedChain(path))
            continue
        for z in p.up[last]:
            if z in members:
                stack.append(path + (z,))
    out.sort()
    return out


def count_maximal_chains(p: Poset, x: str, y: str) -> int:
    members = interval(p, x, y).members
    count: Dict[str, int] = {x: 1}
    for z in sorted(members, key=lambda w: (p.rank[w], w)):
        if z != x:
            count[z] = sum(count[w] for w in p.down[z] if w in members)
    return count[y]


def upper_ideal(p: Poset, generators: Iterable[str]) -> FrozenSet[str]:
    out: Set[str] = set()
    for g in generators:
        _require_members(p, g)
        out |= p.up_set(g)
    return frozenset(out)


def lower_ideal(p: Poset, generators: Iterable[str]) -> FrozenSet[str]:
    out: Set[str] = set()
    for g in generators:
        _require_members(p, g)
        out |= p.down_set(g)
    return frozenset(out)


def is_upper_ideal(p: Poset, ids: Iterable[str]) -> bool:
    s = frozenset(ids)
    return s <= set(p.elements) and all(y in s for x in s for y in p.up[x])


# -------------------------
# Structural predicates
# -------------------------
def length_two_middles(p: Poset, x: str) -> Dict[str, List[str]]:
    """For every y two ranks above x: the elements strictly between x and y."""
    out: Dict[str, List[str]] = {}
    for z in p.up[x]:
        for y in p.up[z]:
            out.setdefault(y, []).append(z)
    return out


def is_thin(p: Poset) -> CheckResult:
    for x in sorted(p.elements):
        middles = length_two_middles(p, x)
        for y in sorted(middles):
            if len(middles[y]) != 2:
                log_stage(log, "thin", repr(p), note=f"interval [{x},{y}] has {len(middles[y]) + 2} elements")
                return CheckResult(False, (x, y))
    return CheckResult(True)


def mobius_row(p: Poset, x: str) -> Dict[str, int]:
    """y -> mu(x, y) for every y >= x."""
    _require_members(p, x)
    above = p.up_set(x)
    below: Dict[str, Set[str]] = {}
    mu: Dict[str, int] = {}
    for z in sorted(above, key=lambda w: (p.rank[w], w)):
        strictly_below: Set[str] = set()
        for w in p.down[z]:
            if w in above:
                strictly_below |= below[w]
        below[z] = strictly_below | {z}
        mu[z] = 1 if z == x else -sum(mu[w] for w in strictly_below)
    return mu


def mobius(p: Poset, x: str, y: str) -> int:
    _require_members(p, x, y)
    require(p.leq(x, y), NotComparable, f"{x} is not below {y}", witness=(x, y))
    return mobius_row(p, x)[y]


def is_eulerian(p: Poset) -> CheckResult:
    """
    Parity criterion and Moebius criterion are both evaluated over every nontrivial
    interval; they must agree globally. The witness is the first parity violation.
    """
    parity_witness = None
    mobius_ok = True
    for x in p.graded_order:
        row = mobius_row(p, x)
        above = p.up_set(x)
        for y in sorted(above - {x}, key=lambda w: (p.rank[w], w)):
            members = above & p.down_set(y)
            even = sum(1 for z in members if p.rank[z] % 2 == 0)
            if 2 * even != len(members) and parity_witness is None:
                parity_witness = (x, y)
            if row[y] != (-1) ** (p.rank[y] - p.rank[x]):
                mobius_ok = False
    parity_ok = parity_witness is None
    if parity_ok != mobius_ok:
        raise AssertionError(f"Eulerian criteria disagree on {p!r}: parity={parity_ok} mobius={mobius_ok}")
    return CheckResult(parity_ok, parity_witness)


def characteristic_polynomial(p: Poset) -> LaurentPoly:
    """sum over x of mu(0,x) t^(rk P - rk x), as a polynomial in t."""
    require(p.bottom is not None, NoBottom, "Characteristic polynomial needs a unique minimum")
    row = mobius_row(p, p.bottom)
    top_rank = max(p.rank.values())
    out: Dict[int, int] = {}
    for x, m in row.items():
        e = top_rank - p.rank[x]
        out[e] = out.get(e, 0) + m
    return LaurentPoly.from_dict(out)
