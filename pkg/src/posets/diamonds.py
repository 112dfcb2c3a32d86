# src/posets/diamonds.py

import weakref
from collections import deque
from dataclasses import dataclass
from functools import wraps
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple, TypeVar

import networkx as nx

from src.common.constants import MAX_MOVE_STEPS
from src.common.errors import IntervalTooLarge, NotThin, NotTransitiveNoCleanWitness, require
from src.common.gf2 import gf2_rank
from src.common.logging_utils import get_logger, log_stage

from .core import (
    CheckResult, Cover, Poset, SaturatedChain, count_maximal_chains, interval, is_thin,
    length_two_middles, maximal_chains,
)

log = get_logger("posets.diamonds")

T = TypeVar("T")


def per_poset(fn: Callable[[Poset], T]) -> Callable[[Poset], T]:
    """Memoize fn(p) while p is alive; entries go away with the poset."""
    cache: "weakref.WeakKeyDictionary[Poset, T]" = weakref.WeakKeyDictionary()

    @wraps(fn)
    def wrapper(p: Poset) -> T:
        if p not in cache:
            cache[p] = fn(p)
        return cache[p]

    wrapper.cache = cache  # type: ignore[attr-defined]
    return wrapper


# -------------------------
# Types
# -------------------------
@dataclass(frozen=True, order=True)
class Diamond:
    bottom: str
    left: str
    right: str
    top: str

    @property
    def edges(self) -> Tuple[Cover, Cover, Cover, Cover]:
        return (
            (self.bottom, self.left), (self.bottom, self.right),
            (self.left, self.top), (self.right, self.top),
        )

    def other(self, middle: str) -> str:
        return self.right if middle == self.left else self.left


@dataclass(frozen=True)
class TransitivityWitness:
    x: str
    y: str
    chain_a: SaturatedChain
    chain_b: SaturatedChain


@dataclass(frozen=True)
class PinchWitness:
    x: str
    y: str
    ids_a: Tuple[str, ...]
    ids_b: Tuple[str, ...]


@dataclass(frozen=True)
class DiamondSpace:
    cells0: Tuple[str, ...]
    cells1: Tuple[Cover, ...]
    cells2: Tuple[Diamond, ...]
    boundary1: Tuple[int, ...]      # per edge: bitset over cells0
    boundary2: Tuple[int, ...]      # per diamond: bitset over cells1


def require_thin(p: Poset) -> None:
    res = is_thin(p)
    require(res.ok, NotThin, f"Poset is not thin: interval {res.witness} has the wrong size",
            witness=res.witness)


# -------------------------
# Diamonds and moves
# -------------------------
@per_poset
def _diamond_table(p: Poset) -> Mapping[Tuple[str, str], Diamond]:
    require_thin(p)
    table: Dict[Tuple[str, str], Diamond] = {}
    for x in p.elements:
        for y, mids in length_two_middles(p, x).items():
            left, right = sorted(mids)
            table[(x, y)] = Diamond(x, left, right, y)
    return table


def enumerate_diamonds(p: Poset) -> List[Diamond]:
    return sorted(_diamond_table(p).values())


def diamond_move(d: Diamond, c: SaturatedChain) -> SaturatedChain:
    ids = c.elements
    for i in range(len(ids) - 2):
        if ids[i] == d.bottom and ids[i + 2] == d.top and ids[i + 1] in (d.left, d.right):
            return SaturatedChain(ids[:i + 1] + (d.other(ids[i + 1]),) + ids[i + 2:])
    return c


def _neighbours(table: Mapping[Tuple[str, str], Diamond], ids: Tuple[str, ...]) -> List[Tuple[str, ...]]:
    out = []
    for i in range(len(ids) - 2):
        d = table[(ids[i], ids[i + 2])]
        out.append(ids[:i + 1] + (d.other(ids[i + 1]),) + ids[i + 2:])
    return out


def _orbit(table: Mapping[Tuple[str, str], Diamond], start: Tuple[str, ...],
           budget: List[int], where: Tuple[str, str]) -> Set[Tuple[str, ...]]:
    """BFS closure of one chain under all diamond moves. budget is a shared step counter."""
    seen = {start}
    queue = deque([start])
    while queue:
        ids = queue.popleft()
        budget[0] += max(len(ids) - 2, 0)
        require(budget[0] <= MAX_MOVE_STEPS, IntervalTooLarge,
                f"Orbit search in [{where[0]},{where[1]}] exceeded {MAX_MOVE_STEPS} chain-move steps")
        for nxt in _neighbours(table, ids):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def chain_orbits(p: Poset, x: str, y: str) -> List[List[SaturatedChain]]:
    """Partition of the maximal chains of [x,y] into diamond-move orbits, each sorted."""
    table = _diamond_table(p)
    chains = [c.elements for c in maximal_chains(p, x, y)]
    budget = [0]
    assigned: Set[Tuple[str, ...]] = set()
    orbits: List[List[SaturatedChain]] = []
    for ids in chains:
        if ids in assigned:
            continue
        orbit = _orbit(table, ids, budget, (x, y))
        assigned |= orbit
        orbits.append([SaturatedChain(c) for c in sorted(orbit)])
    return orbits


def orbit_closure(chains: Iterable[SaturatedChain]) -> FrozenSet[str]:
    """Underlying element set of a family of chains."""
    out: Set[str] = set()
    for c in chains:
        out.update(c.elements)
    return frozenset(out)


def _long_intervals(p: Poset, min_length: int) -> List[Tuple[str, str]]:
    out = []
    for x in sorted(p.elements):
        for y in sorted(p.up_set(x)):
            if p.rank[y] - p.rank[x] >= min_length:
                out.append((x, y))
    return out


def _split_in(p: Poset, table: Mapping[Tuple[str, str], Diamond], x: str, y: str) -> Optional[TransitivityWitness]:
    first = maximal_chains_first(p, x, y)
    total = count_maximal_chains(p, x, y)
    orbit = _orbit(table, first, [0], (x, y))
    if len(orbit) == total:
        return None
    other = next(c for c in maximal_chains(p, x, y) if c.elements not in orbit)
    log_stage(log, "transitive", repr(p), note=f"orbits split in [{x},{y}]",
              chains=total, orbit=len(orbit))
    return TransitivityWitness(x, y, SaturatedChain(first), other)


@per_poset
def is_diamond_transitive(p: Poset) -> CheckResult:
    """
    Every interval of length >= 3 is checked (shorter ones are automatic). A length-3
    interval failing interval_shape_check is searched first and gives the witness;
    otherwise the first failing interval in (x, y) id order does.
    """
    table = _diamond_table(p)
    shape = interval_shape_check(p)
    if not shape.ok:
        w = _split_in(p, table, *shape.witness)
        if w is not None:
            return CheckResult(False, w)
    for x, y in _long_intervals(p, 3):
        w = _split_in(p, table, x, y)
        if w is not None:
            return CheckResult(False, w)
    return CheckResult(True)


def maximal_chains_first(p: Poset, x: str, y: str) -> Tuple[str, ...]:
    """Lexicographically smallest maximal chain of [x,y], without enumerating the rest."""
    members = interval(p, x, y).members
    # every member of [x,y] lies below y, so the smallest upper cover inside always exists
    path = [x]
    while path[-1] != y:
        path.append(min(z for z in p.up[path[-1]] if z in members))
    return tuple(path)


def interval_shape_check(p: Poset) -> CheckResult:
    """
    Each length-3 interval must have its two middle ranks joined by covers into a
    single cycle through every middle element.
    """
    require_thin(p)
    for x, y in _long_intervals(p, 3):
        if p.rank[y] - p.rank[x] != 3:
            continue
        members = interval(p, x, y).members
        middle = [z for z in members if z not in (x, y)]
        g = nx.Graph()
        g.add_nodes_from(middle)
        g.add_edges_from((a, b) for a in middle for b in p.up[a] if b in members and b != y)
        single_cycle = (
            g.number_of_nodes() > 0
            and nx.is_connected(g)
            and all(deg == 2 for _, deg in g.degree())
        )
        if not single_cycle:
            return CheckResult(False, (x, y))
    return CheckResult(True)


# -------------------------
# Diamond space over Z/2
# -------------------------
def diamond_space(p: Poset) -> DiamondSpace:
    diamonds = tuple(enumerate_diamonds(p))
    cells0 = tuple(sorted(p.elements))
    cells1 = p.sorted_covers
    vpos = {x: i for i, x in enumerate(cells0)}
    epos = {e: i for i, e in enumerate(cells1)}
    boundary1 = tuple((1 << vpos[x]) | (1 << vpos[y]) for x, y in cells1)
    boundary2 = tuple(sum(1 << epos[e] for e in d.edges) for d in diamonds)
    for d, row in zip(diamonds, boundary2):
        acc = 0
        for e in d.edges:
            acc ^= boundary1[epos[e]]
        if acc:
            raise AssertionError(f"boundary of {d} is not a cycle")
    return DiamondSpace(cells0, cells1, diamonds, boundary1, boundary2)


def h0_z2(ds: DiamondSpace) -> int:
    return len(ds.cells0) - gf2_rank(ds.boundary1)


def h1_z2(ds: DiamondSpace) -> int:
    return len(ds.cells1) - gf2_rank(ds.boundary1) - gf2_rank(ds.boundary2)


def h2_z2(ds: DiamondSpace) -> int:
    return len(ds.cells2) - gf2_rank(ds.boundary2)


# -------------------------
# Pinch witnesses
# -------------------------
def pinch_witness(p: Poset) -> Optional[PinchWitness]:
    """
    For a non-transitive poset: two orbit closures over the same interval meeting only
    in its endpoints. Intervals are searched by (length, x, y).
    """
    status = is_diamond_transitive(p)
    if status.ok:
        return None
    candidates = sorted(_long_intervals(p, 3), key=lambda xy: (p.rank[xy[1]] - p.rank[xy[0]], xy))
    for x, y in candidates:
        orbits = chain_orbits(p, x, y)
        if len(orbits) < 2:
            continue
        closures = [orbit_closure(o) for o in orbits]
        for a, b in combinations(range(len(closures)), 2):
            if closures[a] & closures[b] == {x, y}:
                log_stage(log, "pinch", repr(p), note=f"clean witness in [{x},{y}]")
                return PinchWitness(x, y, tuple(sorted(closures[a])), tuple(sorted(closures[b])))
    w = status.witness
    require(False, NotTransitiveNoCleanWitness,
            f"No orbit pair meets only in its endpoints; raw chains {w.chain_a.elements} / {w.chain_b.elements}",
            witness=w)
    return None


def diamond_report(p: Poset) -> Dict[str, Any]:
    """Summary used by the CLI `analyze` command."""
    thin = is_thin(p)
    if not thin.ok:
        return {"thin": False, "thin_witness": list(thin.witness), "diamond_transitive": None,
                "witness": None, "h1_z2": None, "h2_z2": None, "n_diamonds": None, "h1_checked": False}
    status = is_diamond_transitive(p)
    ds = diamond_space(p)
    h1 = h1_z2(ds)
    h1_checked = p.bottom is not None
    if h1_checked and status.ok and h1 != 0:
        log.warning(f"Diamond transitive poset with h1_z2={h1}: {p!r}")
    witness = None
    if not status.ok:
        w = status.witness
        witness = {"x": w.x, "y": w.y, "chain_a": list(w.chain_a.elements), "chain_b": list(w.chain_b.elements)}
    return {
        "thin": True,
        "diamond_transitive": status.ok,
        "witness": witness,
        "h1_z2": h1,
        "h2_z2": h2_z2(ds),
        "n_diamonds": len(ds.cells2),
        "h1_checked": h1_checked,
    }
