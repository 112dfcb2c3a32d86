# src/posets/constructors.py

from itertools import combinations, permutations
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from src.common.constants import (
    EMPTY_FACE, MAX_BOOLEAN_N, MAX_BRUHAT_N,
    PINCH_LEFT_PREFIX, PINCH_RIGHT_PREFIX, RESERVED_BOTTOM, RESERVED_TOP,
    UNION_LEFT_PREFIX, UNION_RIGHT_PREFIX,
)
from src.common.errors import (
    IdCollision, MissingBounds, NotGraded, ParameterError, RankMismatch, RankTooSmall, TooLarge, require,
)
from src.common.logging_utils import get_logger, log_stage

from .core import Cover, Poset, make_poset

log = get_logger("posets.constructors")


# -------------------------
# Subset ids
# -------------------------
def _label_key(label: str) -> Tuple[int, Any]:
    return (0, int(label)) if label.isdigit() else (1, label)


def label_separator(universe: Iterable[Any]) -> str:
    return "" if all(len(str(v)) == 1 for v in universe) else "."


def subset_id(labels: Iterable[Any], sep: str = "") -> str:
    """'13' for {1,3} (sep="." gives '1.3'); '∅' for the empty set."""
    parts = sorted((str(v) for v in labels), key=_label_key)
    if not parts:
        return EMPTY_FACE
    return sep.join(parts)


def _subset_poset(faces: Iterable[FrozenSet[str]], rank_offset: int) -> Poset:
    faces = set(faces)
    sep = label_separator(set().union(*faces))
    ids = {f: subset_id(f, sep) for f in faces}
    covers: List[Cover] = []
    for f in faces:
        for v in f:
            g = f - {v}
            if g in faces:
                covers.append((ids[g], ids[f]))
    rank = {ids[f]: len(f) - rank_offset for f in faces}
    return make_poset(ids.values(), covers, rank)


# -------------------------
# Families
# -------------------------
def boolean_lattice(n: int) -> Poset:
    require(n >= 0, ParameterError, f"n must be non-negative, got {n}")
    require(n <= MAX_BOOLEAN_N, TooLarge, f"boolean_lattice supports n <= {MAX_BOOLEAN_N}, got {n}")
    labels = [str(i) for i in range(1, n + 1)]
    faces = [frozenset(c) for k in range(n + 1) for c in combinations(labels, k)]
    p = _subset_poset(faces, rank_offset=0)
    log_stage(log, "boolean", repr(p), n=n)
    return p


def inversions(word: Sequence[Any]) -> int:
    return sum(1 for i, j in combinations(range(len(word)), 2) if word[i] > word[j])


def bruhat_order(n: int) -> Poset:
    """Bruhat order on permutations of 1..n in one-line notation ('213')."""
    require(n >= 1, ParameterError, f"n must be at least 1, got {n}")
    require(n <= MAX_BRUHAT_N, TooLarge, f"bruhat_order supports n <= {MAX_BRUHAT_N}, got {n}")
    perms = ["".join(w) for w in permutations("123456789"[:n])]
    length = {u: inversions(u) for u in perms}
    covers: List[Cover] = []
    for u in perms:
        for i, j in combinations(range(n), 2):
            w = list(u)
            w[i], w[j] = w[j], w[i]
            v = "".join(w)
            if length[v] == length[u] + 1:
                covers.append((u, v))
    p = make_poset(perms, covers, length)
    log_stage(log, "bruhat", repr(p), n=n)
    return p


def face_poset_simplicial(facets: Iterable[Iterable[Any]], include_empty: bool = True) -> Poset:
    """Face poset of the simplicial complex generated by facets, ordered by inclusion."""
    facet_sets = [frozenset(str(v) for v in f) for f in facets]
    require(len(facet_sets) > 0, ParameterError, "At least one facet is required")
    require(all(facet_sets), ParameterError, "Facets must be nonempty")
    faces: Set[FrozenSet[str]] = set()
    for f in facet_sets:
        members = sorted(f)
        for k in range(0 if include_empty else 1, len(members) + 1):
            faces.update(frozenset(c) for c in combinations(members, k))
    p = _subset_poset(faces, rank_offset=0 if include_empty else 1)
    log_stage(log, "simplicial", repr(p), facets=len(facet_sets), include_empty=include_empty)
    return p


def polygon_face_poset(k: int, include_empty: bool = True, include_interior: bool = True) -> Poset:
    """Closed cells of a k-gon: vertices v1..vk, edges e1..ek (e_i = v_i v_(i+1)) and the 2-cell f."""
    require(k >= 3, ParameterError, f"A polygon needs k >= 3, got {k}")
    offset = 1 if include_empty else 0
    rank: Dict[str, int] = {}
    covers: List[Cover] = []
    if include_empty:
        rank[EMPTY_FACE] = 0
    for i in range(1, k + 1):
        v, e, nxt = f"v{i}", f"e{i}", f"v{i % k + 1}"
        rank[v] = offset
        rank[e] = offset + 1
        covers += [(v, e), (nxt, e)]
        if include_empty:
            covers.append((EMPTY_FACE, v))
        if include_interior:
            covers.append((e, "f"))
    if include_interior:
        rank["f"] = offset + 2
    return make_poset(rank, covers, rank)


def adjoin_top(p: Poset, label: str = RESERVED_TOP) -> Poset:
    require(label not in p, IdCollision, f"Element id {label!r} already in the poset")
    ranks = {p.rank[x] for x in p.maximal}
    require(len(ranks) == 1, NotGraded,
            f"Maximal elements have unequal ranks {sorted(ranks)}", witness=sorted(p.maximal))
    rank = dict(p.rank)
    rank[label] = ranks.pop() + 1
    covers = set(p.covers) | {(x, label) for x in p.maximal}
    return make_poset(rank, covers, rank)


def adjoin_bottom(p: Poset, label: str = RESERVED_BOTTOM) -> Poset:
    require(label not in p, IdCollision, f"Element id {label!r} already in the poset")
    ranks = {p.rank[x] for x in p.minimal}
    require(len(ranks) == 1, NotGraded,
            f"Minimal elements have unequal ranks {sorted(ranks)}", witness=sorted(p.minimal))
    base = ranks.pop()
    rank = {x: r - base + 1 for x, r in p.rank.items()}
    rank[label] = 0
    covers = set(p.covers) | {(label, x) for x in p.minimal}
    return make_poset(rank, covers, rank)


def _bounded_length(p: Poset, name: str) -> int:
    require(p.bottom is not None and p.top is not None, MissingBounds,
            f"{name} needs a unique minimum and maximum")
    return p.rank[p.top] - p.rank[p.bottom]


def pinch_product(p: Poset, q: Poset) -> Poset:
    """Interiors of p and q side by side, sharing a fresh bottom BOT and top TOP."""
    n = _bounded_length(p, "left factor")
    m = _bounded_length(q, "right factor")
    require(n == m, RankMismatch, f"Factors have different lengths {n} and {m}")
    require(n >= 3, RankTooSmall, f"Pinch product needs length >= 3, got {n}")

    rank: Dict[str, int] = {RESERVED_BOTTOM: 0, RESERVED_TOP: n}
    covers: Set[Cover] = set()
    for factor, prefix in ((p, PINCH_LEFT_PREFIX), (q, PINCH_RIGHT_PREFIX)):
        lo, hi = factor.bottom, factor.top

        def rename(x: str) -> str:
            if x == lo:
                return RESERVED_BOTTOM
            if x == hi:
                return RESERVED_TOP
            return prefix + x

        for x in factor.elements:
            if x not in (lo, hi):
                rank[prefix + x] = factor.rank[x] - factor.rank[lo]
        covers |= {(rename(x), rename(y)) for x, y in factor.covers}

    out = make_poset(rank, covers, rank)
    log_stage(log, "pinch", repr(out), left=len(p), right=len(q))
    return out


def disjoint_union(p: Poset, q: Poset) -> Poset:
    rank: Dict[str, int] = {}
    covers: Set[Cover] = set()
    for factor, prefix in ((p, UNION_LEFT_PREFIX), (q, UNION_RIGHT_PREFIX)):
        rank.update({prefix + x: r for x, r in factor.rank.items()})
        covers |= {(prefix + x, prefix + y) for x, y in factor.covers}
    return make_poset(rank, covers, rank)


def chain_poset(n: int) -> Poset:
    """Total order 0 < 1 < ... < n-1."""
    require(n >= 1, ParameterError, f"n must be at least 1, got {n}")
    ids = [str(i) for i in range(n)]
    return make_poset(ids, zip(ids, ids[1:]), {x: i for i, x in enumerate(ids)})


def diamond_poset() -> Poset:
    return make_poset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
                      {"a": 0, "b": 1, "c": 1, "d": 2})
