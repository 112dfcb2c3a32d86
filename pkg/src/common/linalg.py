# src/common/linalg.py
#
# Exact integer matrices are numpy arrays with dtype=object holding Python ints.
# Ranks and invariant factors go through sympy's DomainMatrix.

from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple

import numpy as np
from sympy import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariant_factors

from .constants import RING_INTEGERS, RING_PRIME_PREFIX, RING_RATIONALS
from .errors import ParameterError, ShapeMismatch, require

_INT64_SAFE = 2**62


# -------------------------
# Base ring tag
# -------------------------
@dataclass(frozen=True)
class Ring:
    kind: str          # "Z" / "Q" / "Fp"
    p: int = 0

    @classmethod
    def parse(cls, tag: str) -> "Ring":
        if tag == RING_INTEGERS:
            return cls("Z")
        if tag == RING_RATIONALS:
            return cls("Q")
        if tag.startswith(RING_PRIME_PREFIX):
            digits = tag[len(RING_PRIME_PREFIX):]
            require(digits.isdigit(), ParameterError, f"Bad prime field tag: {tag!r}")
            p = int(digits)
            require(p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1)),
                    ParameterError, f"Not a prime: {p}")
            return cls("Fp", p)
        raise ParameterError(f"Unknown ring tag: {tag!r} (expected Z, Q or Fp:<prime>)")

    @property
    def tag(self) -> str:
        return f"{RING_PRIME_PREFIX}{self.p}" if self.kind == "Fp" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def rank_domain(self) -> Any:
        """Field used for ranks: QQ over Z and Q, GF(p) over Fp."""
        return GF(self.p) if self.kind == "Fp" else QQ

    def normalize(self, m: np.ndarray) -> np.ndarray:
        return m % self.p if self.kind == "Fp" else m

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        if a.shape != b.shape:
            return False
        return is_zero(self.normalize(a - b))


INTEGERS = Ring("Z")
RATIONALS = Ring("Q")


# -------------------------
# Construction helpers
# -------------------------
def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def as_int_matrix(data: Any, rows: int, cols: int) -> np.ndarray:
    """Nested lists (or an array) of integers -> object matrix of the given shape."""
    m = zeros(rows, cols)
    if rows == 0 or cols == 0:
        flat = np.asarray(data, dtype=object).size if data is not None else 0
        require(flat == 0, ShapeMismatch, f"Expected an empty {rows}x{cols} matrix")
        return m
    arr = np.asarray(data, dtype=object)
    require(arr.shape == (rows, cols), ShapeMismatch,
            f"Expected a {rows}x{cols} matrix, got shape {arr.shape}")
    for i in range(rows):
        for j in range(cols):
            v = arr[i, j]
            require(isinstance(v, (int, np.integer)) and not isinstance(v, bool),
                    ShapeMismatch, f"Matrix entry ({i},{j}) is not an integer: {v!r}")
            m[i, j] = int(v)
    return m


def to_lists(m: np.ndarray) -> List[List[int]]:
    return [[int(v) for v in row] for row in m.tolist()]


def is_zero(m: np.ndarray) -> bool:
    return m.size == 0 or not np.any(m != 0)


def max_abs(m: np.ndarray) -> int:
    return max((abs(int(v)) for v in m.flat), default=0)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product. int64 fast path when the entry bound rules out overflow."""
    require(a.shape[1] == b.shape[0], ShapeMismatch,
            f"Cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    rows, inner, cols = a.shape[0], a.shape[1], b.shape[1]
    if rows == 0 or cols == 0 or inner == 0:
        return zeros(rows, cols)
    if max_abs(a) * max_abs(b) * inner < _INT64_SAFE:
        return (a.astype(np.int64) @ b.astype(np.int64)).astype(object)
    return np.dot(a, b)


def block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


# -------------------------
# sympy bridge
# -------------------------
def to_domain_matrix(m: np.ndarray, domain: Any) -> DomainMatrix:
    rows, cols = m.shape
    data = [[domain.convert(int(v)) for v in row] for row in m.tolist()] if rows else []
    return DomainMatrix(data, (rows, cols), domain)


def rank(m: np.ndarray, ring: Ring = INTEGERS) -> int:
    if is_zero(ring.normalize(m)):
        return 0
    return to_domain_matrix(m, ring.rank_domain).rank()


def invariant_factors(m: np.ndarray) -> Tuple[int, ...]:
    """Nonzero Smith invariant factors over Z, in divisibility order."""
    if is_zero(m):
        return ()
    factors = _invariant_factors(to_domain_matrix(m, ZZ))
    return tuple(abs(int(f)) for f in factors if int(f) != 0)
