# src/common/gf2.py
#
# GF(2) elimination on rows stored as Python int bitsets (bit j = variable j).
# Pivot choice is always the lowest set bit, so results are deterministic.

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Row = int
Pivots = Dict[int, Tuple[Row, int]]   # pivot column -> (row bits, rhs bit)


def _lowest_bit(row: Row) -> int:
    return (row & -row).bit_length() - 1


def _reduce(rows: Iterable[Row], rhs: Iterable[int]) -> Tuple[Pivots, bool]:
    """Incremental reduced row echelon form. Returns (pivots, consistent)."""
    pivots: Pivots = {}
    consistent = True
    for row, bit in zip(rows, rhs):
        bit &= 1
        for col, (prow, pbit) in pivots.items():
            if (row >> col) & 1:
                row ^= prow
                bit ^= pbit
        if row == 0:
            if bit:
                consistent = False
            continue
        col = _lowest_bit(row)
        for other, (prow, pbit) in list(pivots.items()):
            if (prow >> col) & 1:
                pivots[other] = (prow ^ row, pbit ^ bit)
        pivots[col] = (row, bit)
    return pivots, consistent


def gf2_rank(rows: Sequence[Row]) -> int:
    pivots, _ = _reduce(rows, [0] * len(rows))
    return len(pivots)


def gf2_solve(rows: Sequence[Row], rhs: Sequence[int]) -> Optional[Row]:
    """
    Solve rows . x = rhs over GF(2).
    Returns the solution with every free variable set to 0, or None if inconsistent.
    """
    pivots, consistent = _reduce(rows, rhs)
    if not consistent:
        return None
    solution = 0
    for col, (_, bit) in pivots.items():
        if bit:
            solution |= 1 << col
    return solution


def gf2_nullspace(rows: Sequence[Row], n_vars: int) -> List[Row]:
    """Kernel basis, one vector per free variable, ordered by that variable."""
    pivots, _ = _reduce(rows, [0] * len(rows))
    basis: List[Row] = []
    for free in range(n_vars):
        if free in pivots:
            continue
        vec = 1 << free
        for col, (prow, _) in pivots.items():
            if (prow >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def bits_of(row: Row) -> List[int]:
    out = []
    while row:
        low = _lowest_bit(row)
        out.append(low)
        row &= row - 1
    return out
