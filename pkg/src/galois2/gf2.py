"""Small GF(2) linear algebra helpers; vectors are int bitsets (bit i = coordinate i)."""

from __future__ import annotations

from typing import Sequence


def bits_to_int(bits: Sequence[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b & 1:
            out |= 1 << i
    return out


def int_to_bits(x: int, n: int) -> list[int]:
    return [(x >> i) & 1 for i in range(n)]


def rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) via an xor basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def solve(columns: Sequence[int], target: int) -> list[int] | None:
    """Coefficients x with xor of columns[i] for x[i] = 1 equal to target, or None.

    Columns must be linearly independent for the answer to be unique.
    """
    # each basis entry carries (vector, combination mask)
    basis: dict[int, tuple[int, int]] = {}
    for i, col in enumerate(columns):
        v, mask = col, 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = (v, mask)
                break
            bv, bm = basis[top]
            v ^= bv
            mask ^= bm
    v, mask = target, 0
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return None
        bv, bm = basis[top]
        v ^= bv
        mask ^= bm
    return int_to_bits(mask, len(columns))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    n, m, k = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m)) & 1 for j in range(k)] for i in range(n)]


def inverse(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a square 0/1 matrix over GF(2); raises if singular."""
    n = len(a)
    rows = [[x & 1 for x in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(n):
            if r != col and rows[r][col]:
                rows[r] = [x ^ y for x, y in zip(rows[r], rows[col])]
    return [row[n:] for row in rows]
