"""Exact linear algebra over Z/p."""

from __future__ import annotations


def rank_mod_p(rows, p: int) -> int:
    """Rank of a list of integer rows over F_p (Gaussian elimination)."""
    rows = [[x % p for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        prow = [(x * inv) % p for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def independent_subset(vectors, p: int):
    """Indices of a greedy maximal independent subset, in input order."""
    basis = []  # list of (pivot, row) in echelon form
    keep = []
    for idx, v in enumerate(vectors):
        r = [x % p for x in v]
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [(x - f * y) % p for x, y in zip(r, b)]
        nz = next((i for i, x in enumerate(r) if x), None)
        if nz is None:
            continue
        inv = pow(r[nz], -1, p)
        basis.append((nz, [(x * inv) % p for x in r]))
        keep.append(idx)
    return keep
