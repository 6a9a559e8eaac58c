"""Vectorized enumeration of P^n(F_p) and batched evaluation mod p.

Points are int64 rows normalized so the first nonzero coordinate is 1, and
are produced in increasing lexicographic order of that normal form.  All
products are reduced mod p immediately, so p < 2**31 keeps every
intermediate inside int64.
"""

from __future__ import annotations

import numpy as np

from .poly import MultiPoly

DEFAULT_MAX_POINTS = 10**8


class EnumerationCapError(RuntimeError):
    pass


def count_points(n: int, p: int) -> int:
    """|P^n(F_p)| = (p^(n+1) - 1) / (p - 1)."""
    return (p ** (n + 1) - 1) // (p - 1)


def check_cap(n: int, p: int, max_points: int | None = DEFAULT_MAX_POINTS):
    total = count_points(n, p)
    if max_points is not None and total > max_points:
        raise EnumerationCapError(
            f"P^{n}(F_{p}) has {total} points, above the enumeration cap {max_points}"
        )
    return total


def _grid(p: int, m: int) -> np.ndarray:
    """All of F_p^m as rows, lexicographic."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = np.meshgrid(*([np.arange(p, dtype=np.int64)] * m), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def iter_projective_chunks(n: int, p: int, max_points: int | None = DEFAULT_MAX_POINTS):
    """Yield arrays of points of P^n(F_p) covering the space exactly once."""
    check_cap(n, p, max_points)
    for lead in range(n, -1, -1):
        free = n - lead
        head = np.zeros(lead + 1, dtype=np.int64)
        head[lead] = 1
        if free <= 2:
            tail = _grid(p, free)
            block = np.empty((tail.shape[0], n + 1), dtype=np.int64)
            block[:, : lead + 1] = head
            block[:, lead + 1:] = tail
            yield block
            continue
        tail = _grid(p, free - 1)
        for first in range(p):
            block = np.empty((tail.shape[0], n + 1), dtype=np.int64)
            block[:, : lead + 1] = head
            block[:, lead + 1] = first
            block[:, lead + 2:] = tail
            yield block


def all_points(n: int, p: int, max_points: int | None = DEFAULT_MAX_POINTS) -> np.ndarray:
    return np.concatenate(list(iter_projective_chunks(n, p, max_points)))


class PowerTable:
    """``table[e][v] = v**e mod p`` for residues v, built lazily per exponent."""

    def __init__(self, p: int):
        self.p = p
        self._tables = {}

    def __getitem__(self, e: int) -> np.ndarray:
        if e not in self._tables:
            self._tables[e] = np.array([pow(v, e, self.p) for v in range(self.p)], dtype=np.int64)
        return self._tables[e]


_POWER_TABLES: dict[int, PowerTable] = {}


def power_table(p: int) -> PowerTable:
    if p not in _POWER_TABLES:
        _POWER_TABLES[p] = PowerTable(p)
    return _POWER_TABLES[p]


def eval_many(poly: MultiPoly, pts: np.ndarray) -> np.ndarray:
    """Values of a GF(p) form at every row of *pts*."""
    p = poly.field.p
    table = power_table(p)
    out = np.zeros(pts.shape[0], dtype=np.int64)
    for exp, c in poly.terms.items():
        t = np.full(pts.shape[0], c, dtype=np.int64)
        for i, e in enumerate(exp):
            if e:
                t = t * table[e][pts[:, i]] % p
        out = (out + t) % p
    return out


def gradient_many(poly: MultiPoly, pts: np.ndarray) -> np.ndarray:
    """Homogeneous gradients at every row, shape ``(len(pts), nvars)``."""
    return np.stack([eval_many(poly.partial(i), pts) for i in range(poly.nvars)], axis=1)


def common_zeros(forms, n: int, p: int, max_points: int | None = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Rational points of P^n(F_p) where every form vanishes."""
    found = []
    for block in iter_projective_chunks(n, p, max_points):
        mask = np.ones(block.shape[0], dtype=bool)
        for f in forms:
            sel = block[mask]
            vals = eval_many(f, sel)
            idx = np.flatnonzero(mask)
            mask[idx[vals != 0]] = False
            if not mask.any():
                break
        if mask.any():
            found.append(block[mask])
    if not found:
        return np.zeros((0, n + 1), dtype=np.int64)
    return np.concatenate(found)


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for v in range(1, p):
        inv[v] = pow(v, -1, p)
    return inv


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Rank mod p of each matrix in a stack of shape ``(N, r, c)``."""
    a = np.array(mats, dtype=np.int64) % p
    N, r, c = a.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or r == 0:
        return rank
    inv = _inverse_table(p)
    rows = np.arange(r)
    every = np.arange(N)
    for col in range(c):
        eligible = rows[None, :] >= rank[:, None]
        nz = (a[:, :, col] != 0) & eligible
        has = nz.any(axis=1)
        if not has.any():
            continue
        k = every[has]
        piv = nz[k].argmax(axis=1)
        tgt = rank[k]
        pivot_rows = a[k, piv].copy()
        a[k, piv] = a[k, tgt]
        pivot_rows = pivot_rows * inv[pivot_rows[:, col]][:, None] % p
        a[k, tgt] = pivot_rows
        below = rows[None, :] > tgt[:, None]
        factors = a[k, :, col] * below
        a[k] = (a[k] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        rank[k] += 1
        if (rank == min(r, c)).all():
            break
    return rank
