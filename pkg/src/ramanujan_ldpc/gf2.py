"""Bit-packed GF(2) linear algebra.

Rows are packed little-endian into uint64 words (column ``j`` is bit
``j % 64`` of word ``j // 64``); elimination XORs whole words at a time.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def n_words(ncols: int) -> int:
    return (ncols + 63) // 64


def pack(mat) -> np.ndarray:
    """Pack a dense 0/1 matrix into ``(rows, n_words)`` uint64."""
    mat = np.asarray(mat, dtype=np.uint8) & 1
    if mat.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = mat.shape
    padded = np.zeros((rows, n_words(cols) * 64), dtype=np.uint8)
    padded[:, :cols] = mat
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).copy()


def pack_sparse(rows: np.ndarray, cols: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Packed matrix with ones at ``(rows[i], cols[i])``; repeats cancel."""
    out = np.zeros((shape[0], n_words(shape[1])), dtype=np.uint64)
    cols = np.asarray(cols, dtype=np.uint64)
    np.bitwise_xor.at(out, (np.asarray(rows), (cols >> np.uint64(6)).astype(np.int64)),
                      np.uint64(1) << (cols & np.uint64(63)))
    return out


def unpack(packed: np.ndarray, ncols: int) -> np.ndarray:
    bits = np.unpackbits(np.ascontiguousarray(packed).view(np.uint8), axis=1, bitorder="little")
    return bits[:, :ncols].copy()


@njit(cache=True)
def _eliminate(a, ncols, full):
    """Row-reduce ``a`` in place; echelon form, or reduced form if ``full``.
    Returns ``(rank, pivot columns)``."""
    r, w = a.shape
    pivots = np.empty(min(r, ncols), dtype=np.int64)
    rank = 0
    for col in range(ncols):
        if rank == r:
            break
        wi = col >> 6
        bit = np.uint64(1) << np.uint64(col & 63)
        piv = -1
        for i in range(rank, r):
            if a[i, wi] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(w):
                tmp = a[piv, k]
                a[piv, k] = a[rank, k]
                a[rank, k] = tmp
        start = 0 if full else rank + 1
        for i in range(start, r):
            if i != rank and a[i, wi] & bit:
                for k in range(wi, w):
                    a[i, k] ^= a[rank, k]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank]


def rank_packed(packed: np.ndarray, ncols: int) -> int:
    work = np.array(packed, dtype=np.uint64, order="C")
    return int(_eliminate(work, ncols, False)[0])


def rank(mat) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return rank_packed(pack(mat), mat.shape[1])


def rref(mat) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form: the nonzero rows and their pivot columns."""
    mat = np.asarray(mat)
    rows, cols = mat.shape
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8), np.zeros(0, dtype=np.int64)
    work = pack(mat)
    r, piv = _eliminate(work, cols, True)
    return unpack(work[:r], cols), piv.copy()


def nullspace(mat) -> np.ndarray:
    """Basis (as rows) of ``{x : mat @ x = 0}``."""
    mat = np.asarray(mat)
    cols = mat.shape[1]
    red, piv = rref(mat)
    free = np.setdiff1d(np.arange(cols), piv)
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    # x[piv[i]] = sum over free f of red[i, f] * x[f]
    basis[:, piv] = red[:, free].T
    return basis


def matmul(a, b) -> np.ndarray:
    """Product over GF(2) of dense 0/1 matrices."""
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64) % 2).astype(np.uint8)
