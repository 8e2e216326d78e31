# services/echelon.py
from __future__ import annotations

import logging
from typing import List

import numpy as np

log = logging.getLogger(__name__)

_LOW_BITS = 16
_LOW_MASK = (1 << _LOW_BITS) - 1
# inner-dimension block; keeps every partial sum below 2^63
_INNER_BLOCK = 4096


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    (a @ b) mod p for entries in [0, p), p < 2^31, in int64: a is split into
    16-bit halves and the inner dimension is processed in blocks.
    """
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, a.shape[1], _INNER_BLOCK):
        a_blk = a[:, start:start + _INNER_BLOCK]
        b_blk = b[start:start + _INNER_BLOCK]
        lo = ((a_blk & _LOW_MASK) @ b_blk) % p
        hi = ((a_blk >> _LOW_BITS) @ b_blk) % p
        out = (out + lo + (hi << _LOW_BITS) % p) % p
    return out


class ModularEchelon:
    """
    Row space over GF(p) kept in reduced row echelon form. Coordinates of a
    vector of the span are its entries at the pivot columns.
    """

    def __init__(self, ncols: int, p: int) -> None:
        self.ncols = ncols
        self.p = p
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: List[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, batch: np.ndarray) -> np.ndarray:
        """Reduce each row of batch against the current basis."""
        batch = np.atleast_2d(np.asarray(batch, dtype=np.int64)) % self.p
        if not self.pivots:
            return batch
        coeffs = batch[:, self.pivots]
        return (batch - matmul_mod(coeffs, self.rows, self.p)) % self.p

    def insert(self, vec: np.ndarray) -> bool:
        """Add vec to the span; False when it was already there."""
        v = self.reduce(vec)[0]
        nonzero = np.flatnonzero(v)
        if nonzero.size == 0:
            return False
        j = int(nonzero[0])
        inv = pow(int(v[j]), self.p - 2, self.p)
        v = (v * inv) % self.p
        if self.pivots:
            column = self.rows[:, j].copy()
            self.rows = (self.rows - np.outer(column, v) % self.p) % self.p
        self.rows = np.vstack([self.rows, v])
        self.pivots.append(j)
        return True

    def insert_batch(self, batch: np.ndarray) -> List[int]:
        """Insert rows in order; returns the indices of the rows that were new."""
        reduced = self.reduce(batch)
        added = []
        for i, row in enumerate(reduced):
            if row.any() and self.insert(row):
                added.append(i)
        return added

    def coordinates(self, vec: np.ndarray) -> np.ndarray:
        return (np.asarray(vec, dtype=np.int64) % self.p)[self.pivots]

    def contains(self, vec: np.ndarray) -> bool:
        return not self.reduce(vec)[0].any()


def symmetric_lift(x: int, p: int) -> int:
    """Representative of x mod p in (-p/2, p/2]."""
    x %= p
    return x - p if x > p // 2 else x
