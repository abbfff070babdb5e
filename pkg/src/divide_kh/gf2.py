"""Linear algebra over GF(2) with bit-packed rows.

Rows are numpy ``uint64`` words, least significant bit of word 0 is
column 0, padding bits past ``cols`` are always zero.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import GradedComplex

WORD = 64


@dataclass
class BitMatrix:
    rows: int
    cols: int
    data: np.ndarray  # shape (rows, words), dtype uint64

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, max(1, -(-cols // WORD))), dtype=np.uint64))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        m = cls.zeros(rows, cols)
        for r, row in enumerate(dense):
            for c, v in enumerate(row):
                if v & 1:
                    m.set(r, c)
        return m

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Iterable[int]], cols: int) -> "BitMatrix":
        """Rows given as lists of column indices; repeated indices cancel mod 2."""
        m = cls.zeros(len(rows), cols)
        for r, row in enumerate(rows):
            for c in row:
                m.flip(r, c)
        return m

    def set(self, r: int, c: int) -> None:
        self.data[r, c // WORD] |= np.uint64(1) << np.uint64(c % WORD)

    def flip(self, r: int, c: int) -> None:
        if not 0 <= c < self.cols:
            raise IndexError(f"column {c} out of range for {self.cols} columns")
        self.data[r, c // WORD] ^= np.uint64(1) << np.uint64(c % WORD)

    def get(self, r: int, c: int) -> int:
        return int((int(self.data[r, c // WORD]) >> (c % WORD)) & 1)

    def to_dense(self) -> list[list[int]]:
        return [[self.get(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def padding_clear(self) -> bool:
        extra = self.data.shape[1] * WORD - self.cols
        if extra == 0 or self.rows == 0:
            return True
        mask = ~np.uint64(0) << np.uint64(WORD - extra)
        return not np.any(self.data[:, -1] & mask)


def rank(m: BitMatrix) -> int:
    """Rank by row reduction, pivoting on columns in order."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a = m.data.copy()
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        w, bit = c // WORD, np.uint64(1) << np.uint64(c % WORD)
        hits = np.flatnonzero(a[r:, w] & bit)
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, w] & bit)
        if below.size:
            a[below] ^= a[r]
        r += 1
    return r


def kernel_dim(m: BitMatrix) -> int:
    return m.cols - rank(m)


def naive_rank(dense: Sequence[Sequence[int]]) -> int:
    """Reference eliminator on lists of 0/1, kept independent of BitMatrix."""
    a = [[x & 1 for x in row] for row in dense]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def differential_matrix(cx: GradedComplex, key: tuple[int, int]) -> BitMatrix:
    """``d_{i,j}`` as a matrix with one row per source generator."""
    i, j = key
    ncols = len(cx.basis.get((i + 1, j), ()))
    return BitMatrix.from_sparse_rows(cx.differential(key), ncols)


def reduce_complex(cx: GradedComplex) -> GradedComplex:
    """Gaussian cancellation until no matrix entry is left.

    Blocks are processed by ascending ``(j, i)``; at each level the first
    surviving generator in basis order is paired with its smallest target.
    Cancelling ``a -> b`` removes both and adds ``x -> y`` for every
    ``x -> b`` and ``a -> y``.  Over GF(2) every nonzero entry is a unit, so
    the result has zero differential and its basis sizes are the homology.
    """
    basis_out: dict[tuple[int, int], list] = {}
    d_out: dict[tuple[int, int], list] = {}
    for j in sorted({j for (_, j) in cx.basis}):
        levels = sorted(i for (i, jj) in cx.basis if jj == j)
        for key, labels in _cancel_block(cx, j, levels).items():
            basis_out[key] = labels
            d_out[key] = [()] * len(labels)
    meta = dict(cx.meta)
    meta["reduced"] = True
    return GradedComplex(dict(sorted(basis_out.items())), d_out, meta)


def _cancel_block(cx: GradedComplex, j: int, levels: list[int]) -> dict[tuple[int, int], list]:
    out_sets: dict[tuple[int, int], list[set]] = {}
    in_sets: dict[tuple[int, int], list[set]] = {}
    for i in levels:
        key = (i, j)
        out_sets[key] = [set(col) for col in cx.differential(key)]
        in_sets[key] = [set() for _ in cx.basis[key]]
    for i in levels:
        nxt = in_sets.get((i + 1, j))
        if nxt is None:
            continue
        for a, col in enumerate(out_sets[(i, j)]):
            for b in col:
                nxt[b].add(a)
    alive = {key: [True] * len(cx.basis[key]) for key in out_sets}
    for i in levels:
        key, up = (i, j), (i + 1, j)
        outs, ins = out_sets[key], in_sets[key]
        if up not in out_sets:
            continue
        up_outs, up_ins = out_sets[up], in_sets[up]
        down_outs = out_sets.get((i - 1, j))
        for a in range(len(outs)):
            if not alive[key][a] or not outs[a]:
                continue
            b = min(outs[a])
            # Detach a from its predecessors and b from its successors.
            for x in ins[a]:
                down_outs[x].discard(a)
            for y in up_outs[b]:
                nxt_ins = in_sets[(i + 2, j)][y]
                nxt_ins.discard(b)
            a_targets = outs[a] - {b}
            b_sources = up_ins[b] - {a}
            for y in a_targets:
                up_ins[y].discard(a)
            for x in b_sources:
                row = outs[x]
                row.discard(b)
                for y in a_targets:
                    if y in row:
                        row.remove(y)
                        up_ins[y].discard(x)
                    else:
                        row.add(y)
                        up_ins[y].add(x)
            outs[a] = set()
            ins[a] = set()
            up_outs[b] = set()
            up_ins[b] = set()
            alive[key][a] = False
            alive[up][b] = False
    return {key: [lab for lab, ok in zip(cx.basis[key], flags) if ok]
            for key, flags in alive.items()}


def sparse_pivots(rows: dict[int, set[int]]) -> list[int]:
    """Row-reduce a sparse GF(2) matrix in place; returns the pivot columns.

    ``rows`` maps a row id to its set of column ids and is consumed.  Pivots
    follow a Markowitz-style order to limit fill-in: any column with a single
    entry first (no fill at all), otherwise the shortest row, pivoting on its
    sparsest column.  The number of pivots is the rank.
    """
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col = cols.get(c)
            if col is None:
                cols[c] = {r}
            else:
                col.add(r)
    heap = [(len(row), r) for r, row in rows.items() if row]
    heapq.heapify(heap)
    singles = [c for c, col in cols.items() if len(col) == 1]
    pivots: list[int] = []

    def eliminate(r: int, c: int) -> None:
        row = rows.pop(r)
        pivots.append(c)
        col = cols.pop(c)
        col.discard(r)
        row.discard(c)
        for cc in row:
            s = cols[cc]
            s.discard(r)
            if len(s) == 1:
                singles.append(cc)
        for rr in col:
            other = rows[rr]
            other.discard(c)
            for cc in row:
                s = cols[cc]
                if cc in other:
                    other.discard(cc)
                    s.discard(rr)
                    if len(s) == 1:
                        singles.append(cc)
                else:
                    other.add(cc)
                    s.add(rr)
            if other:
                heapq.heappush(heap, (len(other), rr))
            else:
                del rows[rr]

    while True:
        while singles:
            c = singles.pop()
            col = cols.get(c)
            if col is not None and len(col) == 1:
                (r,) = col
                eliminate(r, c)
        if not heap:
            break
        length, r = heapq.heappop(heap)
        row = rows.get(r)
        if not row:
            continue
        if len(row) != length:
            heapq.heappush(heap, (len(row), r))
            continue
        eliminate(r, min(row, key=lambda c: len(cols[c])))
    return pivots


def sparse_rank(rows) -> int:
    """Rank of a matrix given as rows of column indices (repeats cancel mod 2)."""
    packed = {}
    for r, row in enumerate(rows):
        s: set[int] = set()
        for c in row:
            s ^= {c}
        if s:
            packed[r] = s
    return len(sparse_pivots(packed))
