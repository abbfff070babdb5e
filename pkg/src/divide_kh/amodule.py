"""Homology through the action of a marked open component.

A component through a wall endpoint is open in every state, and every
transition map commutes with multiplication by ``X = v-`` on that factor.
So the complex is free over ``A = Z2[X]/(X^2)`` on the generators whose
marked sign is ``+``, with matrix entries ``1``, ``X`` or ``1 + X``.

Entries are cancelled over ``A`` with unit pivots only.  What is left is
``X * D`` for a GF(2) matrix ``D``; a generator ``g`` then contributes a
cycle ``g+`` unless ``D`` hits something from it, and a cycle ``g-`` that is
a boundary exactly when it lies in the image of ``D``.

Coefficients are packed as two bits: bit 0 the constant, bit 1 the ``X`` term.
"""

from __future__ import annotations

import heapq

import numpy as np

from .gf2 import sparse_pivots
from .homology import HomologyTable
from .sparse import SparseComplex

UNIT, X = 1, 2
# (a0 + a1 X)(b0 + b1 X) = a0 b0 + (a0 b1 + a1 b0) X
MUL = [[(a & b & 1) | ((((a & 1) & (b >> 1)) ^ ((a >> 1) & (b & 1))) << 1) for b in range(4)]
       for a in range(4)]


class NoMarkedComponent(ValueError):
    pass


def module_entries(sc: SparseComplex) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(plus, src, tgt, coef)``: the '+' generators and the A-valued matrix on them."""
    if sc.marked is None:
        raise NoMarkedComponent("the divide has no wall endpoint to mark")
    plus = (sc.code & sc.marked) != 0
    sel = plus[sc.src]
    s, t = sc.src[sel], sc.tgt[sel]
    t_plus = plus[t]
    partner = np.where(t_plus, t, t + sc.marked[t])
    coef = np.where(t_plus, UNIT, X).astype(np.int64)
    key = s * sc.size + partner
    order = np.argsort(key, kind="stable")
    key, coef = key[order], coef[order]
    if key.size:
        starts = np.concatenate(([0], np.flatnonzero(np.diff(key)) + 1))
        coef = np.bitwise_xor.reduceat(coef, starts)
        key = key[starts]
    keep = coef != 0
    key, coef = key[keep], coef[keep]
    return plus, key // sc.size, key % sc.size, coef


def _unit_eliminate(rows: dict[int, dict[int, int]]) -> list[tuple[int, int]]:
    """Cancel unit entries until none is left; ``rows`` keeps the residue."""
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col = cols.get(c)
            if col is None:
                cols[c] = {r}
            else:
                col.add(r)
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    singles = [c for c, col in cols.items() if len(col) == 1]
    pivots: list[tuple[int, int]] = []

    def eliminate(r: int, c: int) -> None:
        row = rows.pop(r)
        inv = row.pop(c)  # units are their own inverses
        pivots.append((r, c))
        col = cols.pop(c)
        col.discard(r)
        for cc in row:
            s = cols[cc]
            s.discard(r)
            if len(s) == 1:
                singles.append(cc)
        for rr in col:
            other = rows[rr]
            f = MUL[other.pop(c)][inv]
            for cc, v in row.items():
                add = MUL[f][v]
                if not add:
                    continue
                old = other.get(cc, 0)
                new = old ^ add
                if new:
                    other[cc] = new
                    if not old:
                        cols[cc].add(rr)
                else:
                    del other[cc]
                    s = cols[cc]
                    s.discard(rr)
                    if len(s) == 1:
                        singles.append(cc)
            heapq.heappush(heap, (len(other), rr))

    while True:
        while singles:
            c = singles.pop()
            col = cols.get(c)
            if col is not None and len(col) == 1:
                (r,) = col
                if rows[r][c] & UNIT:
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
        units = [c for c, v in row.items() if v & UNIT]
        if units:
            eliminate(r, min(units, key=lambda c: len(cols[c])))
    return pivots


def module_homology(sc: SparseComplex) -> HomologyTable:
    plus, src, tgt, coef = module_entries(sc)
    gens = np.flatnonzero(plus)
    gi, gj = sc.i, sc.j
    order = np.lexsort((src, gi[src]))
    src, tgt, coef = src[order], tgt[order], coef[order]
    levels = np.unique(gi[gens]).tolist()
    src_level = gi[src]
    survivors: dict[int, np.ndarray] = {}
    residue: dict[int, dict[int, set[int]]] = {}
    dead_rows: set[int] = set()
    for i in levels:
        lo, hi = np.searchsorted(src_level, i), np.searchsorted(src_level, i, side="right")
        s, t, c = src[lo:hi].tolist(), tgt[lo:hi].tolist(), coef[lo:hi].tolist()
        rows: dict[int, dict[int, int]] = {}
        for a, b, v in zip(s, t, c):
            if a in dead_rows:
                continue
            row = rows.get(a)
            if row is None:
                rows[a] = {b: v}
            else:
                row[b] = v
        pivots = _unit_eliminate(rows)
        pivot_rows = {r for r, _ in pivots}
        prev = residue.get(i - 1)
        if prev:
            for row in prev.values():
                row.difference_update(pivot_rows)
        level_gens = gens[gi[gens] == i]
        survivors[i] = np.array([g for g in level_gens.tolist()
                                 if g not in dead_rows and g not in pivot_rows], dtype=np.int64)
        residue[i] = {r: set(row) for r, row in rows.items() if row}
        dead_rows = {c for _, c in pivots}
    entries: dict[tuple[int, int], int] = {}
    for i in levels:
        surv = survivors[i]
        ranks: dict[int, int] = {}
        by_j: dict[int, dict[int, set[int]]] = {}
        for r, row in residue[i].items():
            if row:
                by_j.setdefault(int(gj[r]), {})[r] = row
        for j, rows in by_j.items():
            ranks[j] = len(sparse_pivots(rows))
        residue[i] = ranks
        for j in np.unique(gj[surv]).tolist():
            count = int(np.count_nonzero(gj[surv] == j))
            entries[(i, j)] = entries.get((i, j), 0) + count - ranks.get(j, 0)
            # The '-' copy of a generator at j sits at j - 2.
            entries[(i, j - 2)] = entries.get((i, j - 2), 0) + count
    for i in levels:
        for j, rk in residue.get(i, {}).items():
            # D from level i rows at j hits '-' copies at level i + 1, degree j.
            entries[(i + 1, j)] = entries.get((i + 1, j), 0) - rk
    if any(v < 0 for v in entries.values()):
        raise ArithmeticError("negative homology dimension in module reduction")
    return HomologyTable(entries, {"profile": sc.meta.get("profile")})
