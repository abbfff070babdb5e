"""Array-backed assembly of the complex for large divides.

Produces the same generators and matrix entries as ``build_complex`` but as
flat numpy arrays, so a 14-point divide with millions of generators fits in
memory.  Generator ``g`` of vertex ``w`` with sign code ``c`` has global id
``offset[w] + c``; matrix entries are pairs of global ids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import _T_TABLES, GradedComplex, _edge_parts
from .divide import AnyDivide, PointKind
from .states import CLOSED, DEFAULT_MAX_POINTS, StateSpace


@dataclass
class SparseComplex:
    word: np.ndarray  # per generator
    code: np.ndarray
    i: np.ndarray
    j: np.ndarray
    src: np.ndarray  # matrix entries, global ids
    tgt: np.ndarray
    meta: dict
    marked: np.ndarray | None = None  # per generator, code bit of the marked component

    @property
    def size(self) -> int:
        return len(self.word)

    def blocks(self) -> dict[tuple[int, int], np.ndarray]:
        """Global ids per ``(i, j)``, ascending (word, then code)."""
        key = self.i.astype(np.int64) * (1 << 20) + (self.j.astype(np.int64) + (1 << 19))
        order = np.argsort(key, kind="stable")
        sk = key[order]
        cuts = np.flatnonzero(np.diff(sk)) + 1
        out = {}
        for part in np.split(order, cuts):
            if part.size:
                g = part[0]
                out[(int(self.i[g]), int(self.j[g]))] = part
        return out

    def to_graded(self) -> GradedComplex:
        blocks = self.blocks()
        pos = np.empty(self.size, dtype=np.int64)
        for ids in blocks.values():
            pos[ids] = np.arange(ids.size)
        basis = {key: list(zip(self.word[ids].tolist(), self.code[ids].tolist()))
                 for key, ids in sorted(blocks.items())}
        d = {key: [[] for _ in ids] for key, ids in blocks.items()}
        order = np.lexsort((pos[self.tgt], self.src))
        for s, t in zip(self.src[order].tolist(), self.tgt[order].tolist()):
            d[(int(self.i[s]), int(self.j[s]))][pos[s]].append(int(pos[t]))
        return GradedComplex(basis, {k: [tuple(c) for c in v] for k, v in d.items()}, dict(self.meta))


LOCAL_SHIFT = 40


def _bit_table(nc: int) -> np.ndarray:
    """Rows are sign codes, column ``c`` is the bit of component ``c`` (MSB first)."""
    codes = np.arange(1 << nc, dtype=np.int64)
    return ((codes[:, None] >> (nc - 1 - np.arange(nc))) & 1).astype(np.int64)


def _placements(case: str, width: int, tshift: tuple[int, ...]) -> list[np.ndarray]:
    """Per output slot, the target code bits for each local input pattern (-1: none)."""
    table = _T_TABLES[case]
    out = []
    for slot in (0, 1):
        placed = np.full(4, -1, dtype=np.int64)
        for pattern, outs in table.items():
            if len(outs) > slot:
                idx = int("".join(map(str, pattern)), 2)
                placed[idx] = sum(b << sh for b, sh in zip(outs[slot], tshift))
        out.append(placed)
    return out


def build_sparse(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> SparseComplex:
    space = StateSpace(divide, max_points)
    n = space.n
    nv = 1 << n
    ncomp = np.empty(nv, dtype=np.int64)
    iv = np.empty(nv, dtype=np.int64)
    # An arc at a wall endpoint is always in an open component.
    anchor = space.geometry.ends[0] if space.geometry.ends else None
    mark = np.zeros(nv, dtype=np.int64)
    bit_tables: dict[int, np.ndarray] = {}
    j_parts = []
    for w in range(nv):
        sc = space.components(w)
        g = space.gradings(w)
        nc = len(sc.components)
        ncomp[w], iv[w] = nc, g.i
        if anchor is not None:
            mark[w] = 1 << (nc - 1 - sc.comp_of_arc[anchor])
        weight = np.array([2 if kd == CLOSED else 1 for kd in sc.kinds], dtype=np.int64)
        bt = bit_tables.get(nc)
        if bt is None:
            bt = bit_tables[nc] = _bit_table(nc)
        j_parts.append(g.k - weight.sum() + 2 * (bt @ weight))
    sizes = 1 << ncomp
    offset = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    word = np.repeat(np.arange(nv, dtype=np.int64), sizes)
    code = np.arange(int(sizes.sum()), dtype=np.int64) - np.repeat(offset, sizes)
    i_arr = np.repeat(iv, sizes)
    j_arr = np.concatenate(j_parts) if j_parts else np.empty(0, dtype=np.int64)
    # Per edge, one integer column packs the non-local code transfer in the
    # low bits and the local input pattern above LOCAL_SHIFT.
    tables: dict = {}
    groups: dict[int, list] = {}
    negative = [kind is PointKind.NEGATIVE for kind in space.kinds]
    for w in range(nv):
        ns = int(ncomp[w])
        for t in range(n):
            if (w >> (n - 1 - t)) & 1 != negative[t]:
                continue
            case, s_local, t_local, corr = _edge_parts(space, w, t)
            w2 = w ^ (1 << (n - 1 - t))
            nt = int(ncomp[w2])
            column = [0] * ns
            for s_id, t_id in corr.items():
                column[s_id] = 1 << (nt - 1 - t_id)
            width = len(s_local)
            for q, s_id in enumerate(s_local):
                column[s_id] = 1 << (LOCAL_SHIFT + width - 1 - q)
            key = (case, width, tuple(nt - 1 - c for c in t_local))
            tid = tables.get(key)
            if tid is None:
                tid = tables[key] = len(tables)
            groups.setdefault(ns, []).append((column, w, w2, tid))
    placed = np.full((max(len(tables), 1), 2, 4), -1, dtype=np.int64)
    for (case, width, tshift), tid in tables.items():
        placed[tid] = _placements(case, width, tshift)
    src_parts, tgt_parts = [], []
    low_mask = (1 << LOCAL_SHIFT) - 1
    for ns, edges in sorted(groups.items()):
        cols = np.array([e[0] for e in edges], dtype=np.int64).T.reshape(ns, len(edges))
        ws = np.array([e[1] for e in edges], dtype=np.int64)
        w2s = np.array([e[2] for e in edges], dtype=np.int64)
        tids = np.array([e[3] for e in edges], dtype=np.int64)
        packed = bit_tables[ns] @ cols  # (codes, edges)
        base, local = packed & low_mask, packed >> LOCAL_SHIFT
        codes = np.arange(1 << ns, dtype=np.int64)[:, None]
        for slot in (0, 1):
            hit = placed[tids[None, :], slot, local]
            keep = hit >= 0
            src_parts.append((offset[ws][None, :] + codes)[keep])
            tgt_parts.append((offset[w2s][None, :] + (base | hit))[keep])
    src = np.concatenate(src_parts) if src_parts else np.empty(0, dtype=np.int64)
    tgt = np.concatenate(tgt_parts) if tgt_parts else np.empty(0, dtype=np.int64)
    meta = {"profile": space.profile, "n": n, "shift": (0, 0)}
    marked = np.repeat(mark, sizes) if anchor is not None else None
    return SparseComplex(word, code, i_arr, j_arr, src, tgt, meta, marked)
