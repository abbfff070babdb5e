"""Homology tables over GF(2) and the graded Euler characteristic."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complex import Block, GradedComplex
from .gf2 import differential_matrix, rank, reduce_complex, sparse_pivots
from .laurent import HalfLaurent
from .sparse import SparseComplex, build_sparse
from .states import DEFAULT_MAX_POINTS, StateSpace

# Above this many generators in one j-slice, sparse elimination beats dense rank.
RANK_LIMIT = 4096
METHODS = ("auto", "rank", "reduce", "sparse")


@dataclass
class HomologyTable:
    entries: dict[Block, int]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.entries = {k: v for k, v in sorted(self.entries.items()) if v}

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HomologyTable):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __getitem__(self, key: Block) -> int:
        return self.entries.get(key, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def i_range(self) -> list[int]:
        return sorted({i for i, _ in self.entries})

    def j_range(self) -> list[int]:
        """Every j of the common parity between the extremes."""
        js = sorted({j for _, j in self.entries})
        return list(range(js[0], js[-1] + 1, 2)) if js else []

    def to_json_obj(self) -> dict:
        return {"entries": [{"i": i, "j": j, "dim": d} for (i, j), d in self.entries.items()]}

    def render(self, style: str = "text") -> str:
        if style == "json":
            return json.dumps({"schema": 1, **self.to_json_obj()}, indent=2)
        if style == "tsv":
            return "\n".join(["i\tj\tdim"] + [f"{i}\t{j}\t{d}" for (i, j), d in self.entries.items()])
        if style == "latex":
            return self._latex()
        return self._grid()

    def _grid(self) -> str:
        if not self.entries:
            return "(zero)"
        ii, jj = self.i_range(), self.j_range()
        cells = [["i\\j"] + [str(j) for j in jj]]
        for i in ii:
            cells.append([str(i)] + [str(self[(i, j)]) if self[(i, j)] else "." for j in jj])
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def _latex(self) -> str:
        ii, jj = self.i_range(), self.j_range()
        lines = [r"\begin{tabular}{r|" + "c" * len(jj) + "}",
                 " & ".join([r"$i \backslash j$"] + [f"${j}$" for j in jj]) + r" \\ \hline"]
        for i in ii:
            row = [f"${i}$"] + [str(self[(i, j)]) if self[(i, j)] else "" for j in jj]
            lines.append(" & ".join(row) + r" \\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)


def _slice(cx: GradedComplex, j: int) -> GradedComplex:
    keys = [k for k in cx.basis if k[1] == j]
    return GradedComplex({k: cx.basis[k] for k in keys},
                         {k: cx.d[k] for k in keys if k in cx.d}, {})


def _slice_by_rank(cx: GradedComplex) -> dict[Block, int]:
    ranks = {key: rank(differential_matrix(cx, key)) for key in cx.basis}
    return {(i, j): len(b) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
            for (i, j), b in cx.basis.items()}


def _slice_by_reduction(cx: GradedComplex) -> dict[Block, int]:
    return reduce_complex(cx).dims()


def _slice_by_sparse(cx: GradedComplex) -> dict[Block, int]:
    """Level by level; pivot columns of one level drop out as rows of the next."""
    out = {}
    dead: set[int] = set()
    for key in sorted(cx.basis):
        cols = cx.differential(key)
        rows = {a: set(col) for a, col in enumerate(cols) if col and a not in dead}
        alive = len(cols) - len(dead)
        dead = set(sparse_pivots(rows))
        out[key] = alive - len(dead)
    return out


def _slice_homology(args: tuple[GradedComplex, str]) -> dict[Block, int]:
    cx, method = args
    if method == "auto":
        method = "rank" if cx.total_dim() <= RANK_LIMIT else "sparse"
    return {"rank": _slice_by_rank, "reduce": _slice_by_reduction, "sparse": _slice_by_sparse}[method](cx)


def homology_table(cx: GradedComplex, method: str = "auto", threads: int = 1) -> HomologyTable:
    """Dimensions of homology in every bidegree.

    ``method`` is ``"rank"`` (dense kernel minus image per block),
    ``"reduce"`` (Gaussian cancellation), ``"sparse"`` (sparse elimination)
    or ``"auto"``, which picks dense or sparse per j-slice by size.
    j-slices are independent, so ``threads > 1`` farms them out to worker
    processes; the result does not depend on the thread count.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    meta = {k: v for k, v in cx.meta.items() if k == "profile"}
    if cx.meta.get("reduced"):
        return HomologyTable(cx.dims(), meta)
    jobs = [(_slice(cx, j), method) for j in sorted({j for _, j in cx.basis})]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_slice_homology, jobs))
    else:
        parts = [_slice_homology(job) for job in jobs]
    entries: dict[Block, int] = {}
    for part in parts:
        for key, dim in part.items():
            if dim < 0:
                raise ArithmeticError(f"negative homology dimension at {key}; d^2 != 0?")
            entries[key] = dim
    return HomologyTable(entries, meta)


def graded_euler(table: HomologyTable) -> HalfLaurent:
    """Alternating sum over i of the graded dimensions, a polynomial in ``t`` (= q^j)."""
    return HalfLaurent([(2 * j, (-1) ** (i % 2) * d) for (i, j), d in table.entries.items()])


def chain_euler(cx: GradedComplex) -> HalfLaurent:
    """The same characteristic from chain-group dimensions."""
    return HalfLaurent([(2 * j, (-1) ** (i % 2) * len(b)) for (i, j), b in cx.basis.items()])


def _level_rows(src: np.ndarray, tgt: np.ndarray) -> dict[int, set[int]]:
    if not src.size:
        return {}
    cuts = np.flatnonzero(np.diff(src)) + 1
    heads = src[np.concatenate(([0], cuts))].tolist()
    return {g: set(run.tolist()) for g, run in zip(heads, np.split(tgt, cuts))}


def _sparse_slice(args) -> dict[int, int]:
    levels = args
    out = {}
    dead = np.zeros(0, dtype=np.int64)
    for i, gens, src, tgt in levels:
        keep = ~np.isin(src, dead, assume_unique=False)
        rows = _level_rows(src[keep], tgt[keep])
        alive = gens.size - np.isin(gens, dead).sum()
        dead = np.array(sparse_pivots(rows), dtype=np.int64)
        out[i] = int(alive) - dead.size
    return out


def sparse_homology(sc: SparseComplex, threads: int = 1) -> HomologyTable:
    """Homology of an array-backed complex, one j-slice at a time."""
    # Entries sorted by the (j, i) block of their source, then source id.
    block = (sc.j[sc.src] - sc.j.min()) * (sc.i.max() - sc.i.min() + 1) + (sc.i[sc.src] - sc.i.min())
    order = np.lexsort((sc.src, block))
    src, tgt, block = sc.src[order], sc.tgt[order], block[order]
    del order
    gen_order = np.lexsort((np.arange(sc.size), sc.i, sc.j))

    def slices():
        gj, gi = sc.j[gen_order], sc.i[gen_order]
        jcuts = np.flatnonzero(np.diff(gj)) + 1
        for part in np.split(np.arange(sc.size), jcuts):
            gens_j = gen_order[part]
            ii = gi[part]
            levels = []
            for i in np.unique(ii).tolist():
                gens = gens_j[ii == i]
                b = (int(sc.j[gens[0]]) - int(sc.j.min())) * (int(sc.i.max()) - int(sc.i.min()) + 1) \
                    + (i - int(sc.i.min()))
                lo, hi = np.searchsorted(block, b), np.searchsorted(block, b, side="right")
                levels.append((i, gens, src[lo:hi], tgt[lo:hi]))
            yield int(sc.j[gens_j[0]]), levels

    entries: dict[Block, int] = {}
    if threads > 1:
        jobs = list(slices())
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_sparse_slice, [lv for _, lv in jobs]))
        results = zip([j for j, _ in jobs], parts)
    else:
        results = ((j, _sparse_slice(lv)) for j, lv in slices())
    for j, part in results:
        for i, dim in part.items():
            entries[(i, j)] = dim
    return HomologyTable(entries, {"profile": sc.meta.get("profile")})


# From this many singular points on, the array-backed path is used.
SPARSE_FROM = 11


def divide_homology(divide, method: str = "auto", threads: int = 1,
                    max_points: int = DEFAULT_MAX_POINTS) -> HomologyTable:
    """Homology straight from a divide, choosing the assembly by size.

    Beyond the method names of ``homology_table`` this accepts ``"module"``:
    array assembly and cancellation over the marked component's algebra.
    """
    from .amodule import module_homology
    from .complex import build_complex
    if method == "auto":
        n = StateSpace(divide, max_points).n
        if n < SPARSE_FROM:
            return homology_table(build_complex(divide, max_points), "auto", threads)
        sc = build_sparse(divide, max_points)
        return module_homology(sc) if sc.marked is not None else sparse_homology(sc, threads)
    if method == "module":
        return module_homology(build_sparse(divide, max_points))
    return homology_table(build_complex(divide, max_points), method, threads)
