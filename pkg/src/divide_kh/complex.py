"""The bigraded chain complex of enhanced states over GF(2).

Generators are labelled ``(word, code)``: ``word`` is the cube vertex as an
integer over the free points (first point most significant) and ``code``
packs the component signs, component 0 in the most significant of
``ncomp`` bits, 1 meaning ``+``.  Within each ``(i, j)`` block the basis is
sorted by word, then code.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable

from .divide import AnyDivide, PartialDivide, PointKind, as_partial
from .frobenius import sign_table
from .states import CLOSED, DEFAULT_MAX_POINTS, OPEN, InternalError, StateSpace, int_to_word, word_to_int

Block = tuple[int, int]

_T_TABLES = {name: sign_table(name) for name in ("T1", "T2", "T3", "T4", "T5", "T6", "T7")}


class UnsupportedSaddle(RuntimeError):
    pass


class GradingMismatch(ValueError):
    pass


class NotAChainMap(ValueError):
    pass


@dataclass(frozen=True)
class EdgeCase:
    point: int
    source_word: tuple[int, ...]
    target_word: tuple[int, ...]
    case: str
    source_local: tuple[int, ...]  # component ids in tensor-factor order
    target_local: tuple[int, ...]
    correspondence: dict = field(hash=False)  # non-local source id -> target id


@dataclass
class GradedComplex:
    """Bases per ``(i, j)`` and a sparse differential.

    ``d[(i, j)][a]`` is the sorted tuple of indices into ``basis[(i + 1, j)]``
    hit by basis element ``a`` of block ``(i, j)``.
    """

    basis: dict[Block, list[Hashable]]
    d: dict[Block, list[tuple[int, ...]]]
    meta: dict = field(default_factory=dict)

    def dims(self) -> dict[Block, int]:
        return {key: len(b) for key, b in sorted(self.basis.items()) if b}

    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def levels(self) -> list[int]:
        return sorted({i for (i, _), b in self.basis.items() if b})

    def differential(self, key: Block) -> list[tuple[int, ...]]:
        return self.d.get(key) or [()] * len(self.basis.get(key, ()))

    def nonzero_entries(self) -> int:
        return sum(len(col) for cols in self.d.values() for col in cols)

    def triples(self) -> list[tuple[Block, int, int]]:
        """Matrix entries as ``((i, j), source index, target index)``."""
        return [(key, a, b) for key in sorted(self.d) for a, col in enumerate(self.d[key]) for b in col]

    def labeled(self) -> dict[Block, dict[Hashable, frozenset]]:
        """Differential keyed by labels, for comparisons up to basis order."""
        out = {}
        for key, labels in self.basis.items():
            if not labels:
                continue
            tgt = self.basis.get((key[0] + 1, key[1]), [])
            out[key] = {lab: frozenset(tgt[b] for b in col)
                        for lab, col in zip(labels, self.differential(key))}
        return out

    def relabel(self, fn) -> "GradedComplex":
        return GradedComplex({k: [fn(lab) for lab in v] for k, v in self.basis.items()},
                             dict(self.d), dict(self.meta))


def _local_order(ids, kinds) -> tuple[int, ...]:
    return tuple(sorted(ids, key=lambda c: (kinds[c] != OPEN, c)))


_CROSSING_CASES = {
    ((OPEN, OPEN), (OPEN, OPEN)): "T1",
    ((OPEN,), (CLOSED, OPEN)): "T2",
    ((CLOSED, OPEN), (OPEN,)): "T3",
    ((CLOSED,), (CLOSED, CLOSED)): "T4",
    ((CLOSED, CLOSED), (CLOSED,)): "T5",
}
_TURNBACK_CASES = {((OPEN, OPEN), (OPEN,)): "T7", ((OPEN,), (CLOSED,)): "T6"}


def _edge_parts(space: StateSpace, word: int, t: int):
    """``(case, source_local, target_local, correspondence)`` for one cube edge."""
    n = space.n
    target = word ^ (1 << (n - 1 - t))
    src, tgt = space.components(word), space.components(target)
    site = space.site(t)
    s_local = {src.comp_of_arc[a] for a in site}
    t_local = {tgt.comp_of_arc[a] for a in site}
    s_kinds, t_kinds = src.kinds, tgt.kinds
    s_sig = tuple(sorted(s_kinds[c] for c in s_local))
    t_sig = tuple(sorted(t_kinds[c] for c in t_local))
    cases = _CROSSING_CASES if len(site) == 4 else _TURNBACK_CASES
    case = cases.get((s_sig, t_sig))
    if case is None:
        raise UnsupportedSaddle(
            f"point {t} from word {int_to_word(word, n)}: {list(s_sig)} -> {list(t_sig)} is not a T1-T7 case")
    corr = {}
    for comp in src.components:
        if comp.id in s_local:
            continue
        c2 = tgt.comp_of_arc[comp.arcs[0]]
        if c2 in t_local or tgt.components[c2].arcs != comp.arcs:
            raise InternalError(f"non-local component {comp.id} changed across point {t}")
        corr[comp.id] = c2
    if len(corr) + len(t_local) != len(tgt.components):
        raise InternalError("component correspondence is not a bijection")
    return case, _local_order(s_local, s_kinds), _local_order(t_local, t_kinds), corr


def _check_direction(space: StateSpace, word: int, t: int) -> None:
    bit = (word >> (space.n - 1 - t)) & 1
    if bit != (1 if space.kinds[t] is PointKind.NEGATIVE else 0):
        raise ValueError(f"point {t} cannot advance from word {int_to_word(word, space.n)}")


def _classify(space: StateSpace, word: int, t: int) -> EdgeCase:
    _check_direction(space, word, t)
    case, s_local, t_local, corr = _edge_parts(space, word, t)
    target = word ^ (1 << (space.n - 1 - t))
    return EdgeCase(t, int_to_word(word, space.n), int_to_word(target, space.n), case, s_local, t_local, corr)


def classify_edge(divide: AnyDivide, word, point: int) -> EdgeCase:
    """Classify the cube edge leaving ``word`` at free point ``point``."""
    space = StateSpace(divide, max_points=10**9)
    if len(word) != space.n:
        raise ValueError(f"word has length {len(word)}, expected {space.n}")
    return _classify(space, word_to_int(word), point)


class _EdgeMap:
    """Sign-code transfer along one classified edge."""

    __slots__ = ("moves", "local_src", "table", "local_tgt")

    def __init__(self, edge: EdgeCase, ns: int, nt: int) -> None:
        self.moves = [(ns - 1 - s, nt - 1 - t) for s, t in edge.correspondence.items()]
        self.local_src = [ns - 1 - c for c in edge.source_local]
        self.local_tgt = [nt - 1 - c for c in edge.target_local]
        self.table = _T_TABLES[edge.case]

    def __call__(self, code: int) -> list[int]:
        base = 0
        for s, t in self.moves:
            if (code >> s) & 1:
                base |= 1 << t
        outs = self.table[tuple((code >> s) & 1 for s in self.local_src)]
        res = []
        for out in outs:
            v = base
            for b, t in zip(out, self.local_tgt):
                if b:
                    v |= 1 << t
            res.append(v)
        return res


def _j_values(kinds: tuple[str, ...], k: int) -> list[int]:
    nc = len(kinds)
    weight = [2 if kd == CLOSED else 1 for kd in kinds]
    out = []
    for code in range(1 << nc):
        j = k
        for c in range(nc):
            j += weight[c] if (code >> (nc - 1 - c)) & 1 else -weight[c]
        out.append(j)
    return out


class _Indexer:
    """Assigns every generator of a state space its ``(i, j)`` block index."""

    def __init__(self, space: StateSpace) -> None:
        self.space = space
        self.basis: dict[Block, list] = {}
        self.jv: list[list[int]] = []
        self.pos: list[list[int]] = []
        self.iv: list[int] = []
        self.nc: list[int] = []
        for w in range(1 << space.n):
            sc = space.components(w)
            g = space.gradings(w)
            js = _j_values(sc.kinds, g.k)
            pos = []
            for code, j in enumerate(js):
                blk = self.basis.setdefault((g.i, j), [])
                pos.append(len(blk))
                blk.append((w, code))
            self.iv.append(g.i)
            self.nc.append(len(sc.kinds))
            self.jv.append(js)
            self.pos.append(pos)


def build_complex(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> GradedComplex:
    space = StateSpace(divide, max_points)
    idx = _Indexer(space)
    n = space.n
    d: dict[Block, list[list[int]]] = {key: [[] for _ in b] for key, b in idx.basis.items()}
    for w in range(1 << n):
        ns = idx.nc[w]
        for t in range(n):
            bit = (w >> (n - 1 - t)) & 1
            if bit != (1 if space.kinds[t] is PointKind.NEGATIVE else 0):
                continue
            edge = _classify(space, w, t)
            w2 = w ^ (1 << (n - 1 - t))
            emap = _EdgeMap(edge, ns, idx.nc[w2])
            i, jv, pos = idx.iv[w], idx.jv[w], idx.pos[w]
            jv2, pos2 = idx.jv[w2], idx.pos[w2]
            for code in range(1 << ns):
                col = d[(i, jv[code])][pos[code]]
                for code2 in emap(code):
                    if jv2[code2] != jv[code]:
                        raise InternalError(f"edge at point {t} does not preserve j")
                    col.append(pos2[code2])
    frozen = {key: [tuple(sorted(c)) for c in cols] for key, cols in d.items()}
    meta = {"profile": space.profile, "n": n, "shift": (0, 0)}
    return GradedComplex(dict(sorted(idx.basis.items())), frozen, meta)


def check_d_squared(cx: GradedComplex) -> bool:
    for (i, j), cols in cx.d.items():
        nxt = cx.d.get((i + 1, j))
        if nxt is None:
            continue
        for col in cols:
            hits = Counter(c2 for c in col for c2 in nxt[c])
            if any(v % 2 for v in hits.values()):
                return False
    return True


def check_bidegrees(cx: GradedComplex) -> bool:
    """Every matrix entry goes from (i, j) to (i + 1, j) and targets exist."""
    for (i, j), cols in cx.d.items():
        size = len(cx.basis.get((i + 1, j), ()))
        if len(cols) != len(cx.basis.get((i, j), ())):
            return False
        if any(b >= size for col in cols for b in col):
            return False
    return True


def shift(cx: GradedComplex, k: int = 0, l: int = 0) -> GradedComplex:
    """``C[k]{l}``: the block at ``(i, j)`` moves to ``(i + k, j + l)``."""
    basis = {(i + k, j + l): list(v) for (i, j), v in cx.basis.items()}
    d = {(i + k, j + l): list(v) for (i, j), v in cx.d.items()}
    meta = dict(cx.meta)
    h, g = meta.get("shift", (0, 0))
    meta["shift"] = (h + k, g + l)
    return GradedComplex(basis, d, meta)


@dataclass
class ChainMap:
    """A degree-preserving map; ``maps[(i, j)][a]`` lists target indices in block ``(i, j)``."""

    source: GradedComplex
    target: GradedComplex
    maps: dict[Block, list[tuple[int, ...]]]

    def column(self, key: Block, a: int) -> tuple[int, ...]:
        cols = self.maps.get(key)
        return cols[a] if cols else ()


def check_chain_map(f: ChainMap) -> None:
    S, T = f.source, f.target
    for key, cols in f.maps.items():
        if len(cols) != len(S.basis.get(key, ())):
            raise GradingMismatch(f"map block {key} does not match the source basis")
        size = len(T.basis.get(key, ()))
        if any(b >= size for col in cols for b in col):
            raise GradingMismatch(f"map block {key} leaves the target block")
    for key, labels in S.basis.items():
        i, j = key
        up = (i + 1, j)
        for a in range(len(labels)):
            lhs = Counter(c for b in f.column(key, a) for c in T.differential(key)[b])
            rhs = Counter(c for b in S.differential(key)[a] for c in f.column(up, b))
            if {x for x, v in lhs.items() if v % 2} != {x for x, v in rhs.items() if v % 2}:
                raise NotAChainMap(f"f d != d f at block {key}, generator {a}")


def cone(f: ChainMap, check: bool = True) -> GradedComplex:
    """Mapping cone: ``C_i = S_i + T_{i-1}`` with differential ``[[dS, 0], [f, dT]]``."""
    if check:
        check_chain_map(f)
    S, T = f.source, f.target
    keys = {k for k, v in S.basis.items() if v} | {(i + 1, j) for (i, j), v in T.basis.items() if v}
    basis, d = {}, {}
    for key in sorted(keys):
        i, j = key
        s_part = S.basis.get(key, [])
        t_part = T.basis.get((i - 1, j), [])
        basis[key] = [("src", lab) for lab in s_part] + [("tgt", lab) for lab in t_part]
        offset = len(S.basis.get((i + 1, j), []))
        cols = []
        ds = S.differential(key)
        for a in range(len(s_part)):
            cols.append(tuple(ds[a]) + tuple(offset + b for b in f.column(key, a)))
        dt = T.differential((i - 1, j))
        for a in range(len(t_part)):
            cols.append(tuple(offset + b for b in dt[a]))
        d[key] = cols
    return GradedComplex(basis, d, {"cone": True})


@dataclass(frozen=True)
class SplitCone:
    d0: PartialDivide
    d1: PartialDivide
    degree_shifts: tuple[int, int]  # applied to d0 and d1 respectively
    homological_shift: int
    direction: str  # "0->1" or "1->0"

    @property
    def source_bit(self) -> int:
        return 0 if self.direction == "0->1" else 1


def split_cone(divide: AnyDivide, point: int) -> SplitCone:
    """The two pieces of the single-point splitting at free point ``point``."""
    pd = as_partial(divide)
    space = StateSpace(pd, max_points=10**9)
    if not 0 <= point < space.n:
        raise ValueError(f"point {point} out of range for {space.n} free points")
    kind = space.kinds[point]
    d0, d1 = pd.pin(point, 0), pd.pin(point, 1)
    if kind is PointKind.POSITIVE:
        return SplitCone(d0, d1, (2, 4), 0, "0->1")
    if kind is PointKind.NEGATIVE:
        return SplitCone(d0, d1, (-2, -4), -1, "1->0")
    return SplitCone(d0, d1, (1, 2), 0, "0->1")


def _insert_bit(word: int, n_rest: int, t: int, bit: int) -> int:
    """Insert ``bit`` so that it becomes position ``t`` of an ``n_rest + 1`` bit word."""
    low_len = n_rest - t
    high, low = word >> low_len, word & ((1 << low_len) - 1)
    return (((high << 1) | bit) << low_len) | low


def splitting_morphism(divide: AnyDivide, point: int, max_points: int = DEFAULT_MAX_POINTS):
    """Build both pieces (shifted) and the connecting morphism at ``point``.

    Returns ``(split, source_complex, target_complex, chain_map)`` where the
    source is the piece on the ``split.source_bit`` side.
    """
    split = split_cone(divide, point)
    space = StateSpace(divide, max_points)
    n_rest = space.n - 1
    c0 = shift(build_complex(split.d0, max_points), 0, split.degree_shifts[0])
    c1 = shift(build_complex(split.d1, max_points), 0, split.degree_shifts[1])
    src, tgt = (c0, c1) if split.source_bit == 0 else (c1, c0)
    lookup = {}
    for key, labels in tgt.basis.items():
        for b, lab in enumerate(labels):
            lookup[lab] = (key, b)
    ncomp = {}
    maps: dict[Block, list[tuple[int, ...]]] = {}
    for key, labels in src.basis.items():
        cols = []
        for w, code in labels:
            full = _insert_bit(w, n_rest, point, split.source_bit)
            edge = _classify(space, full, point)
            w2 = full ^ (1 << (space.n - 1 - point))
            ns = ncomp.setdefault(full, len(space.components(full).components))
            nt = ncomp.setdefault(w2, len(space.components(w2).components))
            outs = []
            for code2 in _EdgeMap(edge, ns, nt)(code):
                # Removing the pinned bit leaves the remaining word unchanged.
                k2, b = lookup[(w, code2)]
                if k2 != key:
                    raise GradingMismatch(f"connecting map leaves block {key}")
                outs.append(b)
            cols.append(tuple(sorted(outs)))
        maps[key] = cols
    return split, src, tgt, ChainMap(src, tgt, maps)


def cone_of_split(divide: AnyDivide, point: int, max_points: int = DEFAULT_MAX_POINTS) -> GradedComplex:
    """Reassemble the complex from its splitting at ``point``, relabelled to full words."""
    split, src, tgt, f = splitting_morphism(divide, point, max_points)
    n_rest = StateSpace(divide, max_points).n - 1
    tgt_bit = 1 - split.source_bit

    def relabel(lab):
        side, (w, code) = lab
        bit = split.source_bit if side == "src" else tgt_bit
        return (_insert_bit(w, n_rest, point, bit), code)

    cx = shift(cone(f), split.homological_shift, 0)
    return cx.relabel(relabel)


def chain_summands(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> dict[int, list[tuple[int, int, int, int]]]:
    """Per homological level, ``(k, op, cl, count)`` summands of the chain group.

    A state with ``op`` open and ``cl`` closed components contributes the
    summand ``(A^op (x) B^cl){k}``.
    """
    space = StateSpace(divide, max_points)
    tally: Counter = Counter()
    for w in range(1 << space.n):
        sc = space.components(w)
        g = space.gradings(w)
        tally[(g.i, g.k, sc.op, sc.cl)] += 1
    out: dict[int, list] = {}
    for (i, k, op, cl), count in sorted(tally.items()):
        out.setdefault(i, []).append((k, op, cl, count))
    return out
