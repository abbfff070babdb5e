"""Cube-of-resolutions states of a divide.

Geometry: with ``L`` crossings and ``N`` strands there are ``L + 1`` gaps
between consecutive columns (gap 0 touches the left wall, gap ``L`` the right
wall).  Each gap carries one elementary arc per strand level, with id
``gap * N + (level - 1)``.  A state glues these arcs together:

* crossing, splitting 0: straight pass, top-left to top-right and
  bottom-left to bottom-right;
* crossing, splitting 1: the two left ends are joined and the two right
  ends are joined (two horizontal cusps);
* turn-back, splitting 0: the two ends are cut into boundary endpoints;
* turn-back, splitting 1: the two ends stay joined.

Wall endpoints ``e`` are end-nodes.  A component with two end-nodes is open,
one with none is closed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .divide import AnyDivide, PointKind, SingularProfile, WallItem, as_partial, profile, validate

DEFAULT_MAX_POINTS = 24

OPEN = "open"
CLOSED = "closed"


class WordLengthMismatch(ValueError):
    pass


class TooManyPoints(ValueError):
    pass


class InternalError(RuntimeError):
    """An invariant the construction guarantees was violated."""


@dataclass(frozen=True)
class Component:
    id: int
    kind: str
    arcs: tuple[int, ...]


@dataclass(frozen=True)
class StateComponents:
    components: tuple[Component, ...]
    comp_of_arc: tuple[int, ...]

    @property
    def op(self) -> int:
        return sum(c.kind == OPEN for c in self.components)

    @property
    def cl(self) -> int:
        return sum(c.kind == CLOSED for c in self.components)

    @cached_property
    def kinds(self) -> tuple[str, ...]:
        return tuple(c.kind for c in self.components)


@dataclass(frozen=True)
class Gradings:
    r_plus: int
    r_minus: int
    r_zero: int
    i: int
    k: int


@dataclass(frozen=True)
class EnhancedState:
    word: tuple[int, ...]
    signs: tuple[int, ...]  # +1 / -1 per component id
    i: int
    k: int
    delta_cl: int
    delta_op: int

    @property
    def j(self) -> int:
        return self.k + 2 * self.delta_cl + self.delta_op


class _Geometry:
    """Precomputed gluing data for a base divide."""

    def __init__(self, divide) -> None:
        prof = validate(divide)
        n, length = prof.strands, len(divide.word)
        self.strands = n
        self.n_arcs = (length + 1) * n
        arc = lambda gap, level: gap * n + level - 1  # noqa: E731
        self.static: list[tuple[int, int]] = []
        self.ends: list[int] = []
        self.sites: list[tuple[int, ...]] = []
        for col, c in enumerate(divide.word, start=1):
            p = c.position
            for level in range(1, n + 1):
                if level not in (p, p + 1):
                    self.static.append((arc(col - 1, level), arc(col, level)))
        for gap, items in ((0, divide.left), (length, divide.right)):
            pos = 1
            for item in items:
                if item is WallItem.ENDPOINT:
                    self.ends.append(arc(gap, pos))
                pos += item.width
        for pt in prof.points:
            if pt.wall is None:
                col, p = pt.index + 1, pt.position
                self.sites.append((arc(col - 1, p), arc(col - 1, p + 1), arc(col, p), arc(col, p + 1)))
            else:
                gap = 0 if pt.wall == "left" else length
                self.sites.append((arc(gap, pt.position), arc(gap, pt.position + 1)))

        self._compress()

    def _compress(self) -> None:
        """Collapse the word-independent gluing into classes of arcs."""
        parent = list(range(self.n_arcs))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.static:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        roots = [find(x) for x in range(self.n_arcs)]
        # Class ids follow their smallest arc, so class order is arc order.
        reps = sorted(set(roots))
        cls = {r: c for c, r in enumerate(reps)}
        self.class_of = [cls[r] for r in roots]
        self.class_arcs: list[list[int]] = [[] for _ in reps]
        for a, c in enumerate(self.class_of):
            self.class_arcs[c].append(a)
        self.class_sites = [tuple(self.class_of[a] for a in site) for site in self.sites]
        self.class_ends = [self.class_of[a] for a in self.ends]

    def resolve(self, bits: Sequence[int]) -> StateComponents:
        nc = len(self.class_arcs)
        parent = list(range(nc))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb

        ends = list(self.class_ends)
        for site, bit in zip(self.class_sites, bits):
            if len(site) == 4:
                a1, a2, b1, b2 = site
                if bit:
                    union(a1, a2)
                    union(b1, b2)
                else:
                    union(a1, b1)
                    union(a2, b2)
            elif bit:
                union(*site)
            else:
                ends.extend(site)
        roots = [find(x) for x in range(nc)]
        # Roots are minimal class ids, hence minimal arc ids.
        order = sorted(set(roots))
        cid = {r: i for i, r in enumerate(order)}
        comp_of_class = [cid[r] for r in roots]
        comp_of_arc = tuple(comp_of_class[c] for c in self.class_of)
        members: list[list[int]] = [[] for _ in order]
        for c, arcs in enumerate(self.class_arcs):
            members[comp_of_class[c]].extend(arcs)
        end_count = [0] * len(order)
        for c in ends:
            end_count[comp_of_class[c]] += 1
        comps = []
        for c, arcs in enumerate(members):
            if end_count[c] not in (0, 2):
                raise InternalError(f"component {c} has {end_count[c]} end-nodes")
            comps.append(Component(c, OPEN if end_count[c] else CLOSED, tuple(sorted(arcs))))
        return StateComponents(tuple(comps), comp_of_arc)


@lru_cache(maxsize=64)
def _geometry(divide) -> _Geometry:
    return _Geometry(divide)


def word_to_int(word: Sequence[int]) -> int:
    v = 0
    for b in word:
        v = (v << 1) | int(b)
    return v


def int_to_word(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> (n - 1 - t)) & 1 for t in range(n))


class StateSpace:
    """All states of a (possibly partially resolved) divide, resolved lazily.

    Words are over the free points only, first point most significant when a
    word is read as an integer.
    """

    def __init__(self, divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> None:
        self.divide = as_partial(divide)
        self.profile: SingularProfile = profile(divide)
        self.base_profile = validate(self.divide.base)
        self.pinned = self.divide.pinned()
        self.free = [p for p in range(len(self.base_profile.points)) if p not in self.pinned]
        self.n = len(self.free)
        if self.n > max_points:
            raise TooManyPoints(f"{self.n} singular points exceeds the limit of {max_points}")
        self.geometry = _geometry(self.divide.base)
        self.kinds = [self.base_profile.points[p].kind for p in self.free]
        self._cache: dict[int, StateComponents] = {}

    @property
    def writhe(self) -> int:
        return self.profile.writhe

    def full_bits(self, word: int) -> list[int]:
        bits = [0] * len(self.base_profile.points)
        for p, b in self.pinned.items():
            bits[p] = b
        for t, p in enumerate(self.free):
            bits[p] = (word >> (self.n - 1 - t)) & 1
        return bits

    def components(self, word: int) -> StateComponents:
        sc = self._cache.get(word)
        if sc is None:
            sc = self._cache[word] = self.geometry.resolve(self.full_bits(word))
        return sc

    def gradings(self, word: int) -> Gradings:
        r = {PointKind.POSITIVE: 0, PointKind.NEGATIVE: 0, PointKind.TANGENT: 0}
        for t, kind in enumerate(self.kinds):
            if (word >> (self.n - 1 - t)) & 1:
                r[kind] += 1
        rp, rm, r0 = r[PointKind.POSITIVE], r[PointKind.NEGATIVE], r[PointKind.TANGENT]
        i = rp - rm + r0
        return Gradings(rp, rm, r0, i, self.writhe + 2 * i - r0)

    def site(self, t: int) -> tuple[int, ...]:
        """Elementary arcs touching the ``t``-th free point."""
        return self.geometry.sites[self.free[t]]


def resolve_state(divide: AnyDivide, word: Sequence[int]) -> tuple[StateComponents, Gradings]:
    space = StateSpace(divide, max_points=10**9)
    if len(word) != space.n:
        raise WordLengthMismatch(f"word has length {len(word)}, divide has {space.n} free points")
    w = word_to_int(word)
    return space.components(w), space.gradings(w)


def sign_vectors(ncomp: int) -> Iterator[tuple[int, ...]]:
    """Sign vectors in lexicographic order by component id, '-' before '+'."""
    for code in range(1 << ncomp):
        yield tuple(1 if (code >> (ncomp - 1 - c)) & 1 else -1 for c in range(ncomp))


def enumerate_enhanced(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> Iterator[EnhancedState]:
    """Every enhanced state, cube word as a binary counter, then signs."""
    space = StateSpace(divide, max_points)
    for w in range(1 << space.n):
        sc = space.components(w)
        g = space.gradings(w)
        word = int_to_word(w, space.n)
        kinds = sc.kinds
        for signs in sign_vectors(len(kinds)):
            d_op = sum(s for s, kd in zip(signs, kinds) if kd == OPEN)
            d_cl = sum(s for s, kd in zip(signs, kinds) if kd == CLOSED)
            yield EnhancedState(word, signs, g.i, g.k, d_cl, d_op)


def group_by_bidegree(states) -> dict[tuple[int, int], list[EnhancedState]]:
    out: dict[tuple[int, int], list[EnhancedState]] = {}
    for s in states:
        out.setdefault((s.i, s.j), []).append(s)
    return dict(sorted(out.items()))
