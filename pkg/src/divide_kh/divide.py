"""Combinatorial model of ordered Morse signed divides.

A divide lives between two vertical walls.  Strand positions are numbered
``1..N`` from the top.  Each wall is a top-to-bottom list of items: an
endpoint ``e`` occupies one position, a turn-back ``m`` (a vertical tangent
point, i.e. a minimum on the left wall or a maximum on the right wall) joins
two vertically adjacent positions.  Between the walls sits a word of signed
crossings, each transposing the strands at positions ``p`` and ``p + 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union


class DivideError(ValueError):
    """Base class for rejected divide input."""


class StrandCountMismatch(DivideError):
    pass


class CrossingOutOfRange(DivideError):
    pass


class EmptyDivide(DivideError):
    pass


class InvalidPinning(DivideError):
    pass


class WallItem(enum.Enum):
    ENDPOINT = "e"
    TURNBACK = "m"

    @property
    def width(self) -> int:
        return 1 if self is WallItem.ENDPOINT else 2


@dataclass(frozen=True)
class Crossing:
    position: int
    sign: int  # +1 or -1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign!r}")

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.position}"


@dataclass(frozen=True)
class Divide:
    left: tuple[WallItem, ...]
    word: tuple[Crossing, ...]
    right: tuple[WallItem, ...]
    name: str | None = field(default=None, compare=False)

    @classmethod
    def from_lists(cls, left: Iterable[str | WallItem], word: Iterable[int | Crossing],
                   right: Iterable[str | WallItem], name: str | None = None) -> "Divide":
        """Build from shorthand: wall items as ``"e"``/``"m"``, crossings as signed ints."""
        def item(x):
            return x if isinstance(x, WallItem) else WallItem(x)

        def cross(x):
            if isinstance(x, Crossing):
                return x
            if x == 0:
                raise CrossingOutOfRange("crossing position 0 is not allowed")
            return Crossing(abs(int(x)), 1 if x > 0 else -1)

        return cls(tuple(map(item, left)), tuple(map(cross, word)), tuple(map(item, right)), name)

    @property
    def strands(self) -> int:
        return sum(item.width for item in self.left)

    def signed_word(self) -> list[int]:
        return [c.sign * c.position for c in self.word]


class PointKind(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    TANGENT = "0"


@dataclass(frozen=True)
class SingularPoint:
    """A crossing (``wall is None``) or a wall turn-back.

    ``index`` is the word index of a crossing, or the top strand position of
    a turn-back; ``position`` is always the top strand position involved.
    """

    kind: PointKind
    wall: str | None  # None, "left" or "right"
    index: int
    position: int

    @property
    def raises_on_one(self) -> bool:
        # The flip that raises the homological grading: 0 -> 1 except at
        # negative crossings.
        return self.kind is not PointKind.NEGATIVE

    def __str__(self) -> str:
        if self.wall is None:
            return f"crossing#{self.index}({self.kind.value}{self.position})"
        return f"{self.wall}-turnback@{self.position}"


@dataclass(frozen=True)
class SingularProfile:
    strands: int
    points: tuple[SingularPoint, ...]
    n_plus: int
    n_minus: int
    n_zero: int
    endpoints: int

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @property
    def writhe(self) -> int:
        return 2 * self.n_plus - 2 * self.n_minus + self.n_zero


def _wall_positions(items: Iterable[WallItem]) -> list[tuple[WallItem, int]]:
    out, pos = [], 1
    for item in items:
        out.append((item, pos))
        pos += item.width
    return out


def validate(divide: Divide) -> SingularProfile:
    """Check a divide and return its singular profile.

    Points are ordered: crossings in word order, then left-wall turn-backs
    top to bottom, then right-wall turn-backs top to bottom.
    """
    n_left = sum(item.width for item in divide.left)
    n_right = sum(item.width for item in divide.right)
    if n_left == 0 and n_right == 0:
        raise EmptyDivide("divide has no strands")
    if n_left != n_right:
        raise StrandCountMismatch(f"left wall has {n_left} strands, right wall has {n_right}")
    strands = n_left
    points: list[SingularPoint] = []
    n_plus = n_minus = 0
    for idx, c in enumerate(divide.word):
        if not 1 <= c.position <= strands - 1:
            raise CrossingOutOfRange(
                f"crossing {c} at word index {idx} needs 1 <= position <= {strands - 1}")
        if c.sign > 0:
            n_plus += 1
            kind = PointKind.POSITIVE
        else:
            n_minus += 1
            kind = PointKind.NEGATIVE
        points.append(SingularPoint(kind, None, idx, c.position))
    endpoints = 0
    for wall, items in (("left", divide.left), ("right", divide.right)):
        for item, pos in _wall_positions(items):
            if item is WallItem.TURNBACK:
                points.append(SingularPoint(PointKind.TANGENT, wall, pos, pos))
            else:
                endpoints += 1
    n_zero = len(points) - n_plus - n_minus
    return SingularProfile(strands, tuple(points), n_plus, n_minus, n_zero, endpoints)


@dataclass(frozen=True)
class PartialDivide:
    """A divide with some singular points already resolved (a cuspidal divide).

    ``fixed`` maps indices into the base profile's point order to a
    splitting bit (0 or 1).
    """

    base: Divide
    fixed: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        fixed = self.fixed.items() if isinstance(self.fixed, Mapping) else self.fixed
        object.__setattr__(self, "fixed", tuple(sorted((int(p), int(b)) for p, b in fixed)))
        n = len(validate(self.base).points)
        seen = set()
        for p, b in self.fixed:
            if not 0 <= p < n or b not in (0, 1) or p in seen:
                raise InvalidPinning(f"bad pinned point {p} -> {b}")
            seen.add(p)

    def pinned(self) -> dict[int, int]:
        return dict(self.fixed)

    def free_points(self) -> list[int]:
        pinned = self.pinned()
        return [p for p in range(len(validate(self.base).points)) if p not in pinned]

    def pin(self, point: int, bit: int) -> "PartialDivide":
        """Pin a further point, given as an index among *this* divide's free points."""
        base_index = self.free_points()[point]
        return PartialDivide(self.base, self.fixed + ((base_index, bit),))


AnyDivide = Union[Divide, PartialDivide]


def as_partial(divide: AnyDivide) -> PartialDivide:
    return divide if isinstance(divide, PartialDivide) else PartialDivide(divide)


def profile(divide: AnyDivide) -> SingularProfile:
    """Profile counting only unresolved points."""
    if isinstance(divide, Divide):
        return validate(divide)
    full = validate(divide.base)
    pinned = divide.pinned()
    points = tuple(pt for i, pt in enumerate(full.points) if i not in pinned)
    count = {k: sum(pt.kind is k for pt in points) for k in PointKind}
    return SingularProfile(full.strands, points, count[PointKind.POSITIVE],
                           count[PointKind.NEGATIVE], count[PointKind.TANGENT], full.endpoints)


def writhe(divide: AnyDivide) -> int:
    return profile(divide).writhe
