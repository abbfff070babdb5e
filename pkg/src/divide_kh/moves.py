"""Word-level rewrites of a divide and a seeded random generator.

Word indices are 0-based.  Descriptor strings:

* ``commute@i``      swap letters ``i`` and ``i+1`` (positions at least 2 apart)
* ``II-cancel@i``    delete letters ``i, i+1`` when they are ``+p, -p`` or ``-p, +p``
* ``II-insert@i:+p`` insert ``+p, -p`` before index ``i`` (``-p`` inserts ``-p, +p``)
* ``III@i``          ``a, b, a -> b, a, b`` with ``|a| - |b| = ±1`` and one common sign
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass, replace

from .divide import Crossing, Divide, validate


class NotApplicable(ValueError):
    pass


class MoveKind(enum.Enum):
    FAR_COMMUTE = "commute"
    PAIR_CANCEL = "II-cancel"
    PAIR_INSERT = "II-insert"
    BRAID_SLIDE = "III"


@dataclass(frozen=True)
class MoveSpec:
    kind: MoveKind
    location: int
    letter: int = 0  # signed first letter, PAIR_INSERT only

    def __str__(self) -> str:
        tail = f":{self.letter:+d}" if self.kind is MoveKind.PAIR_INSERT else ""
        return f"{self.kind.value}@{self.location}{tail}"

    def inverse(self) -> "MoveSpec":
        if self.kind is MoveKind.PAIR_INSERT:
            return MoveSpec(MoveKind.PAIR_CANCEL, self.location)
        if self.kind is MoveKind.PAIR_CANCEL:
            raise NotApplicable("the inverse of a cancellation depends on the cancelled letters")
        return self


_DESCRIPTOR = re.compile(r"^(commute|II-cancel|II-insert|III)@(\d+)(?::([+-]\d+))?$")


def parse_move(text: str) -> MoveSpec:
    m = _DESCRIPTOR.match(text.strip())
    if not m:
        raise ValueError(f"bad move descriptor {text!r}")
    kind = MoveKind(m.group(1))
    letter = m.group(3)
    if (kind is MoveKind.PAIR_INSERT) != (letter is not None):
        raise ValueError(f"{text!r}: only II-insert takes a ':±p' letter")
    return MoveSpec(kind, int(m.group(2)), int(letter) if letter else 0)


def _rewrite(divide: Divide, word: list[int]) -> Divide:
    out = replace(divide, word=tuple(Crossing(abs(x), 1 if x > 0 else -1) for x in word))
    validate(out)
    return out


def apply_move(divide: Divide, move: MoveSpec) -> Divide:
    word = divide.signed_word()
    i = move.location
    if move.kind is MoveKind.PAIR_INSERT:
        if not 0 <= i <= len(word):
            raise NotApplicable(f"insertion index {i} outside 0..{len(word)}")
        p = abs(move.letter)
        if not 1 <= p < divide.strands:
            raise NotApplicable(f"position {p} is not between two of {divide.strands} strands")
        return _rewrite(divide, word[:i] + [move.letter, -move.letter] + word[i:])
    span = 3 if move.kind is MoveKind.BRAID_SLIDE else 2
    if not 0 <= i <= len(word) - span:
        raise NotApplicable(f"{move.kind.value} needs {span} letters from index {i}, word has {len(word)}")
    a, b = word[i], word[i + 1]
    if move.kind is MoveKind.FAR_COMMUTE:
        if abs(abs(a) - abs(b)) < 2:
            raise NotApplicable(f"letters {a:+d}, {b:+d} are not far apart")
        return _rewrite(divide, word[:i] + [b, a] + word[i + 2:])
    if move.kind is MoveKind.PAIR_CANCEL:
        if a != -b:
            raise NotApplicable(f"letters {a:+d}, {b:+d} do not cancel")
        return _rewrite(divide, word[:i] + word[i + 2:])
    c = word[i + 2]
    if a != c or abs(abs(a) - abs(b)) != 1 or (a > 0) != (b > 0):
        raise NotApplicable(f"letters {a:+d}, {b:+d}, {c:+d} are not a same-sign braid triple")
    return _rewrite(divide, word[:i] + [b, a, b] + word[i + 3:])


def applicable_moves(divide: Divide) -> list[MoveSpec]:
    """Every move applicable to ``divide``, with one insertion per index and letter."""
    word = divide.signed_word()
    out = []
    for i in range(len(word) + 1):
        for p in range(1, divide.strands):
            out += [MoveSpec(MoveKind.PAIR_INSERT, i, p), MoveSpec(MoveKind.PAIR_INSERT, i, -p)]
    for kind in (MoveKind.FAR_COMMUTE, MoveKind.PAIR_CANCEL, MoveKind.BRAID_SLIDE):
        for i in range(len(word)):
            try:
                apply_move(divide, MoveSpec(kind, i))
            except NotApplicable:
                continue
            out.append(MoveSpec(kind, i))
    return out


def random_divide(seed: int, n_points: int, n_strands: int) -> Divide:
    """A valid divide with ``n_points`` singular points and at least one endpoint.

    Deterministic in ``seed``; uses its own ``random.Random``.
    """
    if n_strands < 1 or n_points < 0:
        raise ValueError("need n_strands >= 1 and n_points >= 0")
    rng = random.Random(seed)
    half = n_strands // 2
    # Keep the left wall below full turn-back so an endpoint always survives.
    left_cap = (n_strands - 1) // 2
    if n_strands == 1 and n_points:
        raise ValueError("a single strand has no singular points")
    while True:
        m_left = rng.randint(0, min(left_cap, n_points))
        m_right = rng.randint(0, min(half, n_points - m_left))
        crossings = n_points - m_left - m_right
        if crossings == 0 or n_strands >= 2:
            break
    walls = []
    for m in (m_left, m_right):
        items = ["m"] * m + ["e"] * (n_strands - 2 * m)
        rng.shuffle(items)
        walls.append(items)
    word = [rng.choice((1, -1)) * rng.randint(1, n_strands - 1) for _ in range(crossings)]
    return Divide.from_lists(walls[0], word, walls[1], name=f"random-{seed}")
