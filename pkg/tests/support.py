"""Shared inputs for the test modules."""

from __future__ import annotations

import random
from pathlib import Path

from divide_kh import Divide, divide_homology, loads, random_divide, w_statesum
from divide_kh.moves import MoveKind, applicable_moves

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

TREFOIL_H = {(0, 1): 1, (0, 3): 1, (1, 5): 1, (1, 7): 1, (2, 7): 1, (2, 9): 1}
FIGURE_EIGHT_H = {(-1, -5): 1, (-1, -3): 1, (0, -3): 1, (0, -1): 2, (0, 1): 1,
                  (1, 1): 1, (1, 3): 1, (2, 3): 1, (2, 5): 1}


def fixture(name: str) -> Divide:
    return loads((FIXTURES / f"{name}.div").read_text(encoding="utf-8"))


def fixtures() -> dict[str, Divide]:
    return {name: fixture(name) for name in ("trefoil", "figure_eight", "strand")}


def suite_params(seed: int, max_points: int) -> tuple[int, int]:
    """``(n_points, n_strands)`` for member ``seed`` of a random suite."""
    return seed % (max_points + 1), 2 + (seed // 7) % 4


def random_suite(count: int = 200, max_points: int = 10, first_seed: int = 1000) -> list[Divide]:
    out = []
    for seed in range(first_seed, first_seed + count):
        n, strands = suite_params(seed, max_points)
        out.append(random_divide(seed, n, strands))
    return out


def slide_suite() -> list[Divide]:
    """Three-strand divides holding a same-sign braid triple, over several wall shapes."""
    walls = [("e e e", "e e e"), ("m e", "e e e"), ("e e e", "e m"), ("m e", "e m"),
             ("e m", "m e")]
    words = [[1, 2, 1], [-1, -2, -1], [2, 1, 2], [-2, -1, -2], [1, 2, 1, -2], [-1, 1, 2, 1]]
    out = []
    for k, word in enumerate(words):
        left, right = walls[k % len(walls)]
        out.append(Divide.from_lists(left.split(), word, right.split(), name=f"slide-{k}"))
    left, right = walls[-1]
    out += [Divide.from_lists(left.split(), w, right.split(), name=f"slide-b{k}")
            for k, w in enumerate(([1, 2, 1], [-2, -1, -2], [2, -1, 2, 1, 2], [1, 1, 2, 1]))]
    return out


def slide_location(divide: Divide) -> int:
    word = divide.signed_word()
    for i in range(len(word) - 2):
        a, b, c = word[i:i + 3]
        if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
            return i
    raise ValueError(f"{divide.name} has no braid triple")


INVARIANCE_KINDS = (MoveKind.PAIR_INSERT, MoveKind.PAIR_CANCEL, MoveKind.FAR_COMMUTE)


def invariants(d):
    return divide_homology(d).entries, w_statesum(d)


def invariance_cases(count: int = 100, seed: int = 11) -> list[tuple]:
    """Seeded ``(divide, move)`` pairs over the three word-rewriting moves."""
    rng = random.Random(seed)
    cases = []
    for d in fixtures().values():
        for m in applicable_moves(d):
            if m.kind in INVARIANCE_KINDS:
                cases.append((d, m))
    k = 0
    while len(cases) < count + 3:
        d = random_divide(9000 + k, rng.randint(1, 6), rng.randint(2, 4))
        k += 1
        moves = [m for m in applicable_moves(d) if m.kind in INVARIANCE_KINDS]
        # Favour the rarer moves so each kind is exercised.
        rare = [m for m in moves if m.kind is not MoveKind.PAIR_INSERT]
        pool = rare if rare and rng.random() < 0.6 else moves
        if pool:
            cases.append((d, rng.choice(pool)))
    return cases
