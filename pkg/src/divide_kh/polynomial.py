"""The state-sum polynomial W of a divide, kept in powers of ``sqrt(t)``.

Write ``s = sqrt(t)``.  Every state contributes
``(-1)^i s^k (s^-2 + s^2)^cl (s^-1 + s)^(op - 1)``; the same quantity is
``s / (1 + s^2)`` times the signed sum of ``s^j`` over enhanced states.
"""

from __future__ import annotations

from functools import lru_cache

from .divide import AnyDivide
from .homology import HomologyTable, graded_euler, homology_table
from .laurent import HalfLaurent, NotDivisible
from .states import DEFAULT_MAX_POINTS, StateSpace, enumerate_enhanced

ONE_PLUS_T = HalfLaurent({0: 1, 2: 1})


class NonLaurent(NotDivisible):
    """W is a genuinely rational function: some state has no open component."""


@lru_cache(maxsize=None)
def _closed_factor(cl: int) -> HalfLaurent:
    return HalfLaurent({-2: 1, 2: 1}) ** cl


@lru_cache(maxsize=None)
def _open_factor(op: int) -> HalfLaurent:
    return HalfLaurent({-1: 1, 1: 1}) ** op


def _state_tally(divide: AnyDivide, max_points: int) -> dict[tuple[int, int, int], int]:
    """Signed count ``sum (-1)^i`` of the states with each ``(k, op, cl)``."""
    space = StateSpace(divide, max_points)
    tally: dict = {}
    for w in range(1 << space.n):
        sc = space.components(w)
        g = space.gradings(w)
        key = (g.k, sc.op, sc.cl)
        tally[key] = tally.get(key, 0) + (-1) ** (g.i % 2)
    return tally


def w_numerator(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> HalfLaurent:
    """``W * (1 + t)`` from the state sum; a Laurent polynomial for every divide."""
    out = HalfLaurent()
    for (k, op, cl), c in _state_tally(divide, max_points).items():
        if c:
            out = out + (_closed_factor(cl) * _open_factor(op)).shift(k + 1) * c
    return out


def w_statesum(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> HalfLaurent:
    tally = _state_tally(divide, max_points)
    if any(op == 0 for _, op, _ in tally):
        return w_enhanced(divide, max_points)
    out = HalfLaurent()
    for (k, op, cl), c in tally.items():
        if c:
            out = out + (_closed_factor(cl) * _open_factor(op - 1)).shift(k) * c
    return out


def w_enhanced(divide: AnyDivide, max_points: int = DEFAULT_MAX_POINTS) -> HalfLaurent:
    """``s / (1 + s^2)`` times the signed enhanced-state sum, divided exactly.

    Raises ``NonLaurent`` when some state is closed-only and the quotient is
    not a polynomial, and plain ``NotDivisible`` otherwise (that would be a bug).
    """
    acc: dict[int, int] = {}
    op_free = False
    space = StateSpace(divide, max_points)
    for w in range(1 << space.n):
        op_free = op_free or space.components(w).op == 0
    for st in enumerate_enhanced(divide, max_points):
        acc[st.j + 1] = acc.get(st.j + 1, 0) + (-1) ** (st.i % 2)
    num = HalfLaurent(acc)
    try:
        return num.exact_div(ONE_PLUS_T)
    except NotDivisible as exc:
        if op_free:
            raise NonLaurent(f"W is not a Laurent polynomial here: {num.render()} over 1 + t") from exc
        raise


def substitute_square(p: HalfLaurent) -> HalfLaurent:
    """``p(sqrt t) -> p(t)``: an exponent ``e`` of ``sqrt t`` becomes ``t^e``."""
    return HalfLaurent({2 * e: c for e, c in p.terms.items()})


def check_euler_relation(divide: AnyDivide, table: HomologyTable | None = None,
                         max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """``W(t^2) (1 + t^2) == t * chi(t)`` with chi taken from homology.

    The left side is computed from the state sum in its multiplied-out form,
    so the comparison is exact even when W itself is rational.
    """
    if table is None:
        from .complex import build_complex
        table = homology_table(build_complex(divide, max_points))
    lhs = substitute_square(w_numerator(divide, max_points))
    return lhs == graded_euler(table).shift(2)
