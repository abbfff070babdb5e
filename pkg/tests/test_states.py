import itertools

import pytest
from hypothesis import given, settings

from divide_kh import PartialDivide, validate
from divide_kh.divide import PointKind
from divide_kh.states import (
    CLOSED, OPEN, TooManyPoints, WordLengthMismatch, enumerate_enhanced, resolve_state,
)
from strategies import divides
from support import fixture, random_suite


def oracle_components(divide, bits):
    """Components by depth-first search over an explicitly built arc graph.

    Returns ``(kinds, arc sets)`` ordered by smallest arc, plus the end-node
    count of each component.
    """
    prof = validate(divide)
    n, length = prof.strands, len(divide.word)
    arc = lambda gap, level: gap * n + level - 1  # noqa: E731
    adj = {a: set() for a in range((length + 1) * n)}

    def link(a, b):
        adj[a].add(b)
        adj[b].add(a)

    ends = {a: 0 for a in adj}
    for col, c in enumerate(divide.word, start=1):
        p = c.position
        for level in range(1, n + 1):
            if level not in (p, p + 1):
                link(arc(col - 1, level), arc(col, level))
        if bits[col - 1]:
            link(arc(col - 1, p), arc(col - 1, p + 1))
            link(arc(col, p), arc(col, p + 1))
        else:
            link(arc(col - 1, p), arc(col, p))
            link(arc(col - 1, p + 1), arc(col, p + 1))
    turnbacks = iter(bits[length:])
    for gap, items in ((0, divide.left), (length, divide.right)):
        pos = 1
        for item in items:
            if item.value == "e":
                ends[arc(gap, pos)] += 1
            elif next(turnbacks):
                link(arc(gap, pos), arc(gap, pos + 1))
            else:
                ends[arc(gap, pos)] += 1
                ends[arc(gap, pos + 1)] += 1
            pos += item.width
    seen, comps = set(), []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            a = stack.pop()
            if a in comp:
                continue
            comp.add(a)
            stack.extend(adj[a] - comp)
        seen |= comp
        comps.append(comp)
    return comps, [sum(ends[a] for a in c) for c in comps]


@pytest.mark.parametrize("word,op,cl,i,k", [((0, 0), 2, 0, 0, 3), ((1, 1), 1, 1, 2, 6),
                                             ((1, 0), 2, 0, 1, 5), ((0, 1), 1, 0, 1, 4)])
def test_trefoil_states(word, op, cl, i, k):
    sc, g = resolve_state(fixture("trefoil"), word)
    assert (sc.op, sc.cl, g.i, g.k) == (op, cl, i, k)


def test_figure_eight_negative_smoothing():
    sc, g = resolve_state(fixture("figure_eight"), (1, 0, 0))
    assert (sc.op, sc.cl, g.i, g.k) == (3, 0, -1, -2)


def test_word_length_checked():
    with pytest.raises(WordLengthMismatch):
        resolve_state(fixture("trefoil"), (0,))


def test_point_limit():
    with pytest.raises(TooManyPoints):
        list(enumerate_enhanced(fixture("figure_eight"), max_points=2))


def test_trefoil_enhanced_count_and_top_state():
    states = list(enumerate_enhanced(fixture("trefoil")))
    assert len(states) == 14
    top = [s for s in states if s.word == (1, 1) and all(x > 0 for x in s.signs)]
    assert [s.j for s in top] == [9]


def test_strand_enhanced():
    assert sorted(s.j for s in enumerate_enhanced(fixture("strand"))) == [-1, 1]


def test_enumeration_order():
    states = list(enumerate_enhanced(fixture("trefoil")))
    keys = [(s.word, tuple(x > 0 for x in s.signs)) for s in states]
    assert keys == sorted(keys)


@settings(max_examples=150)
@given(divides(max_crossings=6))
def test_components_match_search(d):
    n = validate(d).n
    for bits in itertools.islice(itertools.product((0, 1), repeat=n), 16):
        sc, _ = resolve_state(d, bits)
        comps, ends = oracle_components(d, bits)
        assert [set(c.arcs) for c in sc.components] == comps
        for c, e in zip(sc.components, ends):
            assert e == (2 if c.kind == OPEN else 0)
        assert sorted(a for c in sc.components for a in c.arcs) == list(range(sum(map(len, comps))))


@settings(max_examples=60)
@given(divides(max_crossings=5))
def test_partial_agrees_with_full(d):
    n = validate(d).n
    if n == 0:
        return
    for bits in itertools.islice(itertools.product((0, 1), repeat=n), 8):
        full = resolve_state(d, bits)
        fixed = {p: bits[p] for p in range(0, n, 2)}
        free = tuple(bits[p] for p in range(n) if p not in fixed)
        sc, g = resolve_state(PartialDivide(d, fixed), free)
        assert sc == full[0]
        assert g.i == full[1].i - sum(
            (1 if validate(d).points[p].kind is not PointKind.NEGATIVE else -1) * b
            for p, b in fixed.items())


def test_bounds_and_parity_small_suite():
    for d in random_suite(60, 8):
        prof = validate(d)
        np_, nm, n0 = prof.n_plus, prof.n_minus, prof.n_zero
        half = prof.endpoints // 2
        for s in enumerate_enhanced(d):
            assert -nm <= s.i <= np_ + n0
            assert 2 * np_ - 4 * nm + n0 <= s.k <= 4 * np_ - 2 * nm + 2 * n0
            assert (s.j - half) % 2 == 0
            assert s.j == s.k + 2 * s.delta_cl + s.delta_op


@given(divides(max_crossings=5))
def test_gradings_formula(d):
    prof = validate(d)
    for s in itertools.islice(enumerate_enhanced(d), 64):
        sc, g = resolve_state(d, s.word)
        assert g.i == g.r_plus - g.r_minus + g.r_zero
        assert g.k == prof.writhe + 2 * g.i - g.r_zero
        assert len(s.signs) == sc.op + sc.cl
        assert CLOSED not in sc.kinds or sc.cl > 0
