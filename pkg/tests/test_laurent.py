import pytest
from hypothesis import given
from hypothesis import strategies as st

from divide_kh import HalfLaurent, NotDivisible

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(HalfLaurent)
nonzero = polys.filter(bool)


def evaluate(p: HalfLaurent, s: int) -> int:
    """Value at sqrt(t) = s scaled by s^40 so every term is integral."""
    return sum(c * s ** (e + 40) for e, c in p.terms.items())


@given(polys, polys)
def test_product_matches_evaluation(p, q):
    for s in (2, 3, -5):
        assert evaluate(p * q, s) * s ** 40 == evaluate(p, s) * evaluate(q, s)


@given(polys, nonzero)
def test_exact_division_of_product(p, q):
    assert (p * q).exact_div(q) == p


@given(polys, nonzero)
def test_divmod_reconstructs(p, q):
    quot, rem = p.divmod_poly(q)
    assert quot * q + rem == p


def test_not_divisible():
    with pytest.raises(NotDivisible):
        HalfLaurent.from_t({0: 1}).exact_div(HalfLaurent.from_t({0: 1, 1: 1}))
    with pytest.raises(ZeroDivisionError):
        HalfLaurent({1: 1}).divmod_poly(HalfLaurent())


def test_render():
    assert HalfLaurent.from_t({1: 1, 3: -1, 4: 1}).render() == "t - t^3 + t^4"
    assert HalfLaurent.from_t({-1: 2, 0: -1}).render() == "2t^-1 - 1"
    assert HalfLaurent({1: 1}).render() == "t^(1/2)"
    assert HalfLaurent.from_t({-2: -1}).render(style="latex") == "-t^{-2}"
    assert HalfLaurent().render() == "0"


def test_pairs_and_equality():
    p = HalfLaurent({1: 1, 4: -2})
    assert p.to_pairs() == [[0.5, 1], [2, -2]]
    assert HalfLaurent({0: 3}) == 3
    assert HalfLaurent([(2, 1), (2, -1)]) == 0 and not HalfLaurent([(2, 1), (2, -1)])
    assert p.shift(2) == HalfLaurent({3: 1, 6: -2})
