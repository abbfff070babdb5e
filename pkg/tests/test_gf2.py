import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from divide_kh.gf2 import BitMatrix, kernel_dim, naive_rank, rank, sparse_rank


@st.composite
def dense_matrices(draw, max_side=64):
    rows = draw(st.integers(0, max_side))
    cols = draw(st.integers(1, max_side))
    density = draw(st.sampled_from([0.05, 0.2, 0.5]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return (rng.random((rows, cols)) < density).astype(int).tolist() if rows else []


def rank_by_span(dense) -> int:
    """Size of the row span, for tiny matrices only."""
    rows = [int("".join(map(str, r)), 2) for r in dense]
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span).bit_length() - 1


@settings(max_examples=300)
@given(dense_matrices())
def test_rank_matches_reference(dense):
    cols = len(dense[0]) if dense else 1
    m = BitMatrix.from_dense(dense, cols)
    r = rank(m)
    assert r == naive_rank(dense)
    assert kernel_dim(m) == cols - r


@settings(max_examples=200)
@given(dense_matrices(max_side=8))
def test_reference_matches_span(dense):
    assert naive_rank(dense) == rank_by_span(dense)


@settings(max_examples=200)
@given(dense_matrices(max_side=40))
def test_sparse_rank_matches(dense):
    rows = [[c for c, v in enumerate(row) if v] for row in dense]
    assert sparse_rank(rows) == naive_rank(dense)


def test_rank_transpose_invariant():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = (rng.random((30, 70)) < 0.1).astype(int)
        assert rank(BitMatrix.from_dense(d.tolist())) == rank(BitMatrix.from_dense(d.T.tolist()))


def test_sparse_rows_cancel_and_padding():
    m = BitMatrix.from_sparse_rows([[0, 3, 3], [65, 65, 2]], 70)
    assert m.to_dense()[0][:4] == [1, 0, 0, 0]
    assert m.get(1, 65) == 0 and m.get(1, 2) == 1
    assert m.padding_clear()


def test_empty():
    assert rank(BitMatrix.zeros(0, 5)) == 0
    assert naive_rank([]) == 0
    assert sparse_rank([]) == 0
