import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ramanujan_ldpc import gf2

from .oracles import gf2_rank_int


def bit_matrices(max_rows=12, max_cols=140):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@given(bit_matrices())
def test_pack_roundtrip(mat):
    assert np.array_equal(gf2.unpack(gf2.pack(mat), mat.shape[1]), mat)


@given(bit_matrices())
def test_rank_matches_integer_oracle(mat):
    assert gf2.rank(mat) == gf2_rank_int(mat)


@given(bit_matrices(max_cols=70))
def test_rref_and_nullspace(mat):
    red, piv = gf2.rref(mat)
    r = gf2_rank_int(mat)
    assert red.shape[0] == r == len(piv)
    assert np.array_equal(red[:, piv], np.eye(r, dtype=np.uint8))
    # same row space: stacking adds no rank
    assert gf2.rank(np.vstack([red, mat])) == r
    basis = gf2.nullspace(mat)
    assert basis.shape == (mat.shape[1] - r, mat.shape[1])
    assert not gf2.matmul(mat, basis.T).any()
    assert gf2.rank(basis) == len(basis)


@given(st.integers(1, 9), st.integers(1, 200), st.data())
@settings(max_examples=40)
def test_pack_sparse_cancels_repeats(rows, cols, data):
    entries = data.draw(st.lists(st.tuples(st.integers(0, rows - 1), st.integers(0, cols - 1)), max_size=60))
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for r, c in entries:
        dense[r, c] ^= 1
    rr = np.array([e[0] for e in entries], dtype=np.int64)
    cc = np.array([e[1] for e in entries], dtype=np.int64)
    assert np.array_equal(gf2.pack_sparse(rr, cc, (rows, cols)), gf2.pack(dense))


def test_rank_of_identity_and_zero():
    assert gf2.rank(np.eye(130, dtype=np.uint8)) == 130
    assert gf2.rank(np.zeros((4, 9), dtype=np.uint8)) == 0
    assert gf2.rank(np.zeros((0, 5), dtype=np.uint8)) == 0
    assert gf2.rref(np.zeros((0, 5), dtype=np.uint8))[0].shape == (0, 5)


def test_pack_rejects_vectors():
    with pytest.raises(ValueError):
        gf2.pack(np.ones(5, dtype=np.uint8))
