from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import affine_flat_count, dense_generator, rm_dimension, weight_distribution
from rmcount.errors import DimensionError, ParameterError, ResourceError
from rmcount.gf2 import BitVector, rank
from rmcount.rm import (
    affine_subspace_points, build_rm_code, count_affine_subspaces, encode,
    enumerate_codewords_of_weight, enumerate_min_weight_codewords, is_codeword,
    sample_min_weight_codeword,
)
from rmcount.rng import RngStream

small_codes = st.integers(1, 6).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, m)))


def dense_rows(code):
    return np.array([[row >> j & 1 for j in range(code.n)] for row in code.generator.row_bits], dtype=np.uint8)


@given(small_codes)
def test_generator_matches_dense_evaluation(mr):
    m, r = mr
    code = build_rm_code(m, r)
    assert np.array_equal(dense_rows(code), dense_generator(m, r))
    assert code.k == rm_dimension(m, r) == rank(code.generator)
    assert code.n == 2**m and code.min_distance == 2 ** (m - r)


def test_variable_rows():
    code = build_rm_code(3, 1)
    assert [str(code.generator.row(i)) for i in range(4)] == [
        "11111111", "00001111", "00110011", "01010101"]


@given(small_codes.filter(lambda t: t[1] < t[0]))
def test_dual_code_is_orthogonal(mr):
    m, r = mr
    G = dense_generator(m, r).astype(int)
    H = dense_generator(m, m - r - 1).astype(int)
    assert not ((G @ H.T) % 2).any()


@pytest.mark.parametrize("m,r", [(1, 0), (2, 1), (3, 1), (4, 2), (5, 1), (4, 4)])
def test_enumerated_weights_match_dense(m, r):
    code = build_rm_code(m, r)
    dense = weight_distribution(m, r)
    for w, count in enumerate(dense):
        assert len(enumerate_codewords_of_weight(code, w)) == count


@given(small_codes, st.data())
def test_encode_is_linear_and_a_codeword(mr, data):
    code = build_rm_code(*mr)
    a = BitVector(data.draw(st.integers(0, 2**code.k - 1)), code.k)
    b = BitVector(data.draw(st.integers(0, 2**code.k - 1)), code.k)
    assert encode(code, a ^ b) == encode(code, a) ^ encode(code, b)
    assert is_codeword(code, encode(code, a))


def test_non_codeword_detected():
    code = build_rm_code(4, 1)
    assert not is_codeword(code, BitVector.unit(0, 16))
    assert not is_codeword(code, BitVector.zeros(8))


def test_invalid_parameters():
    for m, r in [(0, 0), (3, 4), (3, -1), (17, 1)]:
        with pytest.raises(ParameterError):
            build_rm_code(m, r)
    with pytest.raises(DimensionError):
        encode(build_rm_code(3, 1), BitVector.zeros(3))


@pytest.mark.parametrize("m,dim", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)])
def test_affine_count_matches_listing(m, dim):
    assert count_affine_subspaces(m, dim) == affine_flat_count(m, dim)


@pytest.mark.parametrize("m,r", [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3)])
def test_min_weight_codewords_are_flats(m, r):
    code = build_rm_code(m, r)
    found = enumerate_min_weight_codewords(code)
    assert len(found) == count_affine_subspaces(m, m - r)


def test_affine_points_gray_walk():
    from rmcount.gf2 import BitMatrix
    A = BitMatrix((0b001, 0b100), 3)
    assert sorted(affine_subspace_points(A, 0b010)) == [0b010, 0b011, 0b110, 0b111]


@pytest.mark.parametrize("m,r", [(1, 0), (3, 1), (4, 2), (6, 3), (7, 1), (8, 5)])
def test_sampled_min_weight_codewords(m, r):
    code = build_rm_code(m, r)
    rng = RngStream(11, (m, r))
    for _ in range(40):
        c = sample_min_weight_codeword(code, rng)
        assert c.weight() == code.min_distance
        assert is_codeword(code, c)


def test_enumeration_bound():
    with pytest.raises(ResourceError, match="bound"):
        enumerate_min_weight_codewords(build_rm_code(7, 3))


def test_rm_m_m_is_everything():
    code = build_rm_code(3, 3)
    assert [len(enumerate_codewords_of_weight(code, w)) for w in range(9)] == [comb(8, w) for w in range(9)]
