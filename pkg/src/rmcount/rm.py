"""Reed-Muller codes RM(m, r) in lexicographic evaluation order.

Coordinate ``j`` of a codeword is the evaluation point ``z = (z_1, ..., z_m)``
whose binary expansion is ``j`` with ``z_1`` the most significant bit.  So the
monomial ``x_1`` evaluates to ``0...01...1`` and ``x_m`` to ``0101...``.
Generator rows are ordered by degree, then lexicographically on the variable
set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from rmcount._kernels import kernel
from rmcount.errors import DimensionError, ParameterError, ResourceError
from rmcount.gf2 import BitMatrix, BitVector, mat_vec_mul, sample_full_rank_matrix
from rmcount.rng import RngStream

MAX_M = 16
EXHAUSTIVE_K = 26
EXTENDED_K = 29


@dataclass(frozen=True)
class RmCode:
    m: int
    r: int
    generator: BitMatrix = field(repr=False)
    monomials: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def min_distance(self) -> int:
        return 1 << (self.m - self.r)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def generator_words(self) -> np.ndarray:
        """Generator as a C-contiguous ``(k, ceil(n/64))`` uint64 array for the kernels."""
        return np.ascontiguousarray(self.generator.to_words())

    @property
    def words(self) -> int:
        return self.generator_words.shape[1]

    def __str__(self) -> str:
        return f"RM({self.m},{self.r})"


def monomial_row(S: tuple[int, ...], m: int) -> int:
    """Evaluation vector of prod_{i in S} x_i (variables 1-based) as an int."""
    # mask of point bits for the variables in S; z_i sits at bit m - i of the index
    mask = 0
    for i in S:
        mask |= 1 << (m - i)
    bits = 0
    for j in range(1 << m):
        if j & mask == mask:
            bits |= 1 << j
    return bits


def build_rm_code(m: int, r: int) -> RmCode:
    if m < 1 or m > MAX_M:
        raise ParameterError(f"m must be in [1, {MAX_M}], got {m}")
    if r < 0 or r > m:
        raise ParameterError(f"r must be in [0, m], got r={r}, m={m}")
    monomials = tuple(S for deg in range(r + 1) for S in combinations(range(1, m + 1), deg))
    rows = tuple(monomial_row(S, m) for S in monomials)
    assert len(rows) == sum(comb(m, i) for i in range(r + 1))
    return RmCode(m, r, BitMatrix(rows, 1 << m), monomials)


def encode(code: RmCode, message: BitVector) -> BitVector:
    if message.length != code.k:
        raise DimensionError(f"message length {message.length} != k = {code.k}")
    return mat_vec_mul(message, code.generator)


def is_codeword(code: RmCode, x: BitVector) -> bool:
    """Row-space membership by reduction against the generator (no enumeration)."""
    if x.length != code.n:
        return False
    basis: dict[int, int] = {}
    for row in code.generator.row_bits:
        while row:
            lead = row.bit_length() - 1
            if lead not in basis:
                basis[lead] = row
                break
            row ^= basis[lead]
    v = x.bits
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return False
        v ^= basis[lead]
    return True


def affine_subspace_points(A: BitMatrix, b: int) -> list[int]:
    """Points ``x.A + b`` for all ``x``, walked in Gray-code order."""
    points = [b]
    z = b
    for g in range(1, 1 << A.rows):
        z ^= A.row_bits[(g & -g).bit_length() - 1]
        points.append(z)
    return points


def sample_min_weight_codeword(code: RmCode, rng: RngStream) -> BitVector:
    """Characteristic vector of a uniformly random (m - r)-dimensional affine subspace.

    Draw order (shared with the compiled chain kernel): the rejection rounds for
    the full-rank matrix, one row per draw, then one draw for the offset.
    """
    A = sample_full_rank_matrix(code.m - code.r, code.m, rng)
    b = rng.bits(code.m)
    bits = 0
    for z in affine_subspace_points(A, b):
        bits |= 1 << z
    return BitVector(bits, code.n)


def _check_enumerable(code: RmCode, bound: int) -> None:
    if code.k > bound:
        raise ResourceError(
            f"{code} has k = {code.k} > exhaustive bound {bound}; "
            f"raise the bound (at most {EXTENDED_K} is practical) to enumerate"
        )


def enumerate_codewords_of_weight(code: RmCode, weight: int, bound: int = EXHAUSTIVE_K) -> list[BitVector]:
    _check_enumerable(code, bound)
    found = kernel.gray_collect(code.generator_words, weight)
    return [BitVector.from_words(row, code.n) for row in found]


def enumerate_min_weight_codewords(code: RmCode, bound: int = EXHAUSTIVE_K) -> list[BitVector]:
    return enumerate_codewords_of_weight(code, code.min_distance, bound)


def count_affine_subspaces(m: int, dim: int) -> int:
    """Number of ``dim``-dimensional affine subspaces of F_2^m: 2^(m-dim) times the Gaussian binomial."""
    num = den = 1
    for i in range(dim):
        num *= (1 << (m - i)) - 1
        den *= (1 << (dim - i)) - 1
    return (1 << (m - dim)) * (num // den)
