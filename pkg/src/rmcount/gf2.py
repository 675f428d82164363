"""Bit-packed vectors and matrices over GF(2).

Vectors are stored as Python ints: coordinate ``j`` (0-based) is bit ``j``.
Their string form lists coordinates left to right, so ``"1100"`` has bits 0
and 1 set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from rmcount.errors import DimensionError

WORD_BITS = 64


def words_for(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


@dataclass(frozen=True)
class BitVector:
    """A binary word of fixed ``length``; ``bits`` never has bits at or above ``length``."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise DimensionError(f"length must be positive, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError("payload has bits outside the vector length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(0, length)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls((1 << length) - 1, length)

    @classmethod
    def unit(cls, index: int, length: int) -> BitVector:
        if not 0 <= index < length:
            raise DimensionError(f"index {index} out of range for length {length}")
        return cls(1 << index, length)

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        text = text.replace(" ", "").replace("_", "")
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        bits = 0
        for j, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << j
        return cls(bits, len(text))

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> BitVector:
        return cls.from_string("".join("1" if v else "0" for v in values))

    @classmethod
    def from_words(cls, words: Sequence[int], length: int) -> BitVector:
        bits = 0
        for w, word in enumerate(words):
            bits |= int(word) << (WORD_BITS * w)
        return cls(bits & ((1 << length) - 1), length)

    def to_words(self) -> np.ndarray:
        out = np.zeros(words_for(self.length), dtype=np.uint64)
        bits = self.bits
        for w in range(out.size):
            out[w] = bits & 0xFFFFFFFFFFFFFFFF
            bits >>= WORD_BITS
        return out

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.bits >> index) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        return xor_into(self, other)

    def __and__(self, other: BitVector) -> BitVector:
        _check_same_length(self, other)
        return BitVector(self.bits & other.bits, self.length)

    def __invert__(self) -> BitVector:
        return BitVector(self.bits ^ ((1 << self.length) - 1), self.length)

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))


def _check_same_length(a: BitVector, b: BitVector) -> None:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} vs {b.length}")


def xor_into(a: BitVector, b: BitVector) -> BitVector:
    _check_same_length(a, b)
    return BitVector(a.bits ^ b.bits, a.length)


def hamming_weight(x: BitVector) -> int:
    return x.bits.bit_count()


@dataclass(frozen=True)
class BitMatrix:
    """Row-major binary matrix; each row is an int of ``cols`` bits."""

    row_bits: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        if self.cols < 1:
            raise DimensionError(f"cols must be positive, got {self.cols}")
        for row in self.row_bits:
            if row < 0 or row >> self.cols:
                raise DimensionError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        if cols is None:
            if not rows:
                raise DimensionError("cols is required for an empty matrix")
            cols = rows[0].length
        for row in rows:
            if row.length != cols:
                raise DimensionError(f"row length {row.length} != {cols}")
        return cls(tuple(row.bits for row in rows), cols)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        return cls.from_rows([BitVector.from_string(r) for r in rows])

    @classmethod
    def identity(cls, size: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(size)), size)

    @property
    def rows(self) -> int:
        return len(self.row_bits)

    @property
    def row_data(self) -> list[BitVector]:
        return [BitVector(b, self.cols) for b in self.row_bits]

    def row(self, i: int) -> BitVector:
        return BitVector(self.row_bits[i], self.cols)

    def to_words(self) -> np.ndarray:
        out = np.zeros((self.rows, words_for(self.cols)), dtype=np.uint64)
        for i, bits in enumerate(self.row_bits):
            out[i] = BitVector(bits, self.cols).to_words()
        return out


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of int-encoded rows (works on a copy)."""
    # pivot basis keyed by leading bit; reduces each row against it
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            pivot = basis.get(lead)
            if pivot is None:
                basis[lead] = row
                break
            row ^= pivot
    return len(basis)


def rank(M: BitMatrix) -> int:
    return rank_of_rows(M.row_bits)


def random_matrix(rows: int, cols: int, rng) -> BitMatrix:
    """Uniform ``rows x cols`` matrix; consumes one 64-bit draw per row."""
    if cols > WORD_BITS:
        raise DimensionError(f"cols > {WORD_BITS} not supported for random rows")
    return BitMatrix(tuple(rng.next_u64() >> (WORD_BITS - cols) for _ in range(rows)), cols)


def sample_full_rank_matrix(rows: int, cols: int, rng, *, with_rounds: bool = False):
    """Uniform full-rank ``rows x cols`` matrix by rejection.

    With ``with_rounds=True`` returns ``(matrix, rounds)`` where ``rounds`` counts
    candidate matrices drawn (0 for the empty matrix).
    """
    if rows < 0 or rows > cols:
        raise DimensionError(f"no full-rank {rows}x{cols} matrix exists")
    rounds = 0
    if rows == 0:
        M = BitMatrix((), cols)
    else:
        while True:
            rounds += 1
            M = random_matrix(rows, cols, rng)
            if rank(M) == rows:
                break
    return (M, rounds) if with_rounds else M


def square_full_rank_probability(rows: int) -> float:
    """prod_{i=1}^{rows} (1 - 2^-i): full-rank probability of a square ``rows x rows`` matrix.

    Also a lower bound on :func:`full_rank_probability` for every ``cols >= rows``;
    tends to about 0.2888 as ``rows`` grows.
    """
    p = 1.0
    for i in range(1, rows + 1):
        p *= 1.0 - 2.0 ** (-i)
    return p


def full_rank_probability(rows: int, cols: int) -> float:
    """Exact probability that a uniform ``rows x cols`` GF(2) matrix has rank ``rows``."""
    p = 1.0
    for i in range(rows):
        p *= 1.0 - 2.0 ** (i - cols)
    return p


def mat_vec_mul(x: BitVector, M: BitMatrix) -> BitVector:
    """Row vector times matrix: xor of the rows of ``M`` selected by ``x``."""
    if x.length != M.rows:
        raise DimensionError(f"vector length {x.length} != matrix rows {M.rows}")
    acc = 0
    bits = x.bits
    i = 0
    while bits:
        if bits & 1:
            acc ^= M.row_bits[i]
        bits >>= 1
        i += 1
    return BitVector(acc, M.cols)
