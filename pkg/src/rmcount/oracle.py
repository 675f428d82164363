"""Exact brute-force quantities for enumerable codes.

All codewords are visited in Gray-code message order, so each step xors a
single generator row into the running codeword.  One pass produces the full
energy histogram; partition functions at any beta are then a weighted sum
over at most ``n + 1`` energy levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from rmcount._kernels import kernel
from rmcount.constraints import RLL, Constraint, ConstantWeight
from rmcount.errors import ResourceError
from rmcount.gf2 import BitVector
from rmcount.rm import EXHAUSTIVE_K, EXTENDED_K, RmCode

GIBBS_VECTOR_K = 16


@dataclass
class OracleResult:
    exact_count: int
    weight_enumerator: list[int] | None = None
    energy_histogram: list[int] | None = None
    partition_values: dict[float, float] = field(default_factory=dict)


def _check_bound(code: RmCode, bound: int) -> None:
    if code.k > bound:
        hint = f" (pass allow_extended / --allow-k29 for k <= {EXTENDED_K})" if code.k <= EXTENDED_K else ""
        raise ResourceError(f"{code} has k = {code.k} > exhaustive bound {bound}{hint}")


def gray_codewords(code: RmCode) -> Iterator[int]:
    """Every codeword once, as ints, each differing from the last by one generator row."""
    rows = code.generator.row_bits
    x = 0
    yield x
    for g in range(1, 1 << code.k):
        x ^= rows[(g & -g).bit_length() - 1]
        yield x


def energy_histogram(code: RmCode, constraint: Constraint, bound: int = EXHAUSTIVE_K) -> list[int]:
    """``h[E]`` = number of codewords with energy ``E``, for ``E`` in ``[0, n]``."""
    _check_bound(code, bound)
    constraint.validate(code.n)
    if isinstance(constraint, (RLL, ConstantWeight)):
        hist = kernel.gray_histogram(code.generator_words, code.n, constraint.kind, constraint.param)
        return [int(v) for v in hist]
    hist = [0] * (code.n + 1)
    for x in gray_codewords(code):
        hist[constraint.energy(BitVector(x, code.n))] += 1
    return hist


def exact_constrained_count(code: RmCode, constraint: Constraint, bound: int = EXHAUSTIVE_K) -> int:
    return energy_histogram(code, constraint, bound)[0]


def weight_enumerator(code: RmCode, bound: int = EXHAUSTIVE_K) -> list[int]:
    """``A[w]`` = number of codewords of Hamming weight ``w``, ``w`` in ``[0, n]``."""
    # the weight-0 energy is the Hamming weight itself
    return energy_histogram(code, ConstantWeight(0), bound)


def partition_from_histogram(hist: list[int], beta: float) -> float:
    return math.fsum(h * math.exp(-beta * e) for e, h in enumerate(hist) if h)


def exact_partition_function(code: RmCode, constraint: Constraint, beta: float, bound: int = EXHAUSTIVE_K) -> float:
    return partition_from_histogram(energy_histogram(code, constraint, bound), beta)


@dataclass(frozen=True)
class GibbsTable:
    """Exact Gibbs distribution: ``probabilities[i]`` is the mass of ``codewords[i]`` (ints, sorted)."""

    codewords: np.ndarray
    energies: np.ndarray
    probabilities: np.ndarray

    def index(self) -> dict[int, int]:
        return {int(c): i for i, c in enumerate(self.codewords)}


def exact_gibbs_distribution(code: RmCode, constraint: Constraint, beta: float, bound: int = GIBBS_VECTOR_K) -> GibbsTable:
    _check_bound(code, bound)
    constraint.validate(code.n)
    words = sorted(gray_codewords(code))
    energies = np.array([constraint.energy(BitVector(x, code.n)) for x in words], dtype=np.int64)
    if math.isinf(beta):
        weights = (energies == 0).astype(float)
    else:
        weights = np.exp(-beta * (energies - energies.min())) if beta > 0 else np.ones(len(words))
    probs = weights / weights.sum()
    return GibbsTable(np.array(words, dtype=object), energies, probs)


def run_oracle(
    code: RmCode,
    constraint: Constraint | None,
    betas: tuple[float, ...] = (),
    allow_extended: bool = False,
) -> OracleResult:
    bound = EXTENDED_K if allow_extended else EXHAUSTIVE_K
    if constraint is None:
        enum = weight_enumerator(code, bound)
        return OracleResult(exact_count=sum(enum), weight_enumerator=enum)
    hist = energy_histogram(code, constraint, bound)
    values = {float(b): partition_from_histogram(hist, b) for b in betas}
    return OracleResult(exact_count=hist[0], energy_histogram=hist, partition_values=values)
