"""Metropolis chain on RM codewords targeting the Gibbs distribution.

A move adds a uniformly random minimum-weight codeword; it is accepted with
probability ``min(1, exp(-beta * (E(new) - E(old))))``.  The proposal is
symmetric, so the chain is reversible with respect to
``p_beta(c) ~ exp(-beta * E(c))`` on the code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rmcount._kernels import kernel
from rmcount.constraints import RLL, Constraint, ConstantWeight
from rmcount.errors import DimensionError, ParameterError
from rmcount.gf2 import BitVector
from rmcount.rm import RmCode, sample_min_weight_codeword
from rmcount.rng import RngStream

INIT_MODES = ("zero", "random")


@dataclass(frozen=True)
class GibbsParams:
    beta: float
    constraint: Constraint

    def __post_init__(self) -> None:
        if not self.beta >= 0:
            raise ParameterError(f"beta must be >= 0, got {self.beta}")


@dataclass(frozen=True)
class ChainState:
    codeword: BitVector
    energy: int

    @classmethod
    def at(cls, codeword: BitVector, constraint: Constraint) -> ChainState:
        return cls(codeword, constraint.energy(codeword))


def acceptance_probability(beta: float, delta_energy: int) -> float:
    if delta_energy <= 0:
        return 1.0
    return math.exp(-beta * delta_energy)


def metropolis_step(state: ChainState, code: RmCode, params: GibbsParams, rng: RngStream) -> ChainState:
    proposal = state.codeword ^ sample_min_weight_codeword(code, rng)
    energy = params.constraint.energy(proposal)
    delta = energy - state.energy
    # the uniform is drawn only for uphill moves
    if delta <= 0 or rng.uniform() < math.exp(-params.beta * delta):
        return ChainState(proposal, energy)
    return state


def _has_kernel(constraint: Constraint) -> bool:
    return isinstance(constraint, (RLL, ConstantWeight))


def default_init(code: RmCode, mode: str, rng: RngStream) -> BitVector:
    """All-zero codeword, or the encoding of a uniform message.

    A random message takes ``ceil(k / 64)`` draws; bit ``i`` is bit ``i % 64``
    of draw ``i // 64``.
    """
    if mode == "zero":
        return BitVector.zeros(code.n)
    if mode != "random":
        raise ParameterError(f"init mode must be one of {INIT_MODES}, got {mode!r}")
    bits = 0
    word = 0
    for i, row in enumerate(code.generator.row_bits):
        if i % 64 == 0:
            word = rng.next_u64()
        if (word >> (i % 64)) & 1:
            bits ^= row
    return BitVector(bits, code.n)


def run_chain(code: RmCode, params: GibbsParams, tau: int, init: BitVector, rng: RngStream) -> BitVector:
    """Apply ``tau`` Metropolis steps from ``init``; advances ``rng`` exactly as ``tau`` calls to
    :func:`metropolis_step` would."""
    if tau < 0:
        raise ParameterError(f"tau must be >= 0, got {tau}")
    if init.length != code.n:
        raise DimensionError(f"init length {init.length} != n = {code.n}")
    constraint = params.constraint
    constraint.validate(code.n)
    if not _has_kernel(constraint):
        state = ChainState.at(init, constraint)
        for _ in range(tau):
            state = metropolis_step(state, code, params, rng)
        return state.codeword
    states = rng.state_array().reshape(1, 4)
    words = init.to_words().reshape(1, -1)
    energies = np.zeros(1, dtype=np.int64)
    kernel.run_chains(
        code.generator_words, code.m, code.r, constraint.kind, constraint.param,
        float(params.beta), int(tau), states, words, energies, 0,
    )
    rng.set_state(states[0])
    return BitVector.from_words(words[0], code.n)


def run_chains(
    code: RmCode,
    params: GibbsParams,
    tau: int,
    states: np.ndarray,
    init: str | np.ndarray = "random",
) -> tuple[np.ndarray, np.ndarray]:
    """Run one independent chain per row of ``states`` (shape ``(N, 4)``, advanced in place).

    ``init`` is ``"zero"``, ``"random"`` (drawn from each chain's own stream) or an
    ``(N, words)`` array of starting codewords.  Returns final codewords as words
    and their energies.
    """
    constraint = params.constraint
    constraint.validate(code.n)
    if not _has_kernel(constraint):
        raise ParameterError(f"no compiled kernel for constraint {constraint!r}")
    N = states.shape[0]
    if isinstance(init, str):
        if init not in INIT_MODES:
            raise ParameterError(f"init mode must be one of {INIT_MODES}, got {init!r}")
        words = np.zeros((N, code.words), dtype=np.uint64)
        random_init = int(init == "random")
    else:
        words = np.array(init, dtype=np.uint64, order="C", copy=True)
        if words.shape != (N, code.words):
            raise DimensionError(f"init shape {words.shape} != {(N, code.words)}")
        random_init = 0
    energies = np.zeros(N, dtype=np.int64)
    kernel.run_chains(
        code.generator_words, code.m, code.r, constraint.kind, constraint.param,
        float(params.beta), int(tau), states, words, energies, random_init,
    )
    return words, energies
