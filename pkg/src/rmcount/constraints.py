"""Constraints and their energy functions.

An energy is a nonnegative integer that vanishes exactly on the words that
satisfy the constraint.  New constraint kinds subclass :class:`Constraint` and
supply :meth:`Constraint.energy`; only the two built-in kinds have compiled
kernels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from rmcount._kernels import KIND_RLL, KIND_WEIGHT
from rmcount.errors import ParameterError
from rmcount.gf2 import BitVector


def energy_rll(x: BitVector, d: int) -> int:
    """Number of 1-positions followed by another 1 within the next ``d`` positions.

    Every position is checked (the window is clipped at the end of the word), so
    the energy is zero exactly on words with at least ``d`` zeros between ones.
    """
    if d < 1:
        raise ParameterError(f"RLL parameter d must be >= 1, got {d}")
    ahead = 0
    for i in range(1, d + 1):
        ahead |= x.bits >> i
    return (x.bits & ahead).bit_count()


def energy_weight(x: BitVector, omega: int) -> int:
    if not 0 <= omega <= x.length:
        raise ParameterError(f"weight {omega} outside [0, {x.length}]")
    return abs(x.bits.bit_count() - omega)


class Constraint:
    kind: int = -1
    param: int = 0

    def energy(self, x: BitVector) -> int:
        raise NotImplementedError

    def validate(self, n: int) -> None:
        pass

    def is_satisfied(self, x: BitVector) -> bool:
        return self.energy(x) == 0

    def spec(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class RLL(Constraint):
    """(d, infinity) run-length limit: at least ``d`` zeros between successive ones."""

    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ParameterError(f"RLL parameter d must be >= 1, got {self.d}")

    @property
    def kind(self) -> int:
        return KIND_RLL

    @property
    def param(self) -> int:
        return self.d

    def energy(self, x: BitVector) -> int:
        return energy_rll(x, self.d)

    def spec(self) -> str:
        return f"rll:{self.d}"


@dataclass(frozen=True)
class ConstantWeight(Constraint):
    omega: int

    def __post_init__(self) -> None:
        if self.omega < 0:
            raise ParameterError(f"weight must be >= 0, got {self.omega}")

    @property
    def kind(self) -> int:
        return KIND_WEIGHT

    @property
    def param(self) -> int:
        return self.omega

    def validate(self, n: int) -> None:
        if self.omega > n:
            raise ParameterError(f"weight {self.omega} outside [0, {n}]")

    def energy(self, x: BitVector) -> int:
        return energy_weight(x, self.omega)

    def spec(self) -> str:
        return f"weight:{self.omega}"


def is_satisfied(x: BitVector, c: Constraint) -> bool:
    return c.energy(x) == 0


def rll_member(x: BitVector, d: int) -> bool:
    """Direct membership test: every gap between consecutive ones has >= d zeros."""
    ones = x.support()
    return all(b - a - 1 >= d for a, b in zip(ones, ones[1:]))


CONSTRAINT_GRAMMAR = "rll:<d> | weight:<omega>"
_SYNTAX = re.compile(r"^\s*(rll|weight)\s*:\s*(\d+)\s*$")


def parse_constraint(text: str) -> Constraint:
    match = _SYNTAX.match(text)
    if not match:
        raise ParameterError(f"bad constraint {text!r}; expected {CONSTRAINT_GRAMMAR}")
    name, value = match.group(1), int(match.group(2))
    return RLL(value) if name == "rll" else ConstantWeight(value)
