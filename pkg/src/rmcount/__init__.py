"""Sampling-based size estimates for constrained subcodes of Reed-Muller codes."""

__version__ = "0.1.0"

from rmcount._kernels import BACKEND
from rmcount.constraints import RLL, ConstantWeight, Constraint, parse_constraint
from rmcount.estimator import (
    EstimatorConfig,
    estimate_adaptive,
    estimate_fixed_schedule,
    median_amplify,
    rll_rate_lower_bound,
    sample_budget,
)
from rmcount.gf2 import BitMatrix, BitVector
from rmcount.oracle import exact_constrained_count, exact_partition_function, weight_enumerator
from rmcount.rm import RmCode, build_rm_code, encode
from rmcount.rng import RngStream

__all__ = [
    "BACKEND",
    "BitMatrix",
    "BitVector",
    "ConstantWeight",
    "Constraint",
    "EstimatorConfig",
    "RLL",
    "RmCode",
    "RngStream",
    "build_rm_code",
    "encode",
    "estimate_adaptive",
    "estimate_fixed_schedule",
    "exact_constrained_count",
    "exact_partition_function",
    "median_amplify",
    "parse_constraint",
    "rll_rate_lower_bound",
    "sample_budget",
    "weight_enumerator",
]
