"""Partition-function and constrained-count estimation.

``Z_beta*`` is written as ``|C|`` times a telescoping product of ratios
``Z_{beta_i} / Z_{beta_{i-1}}``.  Each ratio is the mean of
``exp(-(beta_i - beta_{i-1}) * E(c))`` over codewords drawn from
``p_{beta_{i-1}}``, estimated from ``t`` independent chain runs.  Everything is
accumulated as ``log2``; the estimates reach ``2^140`` on the larger codes.

Stream ids are ``(PHASE_ESTIMATE, replica, step, sample)``, so a run is fully
determined by its seed and is independent of worker scheduling.
"""

from __future__ import annotations

import logging
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from rmcount.constraints import Constraint
from rmcount.errors import ParameterError
from rmcount.rm import RmCode
from rmcount.rng import derive_state, derive_states
from rmcount.sampler import GibbsParams, run_chains

log = logging.getLogger(__name__)

PHASE_ESTIMATE = 0
B_SECOND_MOMENT = math.e**2


@dataclass(frozen=True)
class CoolingSchedule:
    """``beta_i = i / n`` for ``i < length``, ending exactly at ``beta_star``."""

    n: int
    beta_star: float

    def __post_init__(self) -> None:
        if not self.beta_star > 0:
            raise ParameterError(f"beta_star must be > 0, got {self.beta_star}")

    @property
    def step(self) -> float:
        return 1.0 / self.n

    @property
    def length(self) -> int:
        # tolerate beta_star * n landing a hair above an integer
        return max(1, math.ceil(self.beta_star * self.n - 1e-9))

    def beta(self, i: int) -> float:
        if i >= self.length:
            return float(self.beta_star)
        return i / self.n

    def betas(self) -> list[float]:
        return [self.beta(i) for i in range(self.length + 1)]


@dataclass
class EstimateResult:
    log2_estimate: float
    n: int
    k: int
    ratio_trace: list[float]
    steps_used: int
    t: int
    tau: int
    seed: int
    terminal_mean_energy: float
    converged: bool = True
    mode: str = "adaptive"
    delta: float | None = None
    beta_star: float | None = None
    beta_final: float = 0.0
    first_zero_energy_step: int | None = None
    replica: int = 0
    acceptance_rate: float = 0.0

    @property
    def rate(self) -> float:
        return self.log2_estimate / self.n

    @property
    def estimate(self) -> float:
        """``Z_hat`` as a float (``inf`` beyond double range)."""
        try:
            return 2.0**self.log2_estimate
        except OverflowError:
            return math.inf

    def to_dict(self) -> dict:
        out = asdict(self)
        out["rate"] = self.rate
        out["Z_hat"] = self.estimate
        return out


@dataclass
class EstimatorConfig:
    """Knobs shared by both estimators; the defaults are the paper-faithful ones."""

    t: int = 100
    tau: int = 10_000
    delta: float = 0.001
    beta_star: float | None = None
    ell_max: int | None = None
    init: str = "zero"
    literal_order: bool = False
    warm_start: bool = False
    reuse_chain: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.t < 1:
            raise ParameterError(f"t must be >= 1, got {self.t}")
        if self.tau < 1:
            raise ParameterError(f"tau must be >= 1, got {self.tau}")
        if self.beta_star is None and not self.delta > 0:
            raise ParameterError(f"delta must be > 0, got {self.delta}")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")


def _chain_batch(code, params, tau, states, init):
    words, energies = run_chains(code, params, tau, states, init)
    return words, energies, states


class _Sampler:
    """Draws the ``t`` samples of one schedule step, optionally across processes."""

    def __init__(self, code: RmCode, constraint: Constraint, config: EstimatorConfig, seed: int, replica: int):
        self.code = code
        self.constraint = constraint
        self.config = config
        self.seed = seed
        self.replica = replica
        self.previous: np.ndarray | None = None
        self.pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
        self.proposals = 0
        self.accepted_estimate = 0

    def close(self) -> None:
        if self.pool is not None:
            self.pool.shutdown()

    def draw(self, beta: float, step: int) -> np.ndarray:
        cfg = self.config
        params = GibbsParams(beta, self.constraint)
        prefix = (PHASE_ESTIMATE, self.replica, step)
        if cfg.reuse_chain:
            # one chain per step, read every tau moves (opt-in; samples are correlated)
            state = derive_state(self.seed, prefix + (0,)).reshape(1, 4)
            energies = np.empty(cfg.t, dtype=np.int64)
            init: str | np.ndarray = cfg.init
            for j in range(cfg.t):
                words, e = run_chains(self.code, params, cfg.tau, state, init)
                init = words
                energies[j] = e[0]
            return energies
        states = derive_states(self.seed, prefix, cfg.t)
        init = cfg.init
        if cfg.warm_start and self.previous is not None:
            init = self.previous
        if self.pool is None:
            words, energies = run_chains(self.code, params, cfg.tau, states, init)
        else:
            chunks = np.array_split(np.arange(cfg.t), cfg.workers)
            futures = [
                self.pool.submit(
                    _chain_batch, self.code, params, cfg.tau, states[idx],
                    init if isinstance(init, str) else init[idx],
                )
                for idx in chunks if idx.size
            ]
            parts = [f.result() for f in futures]
            words = np.concatenate([p[0] for p in parts])
            energies = np.concatenate([p[1] for p in parts])
        if cfg.warm_start:
            self.previous = words
        return energies


def _ratio_terms(energies: np.ndarray, dbeta: float) -> tuple[float, float]:
    """Sample mean of ``exp(-dbeta * E)`` and of ``1 - exp(-dbeta * E)`` (the latter without cancellation)."""
    xs = [math.exp(-dbeta * int(e)) for e in energies]
    gaps = [-math.expm1(-dbeta * int(e)) for e in energies]
    return math.fsum(xs) / len(xs), math.fsum(gaps) / len(gaps)


def _check_ratio(Y: float, dbeta: float, n: int) -> None:
    floor = math.exp(-dbeta * n)
    if not floor * (1 - 1e-12) <= Y <= 1.0:
        raise AssertionError(f"ratio {Y} outside [{floor}, 1]")


def estimate_fixed_schedule(
    code: RmCode,
    constraint: Constraint,
    beta_star: float,
    t: int = 100,
    tau: int = 10_000,
    seed: int = 0,
    *,
    config: EstimatorConfig | None = None,
    replica: int = 0,
) -> EstimateResult:
    """Estimate ``Z_beta*`` over the fixed schedule ``0, 1/n, 2/n, ..., beta_star``."""
    cfg = config or EstimatorConfig()
    cfg = EstimatorConfig(**{**asdict(cfg), "t": t, "tau": tau, "beta_star": beta_star})
    cfg.validate()
    constraint.validate(code.n)
    schedule = CoolingSchedule(code.n, beta_star)
    sampler = _Sampler(code, constraint, cfg, seed, replica)
    log2_z = float(code.k)
    trace: list[float] = []
    first_zero = None
    energies = np.zeros(1)
    try:
        for i in range(1, schedule.length + 1):
            beta_prev, beta_i = schedule.beta(i - 1), schedule.beta(i)
            energies = sampler.draw(beta_prev, i)
            if first_zero is None and not energies.any():
                first_zero = i
            dbeta = beta_i - beta_prev
            Y, _ = _ratio_terms(energies, dbeta)
            _check_ratio(Y, dbeta, code.n)
            trace.append(Y)
            log2_z += math.log2(Y)
    finally:
        sampler.close()
    return EstimateResult(
        log2_estimate=log2_z, n=code.n, k=code.k, ratio_trace=trace,
        steps_used=schedule.length, t=t, tau=tau, seed=seed,
        terminal_mean_energy=float(np.mean(energies)), converged=True,
        mode="fixed", beta_star=float(beta_star), beta_final=float(beta_star),
        first_zero_energy_step=first_zero, replica=replica,
    )


def default_ell_max(n: int) -> int:
    return 4 * n**3


def estimate_adaptive(
    code: RmCode,
    constraint: Constraint,
    delta: float = 0.001,
    t: int = 100,
    tau: int = 10_000,
    ell_max: int | None = None,
    seed: int = 0,
    *,
    config: EstimatorConfig | None = None,
    replica: int = 0,
) -> EstimateResult:
    """Extend the schedule by ``1/n`` until the running estimate moves by at most ``delta``.

    Step ``i`` samples at ``beta_{i-1}`` (the ratio identity's ordering); with
    ``literal_order`` it samples at ``beta_i`` instead, which drops the first
    ratio.  Stops when ``prev * (1 - Y) <= delta`` or after ``ell_max`` steps; the
    latter returns a result flagged ``converged=False``.
    """
    cfg = config or EstimatorConfig()
    cfg = EstimatorConfig(**{**asdict(cfg), "t": t, "tau": tau, "delta": delta, "beta_star": None})
    cfg.validate()
    constraint.validate(code.n)
    n = code.n
    if ell_max is None:
        ell_max = cfg.ell_max or default_ell_max(n)
    if ell_max < 1:
        raise ParameterError(f"ell_max must be >= 1, got {ell_max}")
    dbeta = 1.0 / n
    log2_delta = math.log2(delta)
    log2_curr = float(code.k)
    trace: list[float] = []
    first_zero = None
    converged = False
    energies = np.zeros(1)
    i = 0
    sampler = _Sampler(code, constraint, cfg, seed, replica)
    try:
        while i < ell_max:
            i += 1
            beta_sample = i * dbeta if cfg.literal_order else (i - 1) * dbeta
            energies = sampler.draw(beta_sample, i)
            if first_zero is None and not energies.any():
                first_zero = i
                log.info("step %d: all %d samples at zero energy (beta=%.4f)", i, cfg.t, beta_sample)
            Y, gap = _ratio_terms(energies, dbeta)
            _check_ratio(Y, dbeta, n)
            trace.append(Y)
            log2_prev = log2_curr
            log2_curr += math.log2(Y)
            # |curr - prev| = prev * (1 - Y), compared in the log domain
            if gap == 0.0 or log2_prev + math.log2(gap) <= log2_delta:
                converged = True
                break
    finally:
        sampler.close()
    if not converged:
        log.warning("no convergence after %d steps; terminal mean energy %.3f", i, float(np.mean(energies)))
    return EstimateResult(
        log2_estimate=log2_curr, n=n, k=code.k, ratio_trace=trace, steps_used=i,
        t=t, tau=tau, seed=seed, terminal_mean_energy=float(np.mean(energies)),
        converged=converged, mode="adaptive", delta=float(delta),
        beta_final=i * dbeta, first_zero_energy_step=first_zero, replica=replica,
    )


@dataclass(frozen=True)
class SampleBudget:
    ell: int
    epsilon: float
    B: float = B_SECOND_MOMENT

    @property
    def t_star(self) -> int:
        return math.ceil(16 * self.B * self.ell / self.epsilon**2)

    @property
    def total_samples(self) -> int:
        return self.t_star * self.ell


def sample_budget(ell: int, epsilon: float) -> SampleBudget:
    """Samples per step for a ``(1 +- epsilon)`` estimate with probability >= 3/4."""
    if ell < 1:
        raise ParameterError(f"ell must be >= 1, got {ell}")
    if not 0 < epsilon <= 1:
        raise ParameterError(f"epsilon must be in (0, 1], got {epsilon}")
    return SampleBudget(ell, epsilon)


@dataclass
class MedianEstimate:
    log2_estimate: float
    n: int
    replicas: list[EstimateResult] = field(default_factory=list)

    @property
    def rate(self) -> float:
        return self.log2_estimate / self.n

    @property
    def estimate(self) -> float:
        return 2.0**self.log2_estimate

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.replicas)


def run_estimate(code: RmCode, constraint: Constraint, config: EstimatorConfig, seed: int, replica: int = 0) -> EstimateResult:
    if config.beta_star is not None:
        return estimate_fixed_schedule(code, constraint, config.beta_star, config.t, config.tau, seed, config=config, replica=replica)
    return estimate_adaptive(code, constraint, config.delta, config.t, config.tau, config.ell_max, seed, config=config, replica=replica)


def median_amplify(code: RmCode, constraint: Constraint, config: EstimatorConfig, T: int, seed: int = 0) -> MedianEstimate:
    """Median of ``T`` independent estimates (replica ``j`` uses streams ``(.., j, ..)``).

    The median is taken on ``log2`` values; for even ``T`` the lower median is
    used so the result is always one of the replicas.
    """
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")
    replicas = [run_estimate(code, constraint, config, seed, replica=j) for j in range(T)]
    med = statistics.median_low([r.log2_estimate for r in replicas])
    return MedianEstimate(med, code.n, replicas)


def binom_le(m: int, r: int) -> int:
    """sum_{i=0}^{r} C(m, i)."""
    return sum(comb(m, i) for i in range(r + 1))


def rll_rate_lower_bound(m: int, r: int, reading: str = "log") -> float:
    """Analytical lower bound on the (1, inf)-RLL subcode rate of RM(m, r).

    ``reading="log"`` takes the first branch as ``log2 C(m-1, <= r-1) / 2^m``;
    ``"nolog"`` drops the ``log2``, which is what several published table
    entries correspond to.
    """
    if m < 1 or not 1 <= r <= m:
        raise ParameterError(f"need 1 <= r <= m, got m={m}, r={r}")
    if reading not in ("log", "nolog"):
        raise ParameterError(f"reading must be 'log' or 'nolog', got {reading!r}")
    n = 1 << m
    count = binom_le(m - 1, r - 1)
    first = (math.log2(count) if reading == "log" else count) / n
    second = binom_le(m, r) / n - 3 / 8 - 1 / (4 * 2 ** (m - 1))
    return max(first, second)
