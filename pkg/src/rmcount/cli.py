"""Command-line interface.

    rmcount estimate --m 7 --r 3 --constraint rll:1
    rmcount oracle --m 5 --r 2 --constraint rll:2
    rmcount weights --m 5 --r 3 --mode exact
    rmcount budget --ell 100 --epsilon 1
    rmcount lower-bound --m 7 --r 4
    rmcount reproduce-table I --replicas 5

Results are written as canonical JSON (default) or CSV to stdout or
``--output``; a one-line human summary goes to stderr.
"""

from __future__ import annotations

import functools
import logging
import math
import os
import sys
import time

import click

from rmcount.constraints import CONSTRAINT_GRAMMAR, ConstantWeight, Constraint, parse_constraint
from rmcount.errors import ParameterError, RmCountError
from rmcount.estimator import (
    CoolingSchedule,
    EstimatorConfig,
    median_amplify,
    rll_rate_lower_bound,
    sample_budget,
)
from rmcount.oracle import run_oracle, weight_enumerator
from rmcount.records import RunRecord, pretty_count
from rmcount.rm import EXHAUSTIVE_K, EXTENDED_K, build_rm_code
from rmcount.tables import TABLES, TableRow

JOBS_ENV = "RMCOUNT_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


class ConstraintType(click.ParamType):
    name = "constraint"

    def convert(self, value, param, ctx):
        if isinstance(value, Constraint):
            return value
        try:
            return parse_constraint(value)
        except ParameterError:
            self.fail(f"{value!r} is not a constraint; grammar: {CONSTRAINT_GRAMMAR}", param, ctx)


CONSTRAINT = ConstraintType()


def code_options(f):
    f = click.option("--r", "r", type=int, required=True, help="Order r, 0 <= r <= m.")(f)
    f = click.option("--m", "m", type=int, required=True, help="Number of variables; n = 2^m.")(f)
    return f


def output_options(f):
    f = click.option("--output", "output", type=click.Path(dir_okay=False), default=None,
                     help="Write the record here instead of stdout.")(f)
    f = click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json",
                     show_default=True)(f)
    return f


def sampling_options(f):
    opts = [
        click.option("--tau", type=int, default=10_000, show_default=True, help="Metropolis steps per sample."),
        click.option("--t", "t", type=int, default=100, show_default=True, help="Samples per schedule step."),
        click.option("--delta", type=float, default=0.001, show_default=True, help="Adaptive stopping precision."),
        click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True),
        click.option("--replicas", "T", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Independent estimates; the median is reported."),
        click.option("--jobs", type=click.IntRange(min=1), default=None,
                     help=f"Worker processes (default: ${JOBS_ENV} or 1)."),
        click.option("--ell-max", type=int, default=None, help="Adaptive step cap (default 4 n^3)."),
        click.option("--init", type=click.Choice(["random", "zero"]), default="zero", show_default=True),
        click.option("--reuse-chain", is_flag=True, help="Read samples off one chain per step (correlated)."),
        click.option("--warm-start", is_flag=True, help="Start step i's chains from step i-1's states."),
        click.option("--literal-alg3-order", "literal_order", is_flag=True,
                     help="Sample at the incremented beta (drops the first ratio)."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(t, tau, delta, jobs, ell_max, init, reuse_chain, warm_start, literal_order, beta_star=None):
    return EstimatorConfig(
        t=t, tau=tau, delta=delta, beta_star=beta_star, ell_max=ell_max, init=init,
        literal_order=literal_order, warm_start=warm_start, reuse_chain=reuse_chain,
        workers=jobs or default_jobs(),
    )


def _emit(record: RunRecord, output_format: str, output: str | None) -> None:
    text = record.to_json() if output_format == "json" else record.to_csv()
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _note(msg: str) -> None:
    click.echo(msg, err=True)


def handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except RmCountError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


@click.group()
@click.option("-v", "--verbose", count=True, help="Log progress to stderr.")
def main(verbose: int) -> None:
    """Estimate sizes of constrained subcodes of Reed-Muller codes."""
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _estimate_row(m, r, constraint, cfg, seed, med, exact=None) -> dict:
    n = 1 << m
    return {
        "m": m, "r": r, "constraint": constraint.spec(), "tau": cfg.tau, "t": cfg.t,
        "delta": cfg.delta if cfg.beta_star is None else None, "seed": seed,
        "log2_Z_hat": med.log2_estimate, "Z_hat": med.estimate, "rate": med.rate,
        "exact_Z": exact, "exact_rate": (math.log2(exact) / n if exact else None),
        "steps": sum(rep.steps_used for rep in med.replicas), "converged": med.converged,
    }


def _median_payload(med) -> dict:
    return {
        "log2_Z_hat": med.log2_estimate, "Z_hat": med.estimate, "rate": med.rate,
        "converged": med.converged, "warning": None if med.converged else "did not converge within ell_max",
        "replicas": [rep.to_dict() for rep in med.replicas],
    }


@main.command()
@code_options
@click.option("--constraint", type=CONSTRAINT, required=True, help=f"Constraint: {CONSTRAINT_GRAMMAR}.")
@sampling_options
@click.option("--beta-star", type=float, default=None, help="Use the fixed schedule up to this beta.")
@click.option("--compare-exact", is_flag=True, help="Also brute-force Z when the code is enumerable.")
@output_options
@handle_errors
def estimate(m, r, constraint, tau, t, delta, seed, T, jobs, ell_max, init, reuse_chain, warm_start,
             literal_order, beta_star, compare_exact, output_format, output):
    """Estimate the number of constrained codewords by Gibbs sampling."""
    code = build_rm_code(m, r)
    cfg = _config(t, tau, delta, jobs, ell_max, init, reuse_chain, warm_start, literal_order, beta_star)
    cfg.validate()
    start = time.perf_counter()
    med = median_amplify(code, constraint, cfg, T, seed)
    exact = None
    if compare_exact and code.k <= EXHAUSTIVE_K:
        exact = run_oracle(code, constraint).exact_count
    wall = (time.perf_counter() - start) * 1000
    config = {
        "command": "estimate", "m": m, "r": r, "constraint": constraint.spec(), "tau": tau, "t": t,
        "delta": delta, "beta_star": beta_star, "seed": seed, "replicas": T, "ell_max": ell_max,
        "init": init, "reuse_chain": reuse_chain, "warm_start": warm_start, "literal_alg3_order": literal_order,
    }
    result = _median_payload(med)
    result["exact_Z"] = exact
    row = _estimate_row(m, r, constraint, cfg, seed, med, exact)
    record = RunRecord("estimate", config, result, wall, rows=[row])
    _emit(record, output_format, output)
    _note(f"{code} {constraint.spec()}: Z_hat = {pretty_count(med.estimate)} "
          f"(log2 {med.log2_estimate:.4f}), rate {med.rate:.4f}"
          + ("" if med.converged else "  [WARNING: not converged]"))


@main.command()
@code_options
@click.option("--constraint", type=CONSTRAINT, required=True, help=f"Constraint: {CONSTRAINT_GRAMMAR}.")
@click.option("--beta", "betas", type=float, multiple=True, help="Also report Z_beta (repeatable).")
@click.option("--allow-k29", is_flag=True, help=f"Raise the enumeration bound from k={EXHAUSTIVE_K} to {EXTENDED_K}.")
@output_options
@handle_errors
def oracle(m, r, constraint, betas, allow_k29, output_format, output):
    """Exact count by enumerating every codeword."""
    code = build_rm_code(m, r)
    start = time.perf_counter()
    res = run_oracle(code, constraint, tuple(betas), allow_extended=allow_k29)
    wall = (time.perf_counter() - start) * 1000
    exact = res.exact_count
    exact_rate = math.log2(exact) / code.n if exact else None
    config = {"command": "oracle", "m": m, "r": r, "constraint": constraint.spec(),
              "betas": list(betas), "allow_k29": allow_k29}
    result = {
        "exact_Z": exact, "exact_rate": exact_rate, "energy_histogram": res.energy_histogram,
        "partition_values": {repr(b): v for b, v in res.partition_values.items()},
    }
    row = {"m": m, "r": r, "constraint": constraint.spec(), "exact_Z": exact, "exact_rate": exact_rate}
    _emit(RunRecord("oracle", config, result, wall, rows=[row]), output_format, output)
    _note(f"{code} {constraint.spec()}: Z = {exact}" + (f", rate {exact_rate:.4f}" if exact else ""))


def sweep_weights(m: int, r: int) -> list[int]:
    """Even weights from the minimum distance up to n/2; the rest follow by symmetry."""
    return list(range(1 << (m - r), (1 << (m - 1)) + 1, 2)) if r >= 1 else []


@main.command()
@code_options
@click.option("--mode", type=click.Choice(["exact", "estimate"]), default="exact", show_default=True)
@click.option("--omega", "omegas", type=int, multiple=True, help="Weights to estimate (default: full sweep).")
@click.option("--allow-k29", is_flag=True)
@sampling_options
@output_options
@handle_errors
def weights(m, r, mode, omegas, allow_k29, tau, t, delta, seed, T, jobs, ell_max, init, reuse_chain,
            warm_start, literal_order, output_format, output):
    """Weight enumerator, exactly or by one estimate per weight."""
    code = build_rm_code(m, r)
    n = code.n
    start = time.perf_counter()
    rows: list[dict] = []
    if mode == "exact":
        enum = weight_enumerator(code, EXTENDED_K if allow_k29 else EXHAUSTIVE_K)
        for w, a in enumerate(enum):
            if a:
                rows.append({"m": m, "r": r, "constraint": f"weight:{w}", "exact_Z": a,
                             "exact_rate": math.log2(a) / n})
        result = {"A": enum}
        config = {"command": "weights", "mode": mode, "m": m, "r": r, "allow_k29": allow_k29}
    else:
        cfg = _config(t, tau, delta, jobs, ell_max, init, reuse_chain, warm_start, literal_order)
        cfg.validate()
        targets = sorted(set(omegas)) if omegas else sweep_weights(m, r)
        log2_a: list[float | None] = [None] * (n + 1)
        log2_a[0] = log2_a[n] = 0.0
        details = {}
        for w in targets:
            med = median_amplify(code, ConstantWeight(w), cfg, T, seed)
            log2_a[w] = med.log2_estimate
            if not omegas:
                log2_a[n - w] = med.log2_estimate
            details[str(w)] = _median_payload(med)
            rows.append(_estimate_row(m, r, ConstantWeight(w), cfg, seed, med))
            _note(f"  weight {w}: rate {med.rate:.4f}")
        result = {"log2_A_hat": log2_a, "weights": targets, "estimates": details}
        config = {"command": "weights", "mode": mode, "m": m, "r": r, "omegas": list(omegas), "tau": tau,
                  "t": t, "delta": delta, "seed": seed, "replicas": T, "ell_max": ell_max, "init": init,
                  "reuse_chain": reuse_chain, "warm_start": warm_start, "literal_alg3_order": literal_order}
    wall = (time.perf_counter() - start) * 1000
    _emit(RunRecord("weights", config, result, wall, rows=rows), output_format, output)


@main.command()
@click.option("--ell", type=int, default=None, help="Schedule length.")
@click.option("--n", "n", type=int, default=None, help="Blocklength (with --beta-star).")
@click.option("--beta-star", type=float, default=None, help="Target beta; ell = ceil(beta_star * n).")
@click.option("--epsilon", type=float, default=1.0, show_default=True)
@click.option("--tau", type=int, default=10_000, show_default=True, help="For the chain-step projection.")
@click.option("--steps-per-second", type=float, default=None, help="Chain throughput for a runtime projection.")
@output_options
@handle_errors
def budget(ell, n, beta_star, epsilon, tau, steps_per_second, output_format, output):
    """Samples per step needed for a (1 +- epsilon) guarantee with probability 3/4."""
    if ell is None:
        if n is None or beta_star is None:
            raise click.UsageError("give --ell, or both --n and --beta-star")
        ell = CoolingSchedule(n, beta_star).length
    b = sample_budget(ell, epsilon)
    steps = b.total_samples * tau
    result = {"ell": ell, "epsilon": epsilon, "B": b.B, "t_star": b.t_star, "total_samples": b.total_samples,
              "total_chain_steps": steps,
              "projected_seconds": steps / steps_per_second if steps_per_second else None}
    config = {"command": "budget", "ell": ell, "n": n, "beta_star": beta_star, "epsilon": epsilon, "tau": tau,
              "steps_per_second": steps_per_second}
    _emit(RunRecord("budget", config, result, rows=[{**result, "tau": tau}]), output_format, output)
    _note(f"t* = {b.t_star} samples per step, ell = {ell}, total samples {b.total_samples}")


@main.command("lower-bound")
@code_options
@click.option("--no-log-lb", is_flag=True, help="Drop the log2 in the first branch.")
@output_options
@handle_errors
def lower_bound(m, r, no_log_lb, output_format, output):
    """Analytical lower bound on the (1, inf)-RLL subcode rate."""
    both = {reading: rll_rate_lower_bound(m, r, reading) for reading in ("log", "nolog")}
    chosen = both["nolog" if no_log_lb else "log"]
    result = {"lower_bound": chosen, "log_reading": both["log"], "nolog_reading": both["nolog"],
              "min_over_readings": min(both.values())}
    config = {"command": "lower-bound", "m": m, "r": r, "no_log_lb": no_log_lb}
    _emit(RunRecord("lower-bound", config, result, rows=[{"m": m, "r": r, **result}]), output_format, output)
    _note(f"RM({m},{r}): R1_LB = {chosen:.4f}")


def reproduce_row(row: TableRow, seed: int, T: int, jobs: int) -> dict:
    code = build_rm_code(row.m, row.r)
    constraint = parse_constraint(row.constraint)
    cfg = EstimatorConfig(t=row.t, tau=row.tau, delta=row.delta, workers=jobs)
    start = time.perf_counter()
    exact = None
    if row.exact_z is not None and code.k <= EXTENDED_K:
        exact = run_oracle(code, constraint, allow_extended=True).exact_count
    med = median_amplify(code, constraint, cfg, T, seed)
    out = _estimate_row(row.m, row.r, constraint, cfg, seed, med, exact)
    out.update(
        wall_ms=(time.perf_counter() - start) * 1000, table=row.table,
        paper_Z_hat=row.paper_z_hat, paper_rate=row.paper_rate, paper_exact_Z=row.exact_z,
        abs_err=abs(med.estimate - exact) if exact is not None else None,
        rate_gap=med.rate - out["exact_rate"] if exact else None,
    )
    if row.table == "II":
        out.update(paper_lb=row.paper_lb, lb_log=rll_rate_lower_bound(row.m, row.r, "log"),
                   lb_nolog=rll_rate_lower_bound(row.m, row.r, "nolog"))
    return out


@main.command("reproduce-table")
@click.argument("table", type=click.Choice(sorted(TABLES)))
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--replicas", "T", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=None)
@click.option("--long", "long_", is_flag=True, help="Required for table IV (tau = 5e5 on n = 512).")
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@handle_errors
def reproduce_table(table, seed, T, jobs, long_, output_format, output):
    """Re-run every row of a published table with its printed parameters."""
    if table == "IV" and not long_:
        raise click.UsageError("table IV takes hours; pass --long to run it")
    jobs = jobs or default_jobs()
    start = time.perf_counter()
    rows = []
    for row in TABLES[table]:
        _note(f"table {table}: RM({row.m},{row.r}) {row.constraint} tau={row.tau} t={row.t} delta={row.delta}")
        rows.append(reproduce_row(row, seed, T, jobs))
        _note(f"  rate {rows[-1]['rate']:.4f} (paper {row.paper_rate}), exact {rows[-1]['exact_Z']}")
    wall = (time.perf_counter() - start) * 1000
    config = {"command": "reproduce-table", "table": table, "seed": seed, "replicas": T}
    _emit(RunRecord("reproduce-table", config, {"rows": len(rows)}, wall, rows=rows), output_format, output)


if __name__ == "__main__":
    sys.exit(main())
