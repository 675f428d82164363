"""Compiled vs pure-Python kernel throughput.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Reports nanoseconds per Metropolis step and per enumerated codeword for each
backend, and the speedup.  Both backends run the same draws, so the final
states are checked for equality as a side effect.
"""

import argparse
import time

import numpy as np

from rmcount._kernels import KIND_RLL, KIND_WEIGHT, _pykernel
from rmcount.rm import build_rm_code
from rmcount.rng import derive_states

try:
    from rmcount._kernels import _ckernel
except ImportError:
    _ckernel = None

CHAIN_CASES = [
    ("RM(3,1) rll:1", 3, 1, KIND_RLL, 1),
    ("RM(5,3) rll:2", 5, 3, KIND_RLL, 2),
    ("RM(7,2) rll:1", 7, 2, KIND_RLL, 1),
    ("RM(8,5) rll:1", 8, 5, KIND_RLL, 1),
    ("RM(9,4) weight:80", 9, 4, KIND_WEIGHT, 80),
]
ENUM_CASES = [("RM(4,2) rll:1", 4, 2, KIND_RLL, 1), ("RM(5,2) weight", 5, 2, KIND_WEIGHT, 0)]


def time_chains(mod, m, r, kind, param, tau, chains=4):
    code = build_rm_code(m, r)
    states = derive_states(0, (m, r), chains)
    words = np.zeros((chains, code.words), dtype=np.uint64)
    energies = np.zeros(chains, dtype=np.int64)
    start = time.perf_counter()
    mod.run_chains(code.generator_words, m, r, kind, param, 1.0, tau, states, words, energies, 1)
    elapsed = time.perf_counter() - start
    return elapsed / (tau * chains) * 1e9, words.copy()


def time_enum(mod, m, r, kind, param):
    code = build_rm_code(m, r)
    start = time.perf_counter()
    hist = mod.gray_histogram(code.generator_words, code.n, kind, param)
    return (time.perf_counter() - start) / 2**code.k * 1e9, list(hist)


def best(fn, repeat):
    runs = [fn() for _ in range(repeat)]
    return min(r[0] for r in runs), runs[0][1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--py-tau", type=int, default=500, help="steps per chain for the Python backend")
    ap.add_argument("--c-tau", type=int, default=200_000, help="steps per chain for the compiled backend")
    args = ap.parse_args()
    if _ckernel is None:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'case':<22}{'python ns':>14}{'cython ns':>14}{'speedup':>10}")
    for label, m, r, kind, param in CHAIN_CASES:
        py, py_words = best(lambda: time_chains(_pykernel, m, r, kind, param, args.py_tau), args.repeat)
        if _ckernel is None:
            print(f"{label + ' step':<22}{py:>14.0f}")
            continue
        c, c_words = best(lambda: time_chains(_ckernel, m, r, kind, param, args.py_tau), 1)
        assert np.array_equal(py_words, c_words), "backends disagree"
        c, _ = best(lambda: time_chains(_ckernel, m, r, kind, param, args.c_tau), args.repeat)
        print(f"{label + ' step':<22}{py:>14.0f}{c:>14.1f}{py / c:>9.0f}x")
    for label, m, r, kind, param in ENUM_CASES:
        py, py_hist = best(lambda: time_enum(_pykernel, m, r, kind, param), 1)
        if _ckernel is None:
            print(f"{label + ' enum':<22}{py:>14.0f}")
            continue
        c, c_hist = best(lambda: time_enum(_ckernel, m, r, kind, param), args.repeat)
        assert py_hist == c_hist, "backends disagree"
        print(f"{label + ' enum':<22}{py:>14.0f}{c:>14.1f}{py / c:>9.0f}x")


if __name__ == "__main__":
    main()
