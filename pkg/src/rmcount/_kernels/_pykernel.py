"""Pure-Python versions of the compiled kernels (same signatures, same draws)."""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

KIND_RLL = 0
KIND_WEIGHT = 1
MASK64 = 0xFFFFFFFFFFFFFFFF


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def _rows_as_ints(gen: np.ndarray) -> list[int]:
    out = []
    for row in gen:
        v = 0
        for w, word in enumerate(row):
            v |= int(word) << (64 * w)
        out.append(v)
    return out


def _to_words(x: int, W: int) -> list[int]:
    return [(x >> (64 * w)) & MASK64 for w in range(W)]


def rll_energy_int(x: int, d: int) -> int:
    acc = 0
    for i in range(1, d + 1):
        acc |= x >> i
    return (x & acc).bit_count()


def _energy(x: int, kind: int, param: int) -> int:
    if kind == KIND_RLL:
        return rll_energy_int(x, param)
    return abs(x.bit_count() - param)


def run_chains(gen, m, r, kind, param, beta, tau, states, codewords, energies, random_init):
    N, W = codewords.shape
    if W != ((1 << m) + 63) // 64:
        raise ValueError("codeword width does not match 2^m")
    if kind not in (KIND_RLL, KIND_WEIGHT):
        raise ValueError("unknown constraint kind")
    rows = _rows_as_ints(gen)
    k = len(rows)
    n = 1 << m
    mr = m - r
    shift = 64 - m
    span = 1 << mr
    # ctz sequence for the Gray walk over the subspace
    ctz = [((g & -g).bit_length() - 1) for g in range(1, span)]
    accept_p = [1.0] + [math.exp(-beta * i) for i in range(1, n + 2)]
    accepted = 0
    for c in range(N):
        s0, s1, s2, s3 = (int(v) for v in states[c])

        def draw() -> int:
            nonlocal s0, s1, s2, s3
            result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
            t = (s1 << 17) & MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = _rotl(s3, 45)
            return result

        if random_init:
            x = 0
            word = 0
            for i in range(k):
                if i % 64 == 0:
                    word = draw()
                if (word >> (i % 64)) & 1:
                    x ^= rows[i]
        else:
            x = 0
            for w in range(W):
                x |= int(codewords[c, w]) << (64 * w)
        e_old = _energy(x, kind, param)
        for _ in range(tau):
            while True:
                A = [draw() >> shift for _ in range(mr)]
                if _rank(A) == mr:
                    break
            z = draw() >> shift
            prop = 1 << z
            for j in ctz:
                z ^= A[j]
                prop |= 1 << z
            cand = x ^ prop
            e_new = _energy(cand, kind, param)
            de = e_new - e_old
            if de <= 0 or (draw() >> 11) * (1.0 / 9007199254740992.0) < accept_p[de]:
                x = cand
                e_old = e_new
                accepted += 1
        codewords[c] = _to_words(x, W)
        energies[c] = e_old
        states[c] = [s0, s1, s2, s3]
    return accepted


def _rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead not in basis:
                basis[lead] = row
                break
            row ^= basis[lead]
    return len(basis)


def _gray_walk(gen):
    rows = _rows_as_ints(gen)
    k = len(rows)
    x = 0
    yield x
    for g in range(1, 1 << k):
        x ^= rows[(g & -g).bit_length() - 1]
        yield x


def gray_histogram(gen, n, kind, param):
    hist = np.zeros(n + 1, dtype=np.int64)
    counts: dict[int, int] = {}
    for x in _gray_walk(gen):
        e = _energy(x, kind, param)
        counts[e] = counts.get(e, 0) + 1
    for e, c in counts.items():
        hist[e] = c
    return hist


def gray_collect(gen, weight):
    W = gen.shape[1]
    found = [_to_words(x, W) for x in _gray_walk(gen) if x.bit_count() == weight]
    return np.array(found, dtype=np.uint64).reshape(len(found), W)
