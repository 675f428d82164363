"""Independent reference computations used by the tests.

Everything here works on dense 0/1 numpy arrays and shares no code with the
package beyond the generator-free definitions it checks against.
"""

from itertools import combinations, product
from math import comb

import numpy as np


def points(m: int) -> np.ndarray:
    """Row j holds the binary expansion of j, most significant bit first."""
    j = np.arange(1 << m)
    return ((j[:, None] >> (m - 1 - np.arange(m))[None, :]) & 1).astype(np.uint8)


def dense_generator(m: int, r: int) -> np.ndarray:
    P = points(m)
    rows = []
    for deg in range(r + 1):
        for S in combinations(range(m), deg):
            rows.append(np.prod(P[:, list(S)], axis=1) if S else np.ones(1 << m, dtype=np.uint8))
    return np.array(rows, dtype=np.uint8)


def all_codewords(m: int, r: int) -> np.ndarray:
    G = dense_generator(m, r).astype(np.int64)
    k = G.shape[0]
    msgs = ((np.arange(1 << k)[:, None] >> np.arange(k)[None, :]) & 1).astype(np.int64)
    return (msgs @ G) % 2


def rll_ok(word, d: int) -> bool:
    last = None
    for i, bit in enumerate(word):
        if bit:
            if last is not None and i - last <= d:
                return False
            last = i
    return True


def rll_count(m: int, r: int, d: int) -> int:
    return sum(rll_ok(w, d) for w in all_codewords(m, r))


def weight_distribution(m: int, r: int) -> list[int]:
    n = 1 << m
    return np.bincount(all_codewords(m, r).sum(axis=1), minlength=n + 1).tolist()


def affine_flat_count(m: int, dim: int) -> int:
    """Count dim-dimensional affine subspaces of F_2^m by listing every flat."""
    vecs = list(product((0, 1), repeat=m))
    flats = set()
    for basis in combinations(vecs[1:], dim):
        span = {tuple([0] * m)}
        for b in basis:
            span |= {tuple(x ^ y for x, y in zip(s, b)) for s in span}
        if len(span) != 1 << dim:
            continue
        for off in vecs:
            flats.add(frozenset(tuple(x ^ y for x, y in zip(s, off)) for s in span))
    return len(flats)


def rm_dimension(m: int, r: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def krawtchouk(n: int, j: int, w: int) -> int:
    return sum((-1) ** s * comb(w, s) * comb(n - w, j - s) for s in range(j + 1))


def macwilliams_dual(enum: list[int]) -> list[int]:
    """Weight distribution of the dual code from that of the code."""
    n = len(enum) - 1
    size = sum(enum)
    out = []
    for j in range(n + 1):
        total = sum(a * krawtchouk(n, j, w) for w, a in enumerate(enum) if a)
        assert total % size == 0
        out.append(total // size)
    return out


def _rll_word_ok(x: int, d: int) -> bool:
    ahead = 0
    for i in range(1, d + 1):
        ahead |= x >> i
    return not (x & ahead)


def rll_count_by_halving(m: int, r: int, d: int) -> int:
    """Exact (d, inf)-RLL count in RM(m, r) without enumerating it.

    Uses RM(m, r) = {(u, u + v) : u in RM(m-1, r), v in RM(m-1, r-1)} twice.
    The RLL words of RM(m-2, r) are enumerated; pairs of them form the RLL
    words of RM(m-1, r), grouped by their degree-r coefficients (the coset of
    RM(m-1, r-1) they lie in) and by their first and last d bits; the count for
    RM(m, r) then pairs words of the same coset whose join has no short run.
    """
    base_m = m - 2
    nb = 1 << base_m
    G = dense_generator(base_m, r)
    degrees = [deg for deg in range(r + 1) for _ in combinations(range(base_m), deg)]
    rows = [int("".join(map(str, row[::-1])), 2) for row in G]
    k = len(rows)
    top = [i for i, deg in enumerate(degrees) if deg == r]
    sub = [i for i, deg in enumerate(degrees) if deg == r - 1]

    # every codeword of RM(m-2, r), as ints, from two half-message tables
    half = k // 2
    def table(idx):
        out = np.zeros(1 << len(idx), dtype=np.uint64)
        for j, i in enumerate(idx):
            out[1 << j: 2 << j] = out[: 1 << j] ^ np.uint64(rows[i])
        return out
    lo, hi = table(range(half)), table(range(half, k))
    ahead_shift = [np.uint64(s) for s in range(1, d + 1)]
    msgs, words = [], []
    for h in range(len(hi)):
        x = lo ^ hi[h]
        ahead = np.zeros_like(x)
        for s in ahead_shift:
            ahead |= x >> s
        ok = np.nonzero((x & ahead) == 0)[0]
        msgs.append(ok.astype(np.int64) | (h << half))
        words.append(x[ok])
    msgs, words = np.concatenate(msgs), np.concatenate(words)

    def bits_of(vals, idx):
        out = np.zeros(len(vals), dtype=np.int64)
        for j, i in enumerate(idx):
            out |= ((vals >> i) & 1) << j
        return out
    top_key = bits_of(msgs, top)
    sub_key = bits_of(msgs, sub)
    mask = (1 << d) - 1
    pre = (words & np.uint64(mask)).astype(np.int64)
    suf = (words >> np.uint64(nb - d)).astype(np.int64)
    join_ok = np.array([[_rll_word_ok(a | (b << d), d) for b in range(1 << d)] for a in range(1 << d)])

    # RLL words (u, w) of RM(m-1, r): same top key, clean join; record (coset key, prefix, suffix)
    n_sub = len(sub)
    n_cls = 1 << (2 * d)
    counts = np.zeros((1 << (len(top) + n_sub)) * n_cls, dtype=np.int64)
    order = np.argsort(top_key, kind="stable")
    bounds = np.flatnonzero(np.diff(top_key[order])) + 1
    for grp in np.split(order, bounds):
        t = top_key[grp[0]]
        key = (t << n_sub) | (sub_key[grp][:, None] ^ sub_key[grp][None, :])
        ok = join_ok[suf[grp][:, None], pre[grp][None, :]]
        cls = (pre[grp][:, None] << d) | suf[grp][None, :]
        counts += np.bincount((key * n_cls + cls)[ok], minlength=len(counts))
    N = counts.reshape(-1, n_cls)

    # RM(m, r): pairs (x, y) in the same coset with a clean join
    M = np.zeros((n_cls, n_cls), dtype=np.int64)
    for a in range(n_cls):
        for b in range(n_cls):
            M[a, b] = join_ok[a & mask, b >> d]
    return int(np.einsum("ka,ab,kb->", N, M, N, dtype=object))
