# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: Metropolis chains and Gray-code enumeration.

Must stay draw-for-draw identical to ``_pykernel``.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

DEF KIND_RLL = 0
DEF KIND_WEIGHT = 1
DEF MAX_WORDS = 1024

BACKEND = "cython"


cdef inline uint64_t rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t next_u64(uint64_t* s) noexcept nogil:
    cdef uint64_t result = rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = rotl(s[3], 45)
    return result


cdef inline double uniform(uint64_t* s) noexcept nogil:
    return <double>(next_u64(s) >> 11) * (1.0 / 9007199254740992.0)


cdef inline int popcount_words(const uint64_t* x, int W) noexcept nogil:
    cdef int w, c = 0
    for w in range(W):
        c += __builtin_popcountll(x[w])
    return c


cdef inline int rll_energy(const uint64_t* x, int W, int d) noexcept nogil:
    # popcount(x & OR_{i=1..d} (x >> i)) on a W-word little-endian vector
    cdef int w, i, q, s, c = 0
    cdef uint64_t acc, part, nxt
    if d < 64:
        for w in range(W):
            nxt = x[w + 1] if w + 1 < W else 0
            acc = 0
            for i in range(1, d + 1):
                acc |= (x[w] >> i) | (nxt << (64 - i))
            c += __builtin_popcountll(x[w] & acc)
        return c
    for w in range(W):
        acc = 0
        for i in range(1, d + 1):
            q = i >> 6
            s = i & 63
            part = 0
            if w + q < W:
                if s == 0:
                    part = x[w + q]
                else:
                    part = x[w + q] >> s
                    if w + q + 1 < W:
                        part |= x[w + q + 1] << (64 - s)
            acc |= part
        c += __builtin_popcountll(x[w] & acc)
    return c


cdef inline int energy_of(const uint64_t* x, int W, int kind, int param) noexcept nogil:
    cdef int wt
    if kind == KIND_RLL:
        return rll_energy(x, W, param)
    wt = popcount_words(x, W)
    return wt - param if wt >= param else param - wt


cdef uint64_t* SWAP_MASKS = [0x5555555555555555ULL, 0x3333333333333333ULL,
                             0x0F0F0F0F0F0F0F0FULL, 0x00FF00FF00FF00FFULL,
                             0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL]


cdef inline uint64_t xor_permute_word(uint64_t v, uint64_t a) noexcept nogil:
    # bit j of the result is bit (j ^ a) of v, for a < 64; branch-free
    cdef int t
    cdef uint64_t msk, swapped
    for t in range(6):
        msk = SWAP_MASKS[t]
        swapped = ((v & msk) << (1 << t)) | ((v >> (1 << t)) & msk)
        v ^= (v ^ swapped) & (0 - ((a >> t) & 1))
    return v


cdef inline bint echelon(uint64_t* rows, int count) noexcept nogil:
    # row-reduce by highest set bit in place; False if the rows are dependent
    cdef int i, j, lead
    cdef uint64_t pivot
    for i in range(count):
        pivot = rows[i]
        if pivot == 0:
            return False
        lead = 63 - __builtin_clzll(pivot)
        for j in range(i + 1, count):
            rows[j] ^= pivot & (0 - ((rows[j] >> lead) & 1))
    return True


cdef inline void min_weight_word(uint64_t* s, int m, int mr, uint64_t* A,
                                 uint64_t* scratch, uint64_t* out, int W) noexcept nogil:
    # Characteristic vector of {x.A + b}.  After echelon reduction (same row
    # space) rows with a leading bit below 6 move points within one word and
    # the rest have independent word-index parts, so the in-word pattern is
    # built once in a register and copied, xor-permuted, to 2^(#high) words.
    cdef int i, n_hi = 0, n_lo = 0
    cdef uint64_t z, g, zl, pattern, word_idx, offset, a
    cdef uint64_t* hi = scratch
    cdef uint64_t* lo = scratch + 32
    cdef int shift = 64 - m
    while True:
        for i in range(mr):
            A[i] = next_u64(s) >> shift
        if echelon(A, mr):
            break
    z = next_u64(s) >> shift
    for i in range(mr):
        if A[i] >> 6:
            hi[n_hi] = A[i]
            n_hi += 1
        else:
            lo[n_lo] = A[i]
            n_lo += 1
    zl = z & 63
    pattern = (<uint64_t>1) << zl
    if n_lo <= 3:
        g = 1
        while g < ((<uint64_t>1) << n_lo):
            zl ^= lo[__builtin_ctzll(g)]
            pattern |= (<uint64_t>1) << zl
            g += 1
    else:
        for i in range(n_lo):
            pattern |= xor_permute_word(pattern, lo[i])
    memset(out, 0, W * sizeof(uint64_t))
    word_idx = z >> 6
    offset = 0
    out[word_idx] = pattern
    g = 1
    while g < ((<uint64_t>1) << n_hi):
        a = hi[__builtin_ctzll(g)]
        word_idx ^= a >> 6
        offset ^= a & 63
        out[word_idx] = xor_permute_word(pattern, offset)
        g += 1


def run_chains(const uint64_t[:, ::1] gen, int m, int r, int kind, int param,
               double beta, long long tau, uint64_t[:, ::1] states,
               uint64_t[:, ::1] codewords, int64_t[::1] energies, int random_init):
    """Advance ``len(states)`` independent chains ``tau`` steps each, in place.

    ``codewords`` holds the initial codewords (overwritten by a uniform random
    codeword drawn from the chain's own stream when ``random_init``) and
    receives the final ones.  Returns the total number of accepted moves.
    """
    cdef int N = states.shape[0]
    cdef int W = codewords.shape[1]
    cdef int k = gen.shape[0]
    cdef int n = 1 << m
    cdef int mr = m - r
    cdef int c, w, i, e_old, e_new, de, wt, overlap
    cdef long long step
    cdef long long accepted = 0
    cdef uint64_t word
    cdef uint64_t s[4]
    cdef uint64_t A[64]
    cdef uint64_t scratch[64]
    cdef uint64_t* x
    cdef uint64_t* prop
    cdef uint64_t* cand
    cdef double* accept_p

    if W > MAX_WORDS or W != (n + 63) // 64:
        raise ValueError("codeword width does not match 2^m")
    if mr < 0 or m > 30:
        raise ValueError("invalid (m, r)")
    if kind != KIND_RLL and kind != KIND_WEIGHT:
        raise ValueError("unknown constraint kind")

    x = <uint64_t*> malloc(W * sizeof(uint64_t))
    prop = <uint64_t*> malloc(W * sizeof(uint64_t))
    cand = <uint64_t*> malloc(W * sizeof(uint64_t))
    accept_p = <double*> malloc((n + 2) * sizeof(double))
    if x == NULL or prop == NULL or cand == NULL or accept_p == NULL:
        free(x); free(prop); free(cand); free(accept_p)
        raise MemoryError()
    accept_p[0] = 1.0
    for i in range(1, n + 2):
        accept_p[i] = exp(-beta * <double>i)

    try:
        with nogil:
            for c in range(N):
                for i in range(4):
                    s[i] = states[c, i]
                if random_init:
                    memset(x, 0, W * sizeof(uint64_t))
                    word = 0
                    for i in range(k):
                        if (i & 63) == 0:
                            word = next_u64(s)
                        if (word >> (i & 63)) & 1:
                            for w in range(W):
                                x[w] ^= gen[i, w]
                else:
                    for w in range(W):
                        x[w] = codewords[c, w]
                e_old = energy_of(x, W, kind, param)
                wt = popcount_words(x, W)
                for step in range(tau):
                    min_weight_word(s, m, mr, A, scratch, prop, W)
                    if kind == KIND_WEIGHT:
                        overlap = 0
                        for w in range(W):
                            overlap += __builtin_popcountll(x[w] & prop[w])
                        e_new = wt + (1 << mr) - 2 * overlap
                        e_new = e_new - param if e_new >= param else param - e_new
                    else:
                        for w in range(W):
                            cand[w] = x[w] ^ prop[w]
                        e_new = rll_energy(cand, W, param)
                    de = e_new - e_old
                    if de <= 0 or uniform(s) < accept_p[de]:
                        for w in range(W):
                            x[w] ^= prop[w]
                        if kind == KIND_WEIGHT:
                            wt = wt + (1 << mr) - 2 * overlap
                        e_old = e_new
                        accepted += 1
                for w in range(W):
                    codewords[c, w] = x[w]
                energies[c] = e_old
                for i in range(4):
                    states[c, i] = s[i]
    finally:
        free(x); free(prop); free(cand); free(accept_p)
    return accepted


def gray_histogram(const uint64_t[:, ::1] gen, int n, int kind, int param):
    """Energy histogram (length n + 1) over all 2^k codewords, Gray-code order."""
    cdef int k = gen.shape[0]
    cdef int W = gen.shape[1]
    cdef int w, row
    cdef uint64_t g, total
    cdef uint64_t x[MAX_WORDS]
    cdef cnp.ndarray[int64_t, ndim=1] hist_arr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t* hist = <int64_t*> hist_arr.data
    if k > 62:
        raise ValueError("dimension too large to enumerate")
    if W > MAX_WORDS:
        raise ValueError("codeword too long")
    total = (<uint64_t>1) << k
    with nogil:
        memset(x, 0, W * sizeof(uint64_t))
        hist[energy_of(x, W, kind, param)] += 1
        g = 1
        while g < total:
            row = __builtin_ctzll(g)
            for w in range(W):
                x[w] ^= gen[row, w]
            hist[energy_of(x, W, kind, param)] += 1
            g += 1
    return hist_arr


def gray_collect(const uint64_t[:, ::1] gen, int weight):
    """All codewords of Hamming weight ``weight``, as rows of words, Gray-code order."""
    cdef int k = gen.shape[0]
    cdef int W = gen.shape[1]
    cdef int w, row
    cdef uint64_t g, total
    cdef uint64_t x[MAX_WORDS]
    if k > 62:
        raise ValueError("dimension too large to enumerate")
    if W > MAX_WORDS:
        raise ValueError("codeword too long")
    found = []
    total = (<uint64_t>1) << k
    memset(x, 0, W * sizeof(uint64_t))
    if weight == 0:
        found.append([0] * W)
    g = 1
    while g < total:
        row = __builtin_ctzll(g)
        for w in range(W):
            x[w] ^= gen[row, w]
        if popcount_words(x, W) == weight:
            found.append([x[w] for w in range(W)])
        g += 1
    return np.array(found, dtype=np.uint64).reshape(len(found), W)
