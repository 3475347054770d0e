# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Monte Carlo trial kernel; scalar twin of _trials_py.run_chunk."""

import numpy as np

from libc.math cimport INFINITY, log1p

from .errors import ResampleLimitError

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15u
cdef unsigned long long MIX_B = 0xBF58476D1CE4E5B9u
cdef unsigned long long MIX_C = 0x94D049BB133111EBu
cdef double TO_UNIT = 1.0 / 9007199254740992.0  # 2**-53


cdef inline unsigned long long mix64(unsigned long long x) noexcept nogil:
    x = x + GOLDEN
    x ^= x >> 30
    x = x * MIX_B
    x ^= x >> 27
    x = x * MIX_C
    x ^= x >> 31
    return x


def run_chunk(mu, unsigned long long seed, unsigned long long start, long long count,
              double tie_tol=1e-12, int max_redraws=64):
    """Run `count` trials with global indices [start, start + count).

    Returns (per-outcome counts int64 array, number of resampled draws).
    """
    cdef double[::1] mu_v = np.ascontiguousarray(mu, dtype=np.float64)
    cdef Py_ssize_t n = mu_v.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    cdef long long[::1] counts_v = counts
    cdef double[::1] e_v = np.empty(n, dtype=np.float64)
    cdef double[::1] r_v = np.empty(n, dtype=np.float64)

    cdef long long i, resamples = 0
    cdef Py_ssize_t j, jmin, ties
    cdef int attempt
    cdef unsigned long long key, state
    cdef double u, total, lam, r, rmin, bound
    cdef bint overflowed = False

    with nogil:
        for i in range(count):
            key = mix64(seed ^ mix64(start + <unsigned long long>i))
            attempt = 0
            while True:
                if attempt > max_redraws:
                    overflowed = True
                    break
                total = 0.0
                for j in range(n):
                    state = key + GOLDEN * <unsigned long long>(attempt * n + j)
                    u = <double>(mix64(state) >> 11) * TO_UNIT
                    e_v[j] = -log1p(-u)
                    total += e_v[j]
                if total == 0.0:
                    resamples += 1
                    attempt += 1
                    continue
                rmin = INFINITY
                jmin = -1
                for j in range(n):
                    lam = e_v[j] / total
                    if mu_v[j] > 0.0:
                        r = lam / mu_v[j]
                    else:
                        r = INFINITY
                    r_v[j] = r
                    if r < rmin:
                        rmin = r
                        jmin = j
                ties = 0
                bound = rmin + rmin * tie_tol
                for j in range(n):
                    if r_v[j] <= bound:
                        ties += 1
                if ties == 1:
                    counts_v[jmin] += 1
                    break
                resamples += 1
                attempt += 1
            if overflowed:
                break

    if overflowed:
        raise ResampleLimitError(
            f"trial exceeded {max_redraws} redraws; broken RNG or degenerate input"
        )
    return counts, resamples
