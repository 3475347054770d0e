"""Vectorized numpy fallback for the Monte Carlo trial kernel.

Same trial-indexed random derivation and classification rule as the
compiled kernel in _trials.pyx.  Row sums and scans are kept strictly
left-to-right so both kernels perform identical IEEE operations per trial.
"""

import numpy as np

from .errors import ResampleLimitError
from .rng import exponential_block, trial_keys

_BLOCK = 1 << 16


def _row_sums(e: np.ndarray) -> np.ndarray:
    total = e[:, 0].copy()
    for j in range(1, e.shape[1]):
        total += e[:, j]
    return total


def run_chunk(mu, seed, start, count, tie_tol=1e-12, max_redraws=64):
    """Run `count` trials with global indices [start, start + count).

    Returns (per-outcome counts int64 array, number of resampled draws).
    """
    mu = np.asarray(mu, dtype=np.float64)
    n = mu.size
    counts = np.zeros(n, dtype=np.int64)
    resamples = 0
    mu_pos = mu > 0.0

    done = 0
    while done < count:
        block = min(_BLOCK, count - done)
        keys = trial_keys(seed, np.arange(start + done, start + done + block, dtype=np.uint64))
        offset = 0
        while keys.size:
            if offset > max_redraws * n:
                raise ResampleLimitError(
                    f"trial exceeded {max_redraws} redraws; broken RNG or degenerate input"
                )
            e = exponential_block(keys, offset, n)
            totals = _row_sums(e)
            valid = totals > 0.0
            lam = np.divide(e, totals[:, None], out=np.zeros_like(e), where=valid[:, None])
            ratios = np.full_like(e, np.inf)
            np.divide(lam, mu, out=ratios, where=mu_pos)
            rmin = ratios.min(axis=1)
            ties = (ratios <= (rmin + rmin * tie_tol)[:, None]).sum(axis=1)
            decided = valid & (ties == 1)
            if decided.any():
                counts += np.bincount(ratios[decided].argmin(axis=1), minlength=n)
            keys = keys[~decided]
            resamples += int(keys.size)
            offset += n
        done += block

    return counts, resamples
