"""Counter-based deterministic random streams.

Every random draw in this package is derived from a 64-bit seed through the
splitmix64 finalizer, keyed on a global trial counter.  The derivation is
fixed bit-exactly so that results are reproducible across runs, across
parallelism levels, and across the compiled and pure-Python kernels:

    mix64(x)     = splitmix64 finalizer of (x + 0x9E3779B97F4A7C15), i.e.
                   x += 0x9E3779B97F4A7C15
                   x ^= x >> 30;  x *= 0xBF58476D1CE4E5B9
                   x ^= x >> 27;  x *= 0x94D049BB133111EB
                   x ^= x >> 31
                   (all arithmetic modulo 2**64)
    key(seed, t) = mix64(seed XOR mix64(t))        per-trial sub-stream key
    state(k)     = key + k * 0x9E3779B97F4A7C15    k-th variate state
    u_k          = (mix64(state(k)) >> 11) * 2**-53     uniform in [0, 1)

Exponential variates are -log1p(-u).  Because each trial owns its key, the
outcome of trial t depends only on (seed, t): splitting trials across
parallel streams cannot change the result.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX_B = 0xBF58476D1CE4E5B9
_MIX_C = 0x94D049BB133111EB
_TO_UNIT = 2.0**-53


def mix64(x: int) -> int:
    """splitmix64 finalizer on a Python int, modulo 2**64."""
    x = (x + GOLDEN) & MASK64
    x ^= x >> 30
    x = (x * _MIX_B) & MASK64
    x ^= x >> 27
    x = (x * _MIX_C) & MASK64
    x ^= x >> 31
    return x


def mix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorized mix64 on a uint64 array (bitwise identical to mix64)."""
    x = x + np.uint64(GOLDEN)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX_B)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX_C)
    x ^= x >> np.uint64(31)
    return x


def trial_key(seed: int, trial: int) -> int:
    """Sub-stream key for one trial: mix64(seed XOR mix64(trial))."""
    return mix64((seed & MASK64) ^ mix64(trial))


def trial_keys(seed: int, trials: np.ndarray) -> np.ndarray:
    """Vectorized trial_key over a uint64 array of trial indices."""
    return mix64_array(np.uint64(seed & MASK64) ^ mix64_array(trials.astype(np.uint64)))


def trial_uniforms(key: int, offset: int, count: int) -> np.ndarray:
    """`count` uniforms in [0, 1) from one trial key, starting at variate `offset`."""
    states = np.uint64(key) + np.uint64(GOLDEN) * np.arange(
        offset, offset + count, dtype=np.uint64
    )
    return (mix64_array(states) >> np.uint64(11)).astype(np.float64) * _TO_UNIT


def uniform_block(keys: np.ndarray, offset: int, count: int) -> np.ndarray:
    """Uniform matrix of shape (len(keys), count); row i is trial key i's variates."""
    states = keys[:, None] + np.uint64(GOLDEN) * np.arange(
        offset, offset + count, dtype=np.uint64
    )
    return (mix64_array(states) >> np.uint64(11)).astype(np.float64) * _TO_UNIT


def exponential_block(keys: np.ndarray, offset: int, count: int) -> np.ndarray:
    """Unit-rate exponential matrix, same layout as uniform_block."""
    return -np.log1p(-uniform_block(keys, offset, count))


class TrialStream:
    """Sequential supply of per-trial sub-stream keys for a fixed seed.

    The stream positioned at trial t yields exactly the key the Monte Carlo
    kernels use for global trial index t, so single draws made through a
    stream reproduce kernel trials one-for-one.
    """

    def __init__(self, seed: int, start: int = 0):
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if start < 0:
            raise ValueError(f"start trial must be non-negative, got {start}")
        self.seed = seed
        self._trial = start

    @property
    def position(self) -> int:
        return self._trial

    def next_key(self) -> int:
        key = trial_key(self.seed, self._trial)
        self._trial += 1
        return key
