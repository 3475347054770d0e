"""Monte Carlo realization of the measurement micro-dynamics.

Each trial draws a hidden variable uniformly on the simplex, classifies it
against the sub-simplex partition of the target distribution, and records
the determined outcome; boundary draws (a measure-zero event) are redrawn.
Relative frequencies converge to the target probabilities, reported with
3-sigma binomial bounds.

Trials are keyed by their global index (see :mod:`contextprob.rng`), so a
report depends only on (mu, trials, seed): the number of parallel streams
affects wall time, never the counts.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _trials_py
from .errors import InternalInvariantError, ResampleLimitError
from .geometry import TIE_REL_TOL, Determined, classify_point
from .model import MuLike, as_distribution
from .rng import TrialStream, trial_uniforms

MAX_REDRAWS = 64

try:
    from . import _trials as _default_kernel

    _BACKEND_NAME = "cython"
except ImportError:  # pragma: no cover - depends on the build environment
    _default_kernel = _trials_py
    _BACKEND_NAME = "python"

if os.environ.get("CONTEXTPROB_MC_BACKEND") == "python":
    _default_kernel = _trials_py
    _BACKEND_NAME = "python"


def mc_backend() -> str:
    """Name of the active trial kernel: 'cython' or 'python'."""
    return _BACKEND_NAME


@dataclass(frozen=True)
class SimulationConfig:
    trials: int
    seed: int
    streams: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.streams < 1:
            raise ValueError(f"streams must be >= 1, got {self.streams}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def stream_ranges(self) -> list:
        """Contiguous (start, count) chunks; the remainder goes to the last stream."""
        per = self.trials // self.streams
        ranges = []
        for i in range(self.streams):
            start = i * per
            count = per if i < self.streams - 1 else self.trials - start
            if count:
                ranges.append((start, count))
        return ranges


@dataclass(frozen=True)
class FrequencyReport:
    counts: tuple
    frequencies: tuple
    boundary_resamples: int
    target_mu: tuple
    three_sigma: tuple


def run_trial(mu: MuLike, stream: TrialStream) -> int:
    """Draw, classify, and return one determined outcome (1-based).

    The hidden variable comes from the sampler derivation (normalized
    exponentials) under the stream's next trial key.  Boundary and
    degenerate draws continue that key's variate stream, exactly as the
    kernels do; more than MAX_REDRAWS redraws raises ResampleLimitError.
    """
    mu_arr = as_distribution(mu)
    n = mu_arr.size
    key = stream.next_key()
    for attempt in range(MAX_REDRAWS + 1):
        exps = -np.log1p(-trial_uniforms(key, attempt * n, n))
        total = 0.0
        for v in exps:
            total += v
        if total == 0.0:
            continue
        result = classify_point(exps / total, mu_arr)
        if isinstance(result, Determined):
            return result.outcome
    raise ResampleLimitError(
        f"trial exceeded {MAX_REDRAWS} redraws; broken RNG or degenerate input"
    )


def simulate(mu: MuLike, config: SimulationConfig, kernel=None) -> FrequencyReport:
    """Run config.trials trials and report counts, frequencies, and bounds.

    Deterministic: identical (mu, seed) give identical reports for any
    stream count and any thread interleaving.  `kernel` overrides the
    default backend (used by tests and benchmarks).
    """
    kernel = kernel or _default_kernel
    mu_arr = as_distribution(mu)
    n = mu_arr.size
    ranges = config.stream_ranges()

    def chunk(args):
        start, count = args
        return kernel.run_chunk(mu_arr, config.seed, start, count, TIE_REL_TOL, MAX_REDRAWS)

    if len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            results = list(pool.map(chunk, ranges))
    else:
        results = [chunk(r) for r in ranges]

    counts = np.zeros(n, dtype=np.int64)
    resamples = 0
    for c, r in results:
        counts += c
        resamples += int(r)

    if int(counts.sum()) != config.trials:
        raise InternalInvariantError(
            f"stream merge lost trials: {int(counts.sum())} != {config.trials}"
        )
    freqs = counts / config.trials
    if abs(float(freqs.sum()) - 1.0) > 1e-12:
        raise InternalInvariantError(f"frequencies sum to {float(freqs.sum())!r}")

    sigma = tuple(3.0 * math.sqrt(p * (1.0 - p) / config.trials) for p in mu_arr)
    return FrequencyReport(
        counts=tuple(int(c) for c in counts),
        frequencies=tuple(float(f) for f in freqs),
        boundary_resamples=resamples,
        target_mu=tuple(float(p) for p in mu_arr),
        three_sigma=sigma,
    )
