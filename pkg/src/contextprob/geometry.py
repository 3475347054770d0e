"""Simplex geometry of the hidden-variable measurement picture.

An outcome distribution mu over n outcomes is a point v on the simplex S_n,
the convex hull of the canonical basis h_1..h_n of R^n.  Replacing vertex
h_j by v carves S_n into sub-simplices A_j; a hidden variable lam drawn
Lebesgue-uniformly on S_n lands in exactly one A_j almost surely, and the
relative volume of A_j equals mu_j.  This module provides the point
embedding, the sub-simplex classification rule and its independent
membership oracle, the determinant calculus that proves the volume
identity, and uniform sampling of lam.

Outcome indices at this API are 1-based throughout (j in [1, n]).
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .model import MuLike, as_distribution
from .rng import TrialStream, trial_uniforms

TIE_REL_TOL = 1e-12
COEFF_TOL = 1e-12
_COORD_SUM_TOL = 1e-12
_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class SimplexPoint:
    """A point of S_n: coordinates in [0, 1] summing to 1 (within 1e-12)."""

    coords: tuple

    def __init__(self, coords: Sequence[float]):
        coords = tuple(float(c) for c in coords)
        if len(coords) == 0:
            raise ValueError("simplex point needs at least one coordinate")
        for c in coords:
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"coordinate {c!r} outside [0, 1]")
        if abs(sum(coords) - 1.0) > _COORD_SUM_TOL:
            raise ValueError(f"coordinates sum to {sum(coords)!r}, not 1")
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.float64)


@dataclass(frozen=True)
class Determined:
    """The hidden variable lies in the interior of exactly one A_j."""

    outcome: int  # 1-based


@dataclass(frozen=True)
class Boundary:
    """The hidden variable lies on a shared boundary; outcome undetermined."""

    tied: frozenset  # 1-based outcome indices, at least two


ClassificationResult = Union[Determined, Boundary]

PointLike = Union[SimplexPoint, Sequence[float], np.ndarray]


def _point_array(lam: PointLike) -> np.ndarray:
    if isinstance(lam, SimplexPoint):
        return lam.as_array()
    return np.asarray(lam, dtype=np.float64)


def state_vector(mu: MuLike) -> SimplexPoint:
    """Embed the distribution as the point v whose j-th coordinate is mu_j."""
    return SimplexPoint(as_distribution(mu))


def _ratios(lam: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Per-coordinate ratios lam_j / mu_j, with +inf standing in where mu_j = 0.

    lam_j / mu_j is the coefficient of v in the convex expansion of lam over
    A_j's vertices; lam belongs to A_j exactly when j minimizes the ratio.
    Indices with mu_j = 0 can never carry positive measure: +inf removes
    them from the argmin whether lam_j is positive (unreachable outcome) or
    zero (degenerate face).
    """
    out = np.full_like(lam, np.inf)
    np.divide(lam, mu, out=out, where=mu > 0.0)
    return out


def classify_point(lam: PointLike, mu: MuLike) -> ClassificationResult:
    """Classify a hidden variable against the sub-simplex partition of mu.

    Returns Determined(j) when lam lies in the interior of exactly one
    A_j, found as the unique argmin of lam_k / mu_k.  Ratios tied within
    relative tolerance 1e-12 yield Boundary with the tied index set.
    """
    lam_arr = _point_array(lam)
    mu_arr = as_distribution(mu)
    if lam_arr.shape != mu_arr.shape:
        raise ValueError(
            f"dimension mismatch: point has {lam_arr.size} coordinates, "
            f"distribution has {mu_arr.size}"
        )
    r = _ratios(lam_arr, mu_arr)
    rmin = r.min()
    tied = np.flatnonzero(r <= rmin + rmin * TIE_REL_TOL)
    if tied.size == 1:
        return Determined(int(tied[0]) + 1)
    return Boundary(frozenset(int(k) + 1 for k in tied))


@dataclass(frozen=True)
class Membership:
    """Verdict of the convex-combination solve for one sub-simplex.

    ``coefficients`` are the weights on (h_1, .., v at slot j, .., h_n); they
    sum to 1 whenever the system is solvable, and are None only when it is
    inconsistent (degenerate A_j with lam_j != 0).
    """

    member: bool
    coefficients: Optional[tuple]


_EYE_CACHE = {}


def _vertex_matrix(mu: np.ndarray, j: int) -> np.ndarray:
    """Canonical basis as columns, with column j (1-based) replaced by v."""
    n = mu.size
    eye = _EYE_CACHE.get(n)
    if eye is None:
        eye = _EYE_CACHE[n] = np.eye(n)
    m = eye.copy()
    m[:, j - 1] = mu
    return m


def membership_oracle(lam: PointLike, j: int, mu: MuLike) -> Membership:
    """Decide lam in A_j by solving lam = sum_{k != j} c_k h_k + c_j v.

    Independent of classify_point: this is a direct linear solve against the
    vertex matrix, with membership = all coefficients >= -1e-12.  When
    mu_j = 0 the sub-simplex is degenerate; membership then requires
    lam_j = 0 and a consistent solve on the reduced face.
    """
    lam_arr = _point_array(lam)
    mu_arr = as_distribution(mu)
    n = mu_arr.size
    if lam_arr.shape != mu_arr.shape:
        raise ValueError(
            f"dimension mismatch: point has {lam_arr.size} coordinates, "
            f"distribution has {mu_arr.size}"
        )
    if not 1 <= j <= n:
        raise ValueError(f"outcome index {j} outside [1, {n}]")

    if mu_arr[j - 1] > 0.0:
        coeffs = np.linalg.solve(_vertex_matrix(mu_arr, j), lam_arr)
        return Membership(bool((coeffs >= -COEFF_TOL).all()), tuple(coeffs.tolist()))

    # Degenerate A_j: all vertices lie in the face lam_j = 0.
    if lam_arr[j - 1] != 0.0:
        return Membership(False, None)
    system = np.delete(_vertex_matrix(mu_arr, j), j - 1, axis=0)
    system = np.vstack([system, np.ones(n)])
    rhs = np.append(np.delete(lam_arr, j - 1), 1.0)
    coeffs, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    if np.abs(system @ coeffs - rhs).max() > _RESIDUAL_TOL:
        return Membership(False, None)
    return Membership(bool((coeffs >= -COEFF_TOL).all()), tuple(coeffs.tolist()))


def canonical_determinant(n: int) -> float:
    """Determinant of the canonical basis matrix (LU path, equals 1)."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return float(np.linalg.det(np.eye(n)))


def replaced_determinant(mu: MuLike, j: int) -> float:
    """Determinant after replacing basis column j by v; recovers mu_j.

    Computed by LU factorization with partial pivoting on the actual
    matrix; the analytic value mu_j is the identity being verified, never
    the implementation.
    """
    mu_arr = as_distribution(mu)
    if not 1 <= j <= mu_arr.size:
        raise ValueError(f"outcome index {j} outside [1, {mu_arr.size}]")
    return float(np.linalg.det(_vertex_matrix(mu_arr, j)))


def volume_ratio(mu: MuLike, j: int) -> float:
    """Relative volume m(A_j) / m(S_n) via the determinant quotient.

    The simplex-to-parallelepiped constant depends only on n and cancels,
    so the quotient of the two determinants is the probability itself.
    """
    mu_arr = as_distribution(mu)
    return replaced_determinant(mu_arr, j) / canonical_determinant(mu_arr.size)


def segment_length_check(mu: MuLike) -> float:
    """Euclidean length d from (1, 0) to v for n = 2; d / sqrt(2) = mu_2."""
    mu_arr = as_distribution(mu)
    if mu_arr.size != 2:
        raise ValueError(f"segment length is defined for n = 2 only, got n = {mu_arr.size}")
    return math.hypot(1.0 - mu_arr[0], mu_arr[1])


def sample_simplex_uniform(n: int, stream: TrialStream) -> SimplexPoint:
    """Draw lam Lebesgue-uniformly on S_n.

    n independent unit-rate exponential variates normalized by their sum;
    exact in any dimension, no rejection.  Consumes one trial key from the
    stream per draw.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    key = stream.next_key()
    offset = 0
    while True:
        exps = -np.log1p(-trial_uniforms(key, offset, n))
        # Left-to-right accumulation, matching the trial kernels bit-exactly.
        total = 0.0
        for v in exps:
            total += v
        if total > 0.0:
            return SimplexPoint(exps / total)
        offset += n  # all-zero draw has probability 2**-53n; redraw
