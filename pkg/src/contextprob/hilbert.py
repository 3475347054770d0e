"""Complex-space representation: spectral families, Born rule, interference.

The same outcome distribution that lives on the real simplex is carried by
a complex vector w in dimension m (n <= m <= n^2): outcome k owns a block
of b_k diagonal slots, the projector M_k selects that block, and
mu_k = <w|M_k|w> = ||M_k w||^2.  Slot amplitudes sqrt(mu_k / b_k) satisfy
this for every block size.  Superposing two such vectors produces
per-outcome probabilities that differ from the classical mixture by a
cosine cross term, computed here both in closed form and directly.

Outcome/block indices at this API are 1-based; complex numbers cross the
API as (modulus, phase) pairs with phases reported in (-pi, pi].
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InternalInvariantError
from .model import MuLike, as_distribution

BORN_TOL = 1e-12
UNIT_NORM_TOL = 1e-9
COEFF_NORM_TOL = 1e-9
ON_SEGMENT_TOL = 1e-12
DEGENERATE_NORM_SQ = 1e-24


def wrap_phase(phase: float) -> float:
    """Reduce an angle to the reporting interval (-pi, pi]."""
    r = math.remainder(phase, math.tau)
    if r <= -math.pi:
        r += math.tau
    return r


@dataclass(frozen=True)
class SpectralFamily:
    """Partition of m diagonal slots into n orthogonal block projectors.

    Block k covers a contiguous run of ``block_sizes[k-1]`` slots in
    outcome order; the implied projectors are mutually orthogonal and sum
    to the identity by construction.
    """

    n: int
    m: int
    block_sizes: tuple

    def block_slots(self, k: int) -> range:
        """0-based slot range of block k (1-based)."""
        if not 1 <= k <= self.n:
            raise ValueError(f"block index {k} outside [1, {self.n}]")
        start = sum(self.block_sizes[: k - 1])
        return range(start, start + self.block_sizes[k - 1])

    def projector_matrices(self) -> list:
        """The n diagonal 0/1 projector matrices, each m-by-m."""
        mats = []
        for k in range(1, self.n + 1):
            diag = np.zeros(self.m)
            diag[list(self.block_slots(k))] = 1.0
            mats.append(np.diag(diag))
        return mats

    @property
    def all_singleton(self) -> bool:
        return all(b == 1 for b in self.block_sizes)


def build_spectral_family(n: int, block_sizes: Sequence[int]) -> SpectralFamily:
    """Validate block sizes and return the family they define."""
    if n < 1:
        raise ValueError(f"outcome count must be positive, got {n}")
    sizes = tuple(int(b) for b in block_sizes)
    if len(sizes) != n:
        raise ValueError(f"{len(sizes)} block sizes for {n} outcomes")
    for k, b in enumerate(sizes, start=1):
        if not 1 <= b <= n:
            raise ValueError(f"block {k} has size {b}, outside [1, n]=[1, {n}]")
    m = sum(sizes)
    if m > n * n:
        raise ValueError(f"m={m} exceeds n^2={n * n}")
    # m >= n is implied by n blocks of size >= 1.
    return SpectralFamily(n=n, m=m, block_sizes=sizes)


@dataclass(frozen=True)
class QuantumState:
    """m complex amplitudes as (modulus, phase) pairs."""

    moduli: tuple
    phases: tuple

    def __init__(self, moduli: Sequence[float], phases: Sequence[float]):
        moduli = tuple(float(a) for a in moduli)
        phases = tuple(wrap_phase(float(p)) for p in phases)
        if len(moduli) != len(phases):
            raise ValueError(f"{len(moduli)} moduli but {len(phases)} phases")
        if any(a < 0.0 or not math.isfinite(a) for a in moduli):
            raise ValueError("moduli must be finite and non-negative")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "phases", phases)

    def __len__(self) -> int:
        return len(self.moduli)

    @property
    def norm_sq(self) -> float:
        return float(sum(a * a for a in self.moduli))

    def to_complex(self) -> np.ndarray:
        return np.asarray(
            [a * cmath.exp(1j * p) for a, p in zip(self.moduli, self.phases)],
            dtype=np.complex128,
        )


def _state_from_complex(vec: np.ndarray) -> QuantumState:
    return QuantumState(np.abs(vec), np.angle(vec))


@dataclass(frozen=True)
class SuperpositionCoefficients:
    """Weights and phases of a two-state superposition; a^2 + b^2 = 1."""

    a: float
    b: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.a < 0.0 or self.b < 0.0:
            raise ValueError("amplitudes a, b must be non-negative")
        if abs(self.a**2 + self.b**2 - 1.0) > COEFF_NORM_TOL:
            raise ValueError(f"a^2 + b^2 = {self.a**2 + self.b**2!r}, not 1")


def build_quantum_state(mu: MuLike, phases: Sequence[float], family: SpectralFamily) -> QuantumState:
    """State vector carrying mu: slot j in block k has modulus sqrt(mu_k / b_k).

    Unit norm and the Born identity hold for every block size; phases are
    free per-slot inputs.
    """
    mu_arr = as_distribution(mu)
    if mu_arr.size != family.n:
        raise ValueError(f"{mu_arr.size} probabilities for {family.n} outcomes")
    if len(phases) != family.m:
        raise ValueError(f"{len(phases)} phases for Hilbert dimension {family.m}")
    moduli = np.empty(family.m)
    for k in range(1, family.n + 1):
        b = family.block_sizes[k - 1]
        moduli[list(family.block_slots(k))] = math.sqrt(mu_arr[k - 1] / b)
    state = QuantumState(moduli, phases)
    if abs(state.norm_sq - 1.0) > BORN_TOL:
        raise InternalInvariantError(f"state norm^2 = {state.norm_sq!r}")
    return state


def born_probability(w: QuantumState, family: SpectralFamily, k: int) -> float:
    """||M_k w||^2: the squared moduli of block k's slots, phase-independent."""
    if len(w) != family.m:
        raise ValueError(f"state has {len(w)} slots, family expects {family.m}")
    total = 0.0
    for j in family.block_slots(k):
        total += w.moduli[j] * w.moduli[j]
    return total


@dataclass(frozen=True)
class RepresentationReport:
    """Born probabilities of the built state against their targets."""

    target: tuple
    born: tuple
    max_deviation: float


def verify_representation(
    mu: MuLike, phases: Sequence[float], family: SpectralFamily
) -> RepresentationReport:
    """Build the state for (mu, phases) and measure the Born-rule deviation."""
    mu_arr = as_distribution(mu)
    w = build_quantum_state(mu_arr, phases, family)
    born = tuple(born_probability(w, family, k) for k in range(1, family.n + 1))
    max_dev = max(abs(b - t) for b, t in zip(born, mu_arr))
    return RepresentationReport(target=tuple(float(x) for x in mu_arr), born=born, max_deviation=max_dev)


@dataclass(frozen=True)
class SuperposedState:
    """Result of a complex linear combination, flagged with its squared norm.

    ``normalized`` records whether the raw combination came out unit-norm;
    ``degenerate`` flags complete cancellation.  ``state`` is renormalized
    only on explicit request at build time.
    """

    state: QuantumState
    norm_sq: float
    normalized: bool
    degenerate: bool


def superpose(
    w_p: QuantumState,
    w_q: QuantumState,
    coeff: SuperpositionCoefficients,
    renormalize: bool = False,
) -> SuperposedState:
    """Component-wise combination a.e^{i alpha} w_p + b.e^{i beta} w_q."""
    if len(w_p) != len(w_q):
        raise ValueError(f"dimension mismatch: {len(w_p)} vs {len(w_q)} slots")
    vec = (
        coeff.a * cmath.exp(1j * coeff.alpha) * w_p.to_complex()
        + coeff.b * cmath.exp(1j * coeff.beta) * w_q.to_complex()
    )
    norm_sq = float(np.real(np.vdot(vec, vec)))
    degenerate = norm_sq <= DEGENERATE_NORM_SQ
    if renormalize:
        if degenerate:
            raise ValueError("cannot renormalize a degenerate (cancelled) superposition")
        vec = vec / math.sqrt(norm_sq)
    return SuperposedState(
        state=_state_from_complex(vec),
        norm_sq=norm_sq,
        normalized=abs(norm_sq - 1.0) <= UNIT_NORM_TOL,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class InterferenceReport:
    """Per-outcome superposition probabilities against the classical mixture."""

    p_r: tuple
    mixture: tuple
    interference_term: tuple
    total_pr: float
    normalized: bool


def interference_closed_form(
    P_p: MuLike,
    P_q: MuLike,
    phases_p: Sequence[float],
    phases_q: Sequence[float],
    coeff: SuperpositionCoefficients,
    family: Optional[SpectralFamily] = None,
) -> InterferenceReport:
    """Closed-form superposition probabilities for singleton-block families.

    Per outcome j:

        p_r = a^2 P_p + b^2 P_q
              + 2ab sqrt(P_p P_q) cos(phi_p - phi_q + alpha - beta)

    The cross term is derived component-wise with one slot per outcome, so
    block sizes above 1 are rejected; use interference_direct for those.
    """
    if family is not None and not family.all_singleton:
        raise ValueError(
            f"closed form needs singleton blocks, got block sizes {family.block_sizes}"
        )
    p = as_distribution(P_p)
    q = as_distribution(P_q)
    n = p.size
    if q.size != n or len(phases_p) != n or len(phases_q) != n:
        raise ValueError("distributions and phase profiles must share one outcome count")

    p_r, mixture, term = [], [], []
    for j in range(n):
        mix_j = coeff.a**2 * p[j] + coeff.b**2 * q[j]
        cross = (
            2.0
            * coeff.a
            * coeff.b
            * math.sqrt(p[j] * q[j])
            * math.cos(phases_p[j] - phases_q[j] + coeff.alpha - coeff.beta)
        )
        mixture.append(float(mix_j))
        term.append(float(cross))
        p_r.append(float(mix_j + cross))
    total = 0.0
    for x in p_r:
        total += x
    return InterferenceReport(
        p_r=tuple(p_r),
        mixture=tuple(mixture),
        interference_term=tuple(term),
        total_pr=total,
        normalized=abs(total - 1.0) <= UNIT_NORM_TOL,
    )


def interference_direct(
    P_p: MuLike,
    P_q: MuLike,
    phases_p: Sequence[float],
    phases_q: Sequence[float],
    coeff: SuperpositionCoefficients,
    family: SpectralFamily,
) -> tuple:
    """Superposition probabilities through explicit states and the Born rule.

    Works for any block partition.  Returns (report, superposed), where the
    report's interference terms are the per-outcome gaps from the mixture.
    """
    w_p = build_quantum_state(P_p, phases_p, family)
    w_q = build_quantum_state(P_q, phases_q, family)
    sup = superpose(w_p, w_q, coeff)
    p = as_distribution(P_p)
    q = as_distribution(P_q)
    p_r = tuple(born_probability(sup.state, family, k) for k in range(1, family.n + 1))
    mixture = tuple(float(coeff.a**2 * p[j] + coeff.b**2 * q[j]) for j in range(family.n))
    term = tuple(r - m for r, m in zip(p_r, mixture))
    total = 0.0
    for x in p_r:
        total += x
    report = InterferenceReport(
        p_r=p_r,
        mixture=mixture,
        interference_term=term,
        total_pr=total,
        normalized=abs(total - 1.0) <= UNIT_NORM_TOL,
    )
    return report, sup


@dataclass(frozen=True)
class MixtureComparison:
    """Superposition distribution against the classical mixture a^2 P_p + b^2 P_q."""

    mixture: tuple
    superposition: tuple
    gaps: tuple
    on_segment: bool


def mixture_vs_superposition(
    P_p: MuLike,
    P_q: MuLike,
    phases_p: Sequence[float],
    phases_q: Sequence[float],
    coeff: SuperpositionCoefficients,
) -> MixtureComparison:
    """Compare the superposition to the mixture; flag when they coincide.

    ``on_segment`` is true when every gap is at most 1e-12, i.e. the
    superposed point lies on the simplex segment between the two states'
    points and interference is absent.
    """
    report = interference_closed_form(P_p, P_q, phases_p, phases_q, coeff)
    gaps = tuple(r - m for r, m in zip(report.p_r, report.mixture))
    return MixtureComparison(
        mixture=report.mixture,
        superposition=report.p_r,
        gaps=gaps,
        on_segment=all(abs(g) <= ON_SEGMENT_TOL for g in gaps),
    )
