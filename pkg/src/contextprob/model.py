"""Entity/state/measurement data model and its validation.

An :class:`EntityModel` bundles the states of an entity, the measurements
that can act on it, and one outcome-probability table per (measurement,
state) pair.  Containers are deliberately lenient: they hold whatever data
they are given, and :func:`validate_model` reports every invariant
violation instead of raising on the first one.  Numeric code obtains
checked, renormalized distributions through :func:`as_distribution`.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import TableNotFoundError

MU_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ProbabilityVector:
    """Outcome distribution for one (measurement, state) pair.

    Doubles as the point this pair occupies on the probability simplex.
    """

    entries: tuple

    def __init__(self, entries: Sequence[float]):
        object.__setattr__(self, "entries", tuple(float(x) for x in entries))

    def __len__(self) -> int:
        return len(self.entries)

    def violations(self) -> list:
        out = []
        if len(self.entries) == 0:
            return ["probability vector is empty"]
        for i, x in enumerate(self.entries):
            if not (0.0 <= x <= 1.0):
                out.append(f"entry {i + 1} is {x!r}, outside [0, 1]")
        if not out:
            total = sum(self.entries)
            if abs(total - 1.0) > MU_SUM_TOL:
                out.append(f"probabilities sum to {total!r}")
        return out

    def normalized(self) -> np.ndarray:
        """Checked entries divided by their sum, as a float64 array."""
        problems = self.violations()
        if problems:
            raise ValueError("invalid probability vector: " + "; ".join(problems))
        arr = np.asarray(self.entries, dtype=np.float64)
        return arr / arr.sum()


MuLike = Union[ProbabilityVector, Sequence[float]]


def as_distribution(mu: MuLike) -> np.ndarray:
    """Coerce to a validated, renormalized distribution array."""
    if isinstance(mu, ProbabilityVector):
        return mu.normalized()
    arr = np.asarray(mu, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("probability vector must be a non-empty 1-d sequence")
    if not ((arr >= 0.0) & (arr <= 1.0)).all():  # NaN fails the lower bound
        raise ValueError("invalid probability vector: entries outside [0, 1]")
    total = float(arr.sum())
    if abs(total - 1.0) > MU_SUM_TOL:
        raise ValueError(f"invalid probability vector: probabilities sum to {total!r}")
    return arr / total


@dataclass(frozen=True)
class StateSpec:
    state_id: str
    description: Optional[str] = None


@dataclass(frozen=True)
class MeasurementSpec:
    """A measurement context with an ordered, finite outcome set.

    ``final_states`` optionally names the post-measurement state per outcome
    (labels only; no transition dynamics).  ``block_sizes`` optionally fixes
    the complex-representation block partition for this measurement; when
    absent every outcome gets a single slot.
    """

    measurement_id: str
    outcomes: tuple
    final_states: Optional[tuple] = None
    block_sizes: Optional[tuple] = None

    def __init__(self, measurement_id, outcomes, final_states=None, block_sizes=None):
        object.__setattr__(self, "measurement_id", measurement_id)
        object.__setattr__(self, "outcomes", tuple(outcomes))
        object.__setattr__(
            self, "final_states", None if final_states is None else tuple(final_states)
        )
        object.__setattr__(
            self, "block_sizes", None if block_sizes is None else tuple(int(b) for b in block_sizes)
        )

    @property
    def n(self) -> int:
        return len(self.outcomes)

    @property
    def hilbert_dim(self) -> int:
        if self.block_sizes is None:
            return self.n
        return int(sum(self.block_sizes))


@dataclass(frozen=True)
class ProbabilityTable:
    measurement_id: str
    state_id: str
    mu: ProbabilityVector
    phases: Optional[tuple] = None

    def __init__(self, measurement_id, state_id, mu, phases=None):
        object.__setattr__(self, "measurement_id", measurement_id)
        object.__setattr__(self, "state_id", state_id)
        if not isinstance(mu, ProbabilityVector):
            mu = ProbabilityVector(mu)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(
            self, "phases", None if phases is None else tuple(float(p) for p in phases)
        )


@dataclass(frozen=True)
class EntityModel:
    entity_id: str
    states: tuple = field(default_factory=tuple)
    measurements: tuple = field(default_factory=tuple)
    probability_tables: tuple = field(default_factory=tuple)

    def __init__(self, entity_id, states=(), measurements=(), probability_tables=()):
        object.__setattr__(self, "entity_id", entity_id)
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "measurements", tuple(measurements))
        object.__setattr__(self, "probability_tables", tuple(probability_tables))

    def state(self, state_id: str) -> StateSpec:
        for s in self.states:
            if s.state_id == state_id:
                return s
        raise KeyError(state_id)

    def measurement(self, measurement_id: str) -> MeasurementSpec:
        for m in self.measurements:
            if m.measurement_id == measurement_id:
                return m
        raise KeyError(measurement_id)


@dataclass(frozen=True)
class Violation:
    """One violated invariant, with the path of the offending field."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


def validate_model(model: EntityModel) -> list:
    """Collect every invariant violation in the model.

    Violations are data, not failures: a valid model yields an empty list,
    and validating twice yields identical reports.
    """
    report = []

    def fail(path, msg):
        report.append(Violation(path, msg))

    state_ids = [s.state_id for s in model.states]
    for i, s in enumerate(model.states):
        if not s.state_id:
            fail(f"states[{i}].state_id", "state identifier is empty")
    for sid in sorted({x for x in state_ids if state_ids.count(x) > 1}):
        fail("states", f"duplicate state identifier {sid!r}")

    known_states = set(state_ids)
    meas_ids = [m.measurement_id for m in model.measurements]
    for mid in sorted({x for x in meas_ids if meas_ids.count(x) > 1}):
        fail("measurements", f"duplicate measurement identifier {mid!r}")

    meas_by_id = {}
    for i, m in enumerate(model.measurements):
        path = f"measurements[{i}]"
        meas_by_id[m.measurement_id] = m
        if not m.measurement_id:
            fail(f"{path}.measurement_id", "measurement identifier is empty")
        if m.n < 1:
            fail(f"{path}.outcomes", "measurement needs at least one outcome")
        if len(set(m.outcomes)) != m.n:
            fail(f"{path}.outcomes", "outcome labels are not unique")
        if m.final_states is not None:
            if len(m.final_states) != m.n:
                fail(
                    f"{path}.final_states",
                    f"{len(m.final_states)} final states for {m.n} outcomes",
                )
            for j, fs in enumerate(m.final_states):
                if fs not in known_states:
                    fail(f"{path}.final_states[{j}]", f"unknown state reference {fs!r}")
        if m.block_sizes is not None:
            if len(m.block_sizes) != m.n:
                fail(f"{path}.block_sizes", f"{len(m.block_sizes)} blocks for {m.n} outcomes")
            else:
                for k, b in enumerate(m.block_sizes):
                    if not 1 <= b <= m.n:
                        fail(f"{path}.block_sizes[{k}]", f"block size {b} outside [1, {m.n}]")
                total = sum(m.block_sizes)
                if not m.n <= total <= m.n * m.n:
                    fail(
                        f"{path}.block_sizes",
                        f"m={total} outside [n, n^2] = [{m.n}, {m.n * m.n}]",
                    )

    seen_pairs = set()
    for i, t in enumerate(model.probability_tables):
        path = f"probabilities[{i}]"
        meas = meas_by_id.get(t.measurement_id)
        if meas is None:
            fail(f"{path}.measurement", f"unknown measurement reference {t.measurement_id!r}")
        if t.state_id not in known_states:
            fail(f"{path}.state", f"unknown state reference {t.state_id!r}")
        pair = (t.measurement_id, t.state_id)
        if pair in seen_pairs:
            fail(path, f"second table for pair {pair!r}")
        seen_pairs.add(pair)
        if meas is not None and len(t.mu) != meas.n:
            fail(f"{path}.mu", f"{len(t.mu)} probabilities for {meas.n} outcomes")
        for msg in t.mu.violations():
            fail(f"{path}.mu", msg)
        if t.phases is not None and meas is not None and len(t.phases) != meas.hilbert_dim:
            fail(
                f"{path}.phases",
                f"{len(t.phases)} phases for Hilbert dimension {meas.hilbert_dim}",
            )
    return report


def lookup_table(model: EntityModel, measurement_id: str, state_id: str) -> ProbabilityTable:
    """Return the unique table for the pair, or raise TableNotFoundError."""
    for t in model.probability_tables:
        if t.measurement_id == measurement_id and t.state_id == state_id:
            return t
    raise TableNotFoundError(
        f"no probability table for measurement {measurement_id!r} and state {state_id!r}"
    )
