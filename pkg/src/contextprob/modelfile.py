"""JSON model files: parsing, defaults, and canonical dumps.

Schema (UTF-8 JSON): top-level keys "entity", "states", "measurements",
"probabilities", and optional "hilbert".  States carry "id" and optional
"description"; measurements carry "id", "outcomes", optional
"final_states"; probability entries carry "measurement", "state", "mu",
optional "phases"; "hilbert" maps a measurement id to {"block_sizes": [..]}.
Parsing applies defaults (phases -> zeros, block_sizes -> all ones) and
validates the result before returning it.
"""

import json
from pathlib import Path

from .errors import ParseError, ValidationError
from .model import (
    EntityModel,
    MeasurementSpec,
    ProbabilityTable,
    ProbabilityVector,
    StateSpec,
    validate_model,
)

_FIXTURE_DIR = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = ("animal", "vessel", "threedim")


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture model ('animal', 'vessel', 'threedim')."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    return _FIXTURE_DIR / f"{name}.json"


def _require(data, key, kind, where):
    if key not in data:
        raise ParseError(f"{where}: missing required key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def model_from_dict(data: dict) -> EntityModel:
    """Build the (unvalidated) model from parsed JSON, applying defaults."""
    if not isinstance(data, dict):
        raise ParseError(f"model root: expected object, got {type(data).__name__}")
    entity = _require(data, "entity", str, "model root")

    states = []
    for i, raw in enumerate(_require(data, "states", list, "model root")):
        where = f"states[{i}]"
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: expected object, got {type(raw).__name__}")
        states.append(StateSpec(_require(raw, "id", str, where), raw.get("description")))

    hilbert = data.get("hilbert", {})
    if not isinstance(hilbert, dict):
        raise ParseError(f"hilbert: expected object, got {type(hilbert).__name__}")

    measurements = []
    for i, raw in enumerate(_require(data, "measurements", list, "model root")):
        where = f"measurements[{i}]"
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: expected object, got {type(raw).__name__}")
        mid = _require(raw, "id", str, where)
        outcomes = _require(raw, "outcomes", list, where)
        block_sizes = None
        if mid in hilbert:
            section = hilbert[mid]
            if not isinstance(section, dict):
                raise ParseError(f"hilbert.{mid}: expected object, got {type(section).__name__}")
            block_sizes = _require(section, "block_sizes", list, f"hilbert.{mid}")
        if block_sizes is None:
            block_sizes = [1] * len(outcomes)
        measurements.append(
            MeasurementSpec(mid, outcomes, raw.get("final_states"), block_sizes)
        )
    meas_by_id = {m.measurement_id: m for m in measurements}

    tables = []
    for i, raw in enumerate(_require(data, "probabilities", list, "model root")):
        where = f"probabilities[{i}]"
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: expected object, got {type(raw).__name__}")
        mid = _require(raw, "measurement", str, where)
        sid = _require(raw, "state", str, where)
        mu = _require(raw, "mu", list, where)
        phases = raw.get("phases")
        if phases is None and mid in meas_by_id:
            phases = [0.0] * meas_by_id[mid].hilbert_dim
        tables.append(ProbabilityTable(mid, sid, ProbabilityVector(mu), phases))

    return EntityModel(entity, states, measurements, tables)


def parse_model(path) -> EntityModel:
    """Parse and fully validate a model file.

    Raises ParseError (with line/column for malformed JSON) or
    ValidationError carrying every invariant violation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    model = model_from_dict(data)
    report = validate_model(model)
    if report:
        raise ValidationError(report)
    return model


def model_to_dict(model: EntityModel) -> dict:
    """Canonical dict form of a model; parsing it back reproduces the model."""
    states = []
    for s in model.states:
        entry = {"id": s.state_id}
        if s.description is not None:
            entry["description"] = s.description
        states.append(entry)
    measurements = []
    hilbert = {}
    for m in model.measurements:
        entry = {"id": m.measurement_id, "outcomes": list(m.outcomes)}
        if m.final_states is not None:
            entry["final_states"] = list(m.final_states)
        measurements.append(entry)
        hilbert[m.measurement_id] = {
            "block_sizes": list(m.block_sizes) if m.block_sizes else [1] * m.n
        }
    probabilities = []
    for t in model.probability_tables:
        entry = {
            "measurement": t.measurement_id,
            "state": t.state_id,
            "mu": list(t.mu.entries),
        }
        if t.phases is not None:
            entry["phases"] = list(t.phases)
        probabilities.append(entry)
    return {
        "entity": model.entity_id,
        "states": states,
        "measurements": measurements,
        "probabilities": probabilities,
        "hilbert": hilbert,
    }


def canonical_dump(model: EntityModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"
