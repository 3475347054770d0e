"""Simplex and Hilbert-space representations of contextual outcome probabilities.

Given an entity described by states, measurements, outcomes, and outcome
probabilities, this package builds the real-simplex picture (hidden-variable
micro-dynamics, determinant-based volume ratios, Monte Carlo verification)
and the complex picture (spectral families, Born rule), plus superposition
interference analysis.  See the README for the CLI and the bit-exact random
stream derivation.
"""

from .errors import (
    CommandError,
    InternalInvariantError,
    ParseError,
    ResampleLimitError,
    TableNotFoundError,
    ValidationError,
)
from .geometry import (
    Boundary,
    ClassificationResult,
    Determined,
    Membership,
    SimplexPoint,
    canonical_determinant,
    classify_point,
    membership_oracle,
    replaced_determinant,
    sample_simplex_uniform,
    segment_length_check,
    state_vector,
    volume_ratio,
)
from .hilbert import (
    InterferenceReport,
    MixtureComparison,
    QuantumState,
    RepresentationReport,
    SpectralFamily,
    SuperposedState,
    SuperpositionCoefficients,
    born_probability,
    build_quantum_state,
    build_spectral_family,
    interference_closed_form,
    interference_direct,
    mixture_vs_superposition,
    superpose,
    verify_representation,
)
from .model import (
    EntityModel,
    MeasurementSpec,
    ProbabilityTable,
    ProbabilityVector,
    StateSpec,
    Violation,
    lookup_table,
    validate_model,
)
from .modelfile import canonical_dump, fixture_path, model_from_dict, model_to_dict, parse_model
from .output import OutputRecord, emit_csv
from .rng import TrialStream
from .simulate import FrequencyReport, SimulationConfig, mc_backend, run_trial, simulate

__version__ = "0.1.0"
