"""Command-line interface: geometry, simulate, quantum, interfere.

Every command loads a JSON model file, runs one analysis for a
(measurement, state) pair, and emits a deterministic label/value CSV to
--output or stdout.  Exit codes: 0 success, 1 validation/parse error,
2 command error, 3 internal invariant breach.
"""

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import (
    CommandError,
    InternalInvariantError,
    ParseError,
    ResampleLimitError,
    TableNotFoundError,
    ValidationError,
)
from .geometry import segment_length_check, state_vector, volume_ratio
from .hilbert import (
    SuperpositionCoefficients,
    build_quantum_state,
    build_spectral_family,
    interference_closed_form,
    interference_direct,
    verify_representation,
)
from .model import EntityModel, lookup_table
from .modelfile import parse_model
from .output import OutputRecord, emit_csv
from .simulate import SimulationConfig, simulate

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class CommandSpec:
    command: str
    model_path: str
    measurement_id: str
    state_id: str
    trials: int = 100000
    seed: int = 1
    streams: int = 1
    state_b_id: Optional[str] = None
    amp_a: float = INV_SQRT2
    amp_b: float = INV_SQRT2
    phase_a: float = 0.0
    phase_b: float = 0.0
    renormalize: bool = False


def _table(model, measurement_id, state_id):
    try:
        measurement = model.measurement(measurement_id)
    except KeyError:
        raise CommandError(f"unknown measurement {measurement_id!r}") from None
    try:
        table = lookup_table(model, measurement_id, state_id)
    except TableNotFoundError as exc:
        raise CommandError(str(exc)) from None
    return measurement, table


def _family(measurement):
    sizes = measurement.block_sizes or (1,) * measurement.n
    return build_spectral_family(measurement.n, sizes)


def execute_command(model: EntityModel, spec: CommandSpec) -> OutputRecord:
    measurement, table = _table(model, spec.measurement_id, spec.state_id)
    labels = measurement.outcomes
    rows = [
        ("model", spec.model_path),
        ("measurement", spec.measurement_id),
        ("state", spec.state_id),
    ]

    if spec.command == "geometry":
        v = state_vector(table.mu)
        for label, coord in zip(labels, v.coords):
            rows.append((f"v_{label}", coord))
        for j, label in enumerate(labels, start=1):
            rows.append((f"volume_ratio_{label}", volume_ratio(table.mu, j)))
        if measurement.n == 2:
            rows.append(("d", segment_length_check(table.mu)))

    elif spec.command == "simulate":
        rows += [("trials", spec.trials), ("seed", spec.seed), ("streams", spec.streams)]
        report = simulate(table.mu, SimulationConfig(spec.trials, spec.seed, spec.streams))
        for label, count in zip(labels, report.counts):
            rows.append((f"count_{label}", count))
        for label, freq in zip(labels, report.frequencies):
            rows.append((f"freq_{label}", freq))
        for label, bound in zip(labels, report.three_sigma):
            rows.append((f"three_sigma_{label}", bound))
        rows.append(("boundary_resamples", report.boundary_resamples))

    elif spec.command == "quantum":
        family = _family(measurement)
        phases = table.phases or (0.0,) * family.m
        w = build_quantum_state(table.mu, phases, family)
        report = verify_representation(table.mu, phases, family)
        rows.append(("m", family.m))
        for label, b in zip(labels, family.block_sizes):
            rows.append((f"block_{label}", b))
        for j, (mod, phase) in enumerate(zip(w.moduli, w.phases), start=1):
            rows.append((f"modulus_{j}", mod))
            rows.append((f"phase_{j}", phase))
        for label, born, target in zip(labels, report.born, report.target):
            rows.append((f"born_{label}", born))
            rows.append((f"target_{label}", target))
        rows.append(("max_deviation", report.max_deviation))
        if report.max_deviation > 1e-12:
            raise InternalInvariantError(
                f"Born probabilities deviate by {report.max_deviation!r}"
            )

    elif spec.command == "interfere":
        if spec.state_b_id is None:
            raise CommandError("interfere needs a second state (--state-b)")
        _, table_b = _table(model, spec.measurement_id, spec.state_b_id)
        family = _family(measurement)
        phases_p = table.phases or (0.0,) * family.m
        phases_q = table_b.phases or (0.0,) * family.m
        if len(phases_p) != len(phases_q):
            raise CommandError(
                f"states have different Hilbert dimensions: {len(phases_p)} vs {len(phases_q)}"
            )
        try:
            coeff = SuperpositionCoefficients(spec.amp_a, spec.amp_b, spec.phase_a, spec.phase_b)
        except ValueError as exc:
            raise CommandError(str(exc)) from None
        rows += [
            ("state_b", spec.state_b_id),
            ("amp_a", spec.amp_a),
            ("amp_b", spec.amp_b),
            ("phase_a", spec.phase_a),
            ("phase_b", spec.phase_b),
            ("renormalize", spec.renormalize),
        ]
        direct_report, sup = interference_direct(
            table.mu, table_b.mu, phases_p, phases_q, coeff, family
        )
        if family.all_singleton:
            report = interference_closed_form(
                table.mu, table_b.mu, phases_p, phases_q, coeff, family
            )
            mismatch = max(
                abs(c - d) for c, d in zip(report.p_r, direct_report.p_r)
            )
            if mismatch > 1e-12:
                raise InternalInvariantError(
                    f"closed form deviates from Born computation by {mismatch!r}"
                )
        else:
            report = direct_report
        if spec.renormalize and sup.degenerate:
            raise CommandError("superposition cancels completely; cannot renormalize")
        for label, p_r in zip(labels, report.p_r):
            rows.append((f"pr_{label}", p_r))
        for label, mix in zip(labels, report.mixture):
            rows.append((f"mixture_{label}", mix))
        for label, term in zip(labels, report.interference_term):
            rows.append((f"interference_{label}", term))
        rows += [
            ("total_pr", report.total_pr),
            ("norm_sq", sup.norm_sq),
            ("normalized", report.normalized),
            ("on_segment", all(abs(t) <= 1e-12 for t in report.interference_term)),
            ("degenerate", sup.degenerate),
        ]
        if spec.renormalize:
            for label, p_r in zip(labels, report.p_r):
                rows.append((f"pr_normalized_{label}", p_r / report.total_pr))

    else:
        raise CommandError(f"unknown command {spec.command!r}")

    return OutputRecord(spec.command, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contextprob",
        description="Simplex and Hilbert representations of outcome probabilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, help="path of the JSON model file")
    common.add_argument("--measurement", required=True, help="measurement id")
    common.add_argument("--state", required=True, help="state id")
    common.add_argument("--output", default=None, help="CSV output path (default stdout)")

    sub.add_parser("geometry", parents=[common], help="simplex point, volume ratios, segment length")

    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo outcome frequencies")
    sim.add_argument("--trials", type=int, default=100000)
    sim.add_argument("--seed", type=int, default=1)
    sim.add_argument("--streams", type=int, default=1)

    sub.add_parser("quantum", parents=[common], help="state amplitudes and Born-rule check")

    inter = sub.add_parser("interfere", parents=[common], help="superposition vs mixture")
    inter.add_argument("--state-b", required=True, help="second state id")
    inter.add_argument("--amp-a", type=float, default=INV_SQRT2)
    inter.add_argument("--amp-b", type=float, default=INV_SQRT2)
    inter.add_argument("--phase-a", type=float, default=0.0)
    inter.add_argument("--phase-b", type=float, default=0.0)
    inter.add_argument("--renormalize", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model = parse_model(args.model)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        for violation in exc.violations:
            print(f"invalid model: {violation}", file=sys.stderr)
        return 1

    spec = CommandSpec(
        command=args.command,
        model_path=args.model,
        measurement_id=args.measurement,
        state_id=args.state,
        trials=getattr(args, "trials", 100000),
        seed=getattr(args, "seed", 1),
        streams=getattr(args, "streams", 1),
        state_b_id=getattr(args, "state_b", None),
        amp_a=getattr(args, "amp_a", INV_SQRT2),
        amp_b=getattr(args, "amp_b", INV_SQRT2),
        phase_a=getattr(args, "phase_a", 0.0),
        phase_b=getattr(args, "phase_b", 0.0),
        renormalize=getattr(args, "renormalize", False),
    )
    try:
        record = execute_command(model, spec)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InternalInvariantError, ResampleLimitError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3

    if args.output is None:
        emit_csv(record, sys.stdout)
    else:
        try:
            emit_csv(record, args.output)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return 2
    return 0


def run() -> None:
    sys.exit(main())
