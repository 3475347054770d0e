"""Exception types shared across the package."""


class ParseError(Exception):
    """Model file could not be parsed; message carries line/column."""


class ValidationError(Exception):
    """Model data violates its invariants; carries the violation report."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class TableNotFoundError(LookupError):
    """No probability table exists for the requested (measurement, state) pair."""


class CommandError(Exception):
    """A CLI command was given ids or options it cannot act on."""


class InternalInvariantError(AssertionError):
    """A result violated an invariant the implementation guarantees."""


class ResampleLimitError(RuntimeError):
    """A trial hit the redraw cap; signals a broken RNG or degenerate input."""
