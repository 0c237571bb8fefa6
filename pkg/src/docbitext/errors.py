"""Exception types shared across pipeline stages.

The CLI maps these onto exit codes: usage problems exit 1, input/schema
problems exit 2, external scoring-service problems exit 3.
"""

from __future__ import annotations


class InputError(ValueError):
    """Base class for malformed input data (exit code 2)."""


class SchemaError(InputError):
    """A record line does not match the expected column layout."""


class RecordParseError(InputError):
    """A field inside a record could not be parsed.

    Carries the 1-based line number and column name when known.
    """

    def __init__(self, message: str, line_number: int | None = None,
                 column: str | None = None) -> None:
        parts = []
        if line_number is not None:
            parts.append(f"line {line_number}")
        if column is not None:
            parts.append(f"column '{column}'")
        prefix = ", ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line_number = line_number
        self.column = column


class EncodingError(InputError):
    """A record cannot be serialized (text contains tab or newline)."""


class PipelineError(RuntimeError):
    """Stage contract violation, e.g. unsorted input or doc_id mismatch."""


class ConfigError(InputError):
    """Missing or invalid configuration (paths, thresholds, tables)."""


class ScoringError(RuntimeError):
    """Scorer backend failure. Carries the failing batch or window index."""

    def __init__(self, message: str, batch_index: int | None = None) -> None:
        if batch_index is not None:
            message = f"batch {batch_index}: {message}"
        super().__init__(message)
        self.batch_index = batch_index


class ProtocolError(ScoringError):
    """The scoring service violated its wire contract (e.g. score count)."""
