"""Exception types shared across the package.

The service layer and the CLI map these onto HTTP error codes and process
exit codes, so raising the right class matters more than the message text.
"""


class ParseError(ValueError):
    """Malformed input text (FASTA, dataset table, model file, rule spec)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class VersionError(ParseError):
    """Model file declares a format version this build does not read."""


class DimensionMismatch(ValueError):
    """Feature width does not match the model's lattice size."""


class StateSpaceError(ValueError):
    """Exhaustive enumeration refused: n**size above the hard guard."""
