class FormatError(ValueError):
    """Malformed check-matrix, circuit or bit-string text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidCodeError(ValueError):
    """Check matrix violates rank or commutation requirements."""


class AuditError(RuntimeError):
    """A synthesis checkpoint failed; the emitted circuit would be wrong."""


class ResourceGuardError(RuntimeError):
    """Exhaustive decoder refused an instance above its size limit."""
