"""Exception types shared across the library and the CLI."""


class DomainError(ValueError):
    """An input lies outside the physically or mathematically valid domain."""


class NoConvergence(RuntimeError):
    """An iterative numerical procedure failed to reach its tolerance."""


class ParseError(ValueError):
    """A config line could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ValueError):
    """A parsed configuration violates one of its invariants."""


class MissingGridPoint(LookupError):
    """A CSV emitter was asked for a grid cell absent from the sweep records."""
