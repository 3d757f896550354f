"""Shared exception types."""


class AneaError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(AneaError):
    """An input parameter is outside its allowed range."""


class CorpusError(AneaError):
    """The corpus or term input cannot produce a term table."""


class FormatError(AneaError):
    """A structured input file is malformed.

    Carries the offending path and 1-based line number when known so CLI
    errors can point at the exact record.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line is not None:
                prefix += f"{line}:"
            prefix += " "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(prefix + message)
