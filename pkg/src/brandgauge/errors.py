"""Shared exception types."""


class BrandGaugeError(Exception):
    """Base class for domain errors raised by this package."""


class LexiconParseError(BrandGaugeError):
    """Malformed lexicon/phrase file; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SchemaMismatchError(BrandGaugeError):
    """Feature vector and model were produced under different schemas."""
