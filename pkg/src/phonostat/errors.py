"""Exception hierarchy shared by all phonostat modules."""


class PhonostatError(Exception):
    """Base class for every error raised by the library."""


class EmptyCorpusError(PhonostatError):
    """The input text has no countable symbols."""


class RuleParseError(PhonostatError):
    """A rule file line could not be parsed."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UndefinedMetricError(PhonostatError):
    """A metric is undefined for the given distribution (too few symbols)."""


class ParameterError(PhonostatError, ValueError):
    """An argument is outside its allowed domain."""


class ModeMismatchError(PhonostatError, ValueError):
    """Text and rule set (or transform) disagree on the diacritic mode."""
