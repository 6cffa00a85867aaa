"""Exception hierarchy shared by every emlab module."""


class EmlabError(Exception):
    """Base class for all library errors."""


class NotPrime(EmlabError, ValueError):
    pass


class TooLarge(EmlabError, ValueError):
    """Group enumeration would exceed the configured order cap."""


class InvalidAction(EmlabError, ValueError):
    pass


class NotSubgroup(EmlabError, ValueError):
    pass


class InvalidGeneratingSet(EmlabError, ValueError):
    pass


class SizeMismatch(EmlabError, ValueError):
    pass


class InvalidSelection(EmlabError, ValueError):
    pass


class NotRegular(EmlabError, ValueError):
    pass


class ParseError(EmlabError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeCap(EmlabError, ValueError):
    """Matrix too large for the dense eigensolver."""


class TooSmall(EmlabError, ValueError):
    pass


class BadInterval(EmlabError, ValueError):
    pass


class DomainError(EmlabError, ValueError):
    pass


class BracketFailure(EmlabError, RuntimeError):
    pass


class HypothesisFailure(EmlabError):
    """A theorem hypothesis did not hold for the supplied instance."""

    def __init__(self, name, detail=""):
        self.name = name
        msg = f"hypothesis failed: {name}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class SearchExhausted(EmlabError, RuntimeError):
    pass


class RetryExhausted(EmlabError, RuntimeError):
    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)
