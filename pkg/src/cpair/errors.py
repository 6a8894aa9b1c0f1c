"""Exception hierarchy for the engine."""


class CPairError(Exception):
    """Base class for all engine errors."""


class NotStandardCoefficient(CPairError):
    def __init__(self, prime, coefficient):
        self.prime = prime
        self.coefficient = coefficient
        super().__init__(
            f"NotStandardCoefficient: coefficient {coefficient} of {prime} "
            f"is not of the form (m-1)/m"
        )


class InfiniteCoefficient(CPairError):
    """An infinite value was offered as a Q-divisor coefficient."""


class UnknownPrime(CPairError):
    def __init__(self, prime, where=""):
        self.prime = prime
        msg = f"UnknownPrime: {prime}"
        if where:
            msg += f" ({where})"
        super().__init__(msg)


class ChartMismatch(CPairError):
    pass


class AxisOutOfRange(CPairError):
    pass


class InconsistentOrbit(CPairError):
    pass


class DegreeOutOfRange(CPairError):
    pass


class FactorizationMismatch(CPairError):
    pass


class NonDiagonalCover(CPairError):
    pass


class EnumerationLimitExceeded(CPairError):
    pass


class MissingCanonicalData(CPairError):
    pass


class InvalidMorphism(CPairError):
    pass


class NonIntegralGenus(CPairError):
    pass


class NotAdapted(CPairError):
    pass


class IndeterminateInvariant(CPairError):
    """Raised when an invariant is not determined by degree data alone."""

    def __init__(self, message, lower, upper):
        self.lower = lower
        self.upper = upper
        super().__init__(f"{message} (bounds {lower}..{upper})")


class TruncationOverflow(CPairError):
    pass


class ParseError(CPairError):
    """Syntax error in an input document, with a 1-based location."""

    def __init__(self, message, line, col, kind="ParseError"):
        self.line = line
        self.col = col
        self.kind = kind
        self.detail = message
        super().__init__(f"{kind}: {message} (line {line}, column {col})")


class SemanticError(ParseError):
    """Well-formed input that names unknown objects or invalid data."""

    def __init__(self, message, line, col, kind="SemanticError"):
        super().__init__(message, line, col, kind)
