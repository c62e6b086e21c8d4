"""Exception hierarchy shared by every module of the package."""


class CychomError(Exception):
    """Base class for all package errors."""


class DivisionByZero(CychomError, ZeroDivisionError):
    pass


class ParseError(CychomError, ValueError):
    pass


class DimensionMismatch(CychomError, ValueError):
    pass


class IndexOutOfRange(CychomError, IndexError):
    pass


class SizeLimitExceeded(CychomError):
    def __init__(self, level, size, limit):
        super().__init__(f"nerve level {level} has {size} basis tuples, limit is {limit}")
        self.level = level
        self.size = size
        self.limit = limit


class InvalidCategory(CychomError, ValueError):
    pass


class AlreadyUnital(CychomError):
    pass


class NotInvertible(CychomError, ValueError):
    pass


class SemicategoryHasNoIdentities(CychomError):
    pass


class NotLambdaInvariant(CychomError):
    pass


class NotACocycle(CychomError):
    pass


class NotACoboundary(CychomError):
    """Raised when a solve for a cyclic coboundary witness is inconsistent.

    ``certificate`` is a functional vanishing on all cyclic coboundaries of the
    level but pairing nontrivially with the offending cochain.
    """

    def __init__(self, message, certificate=None, pairing=None):
        super().__init__(message)
        self.certificate = certificate
        self.pairing = pairing


class ClassesDiffer(CychomError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotComposable(CychomError, ValueError):
    pass


class DegreeOverflow(CychomError):
    pass


class NotHomogeneous(CychomError, ValueError):
    pass


class TraceAxiomViolated(CychomError):
    def __init__(self, message, probe=None):
        super().__init__(message)
        self.probe = probe


class AssertionFailed(CychomError):
    """A mathematical identity failed; ``where`` names the first bad location."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class VerificationFailed(AssertionFailed):
    pass


class NotAGroup(CychomError, ValueError):
    pass


class NotCocommutative(CychomError):
    pass


class CotensorNotSubmodule(CychomError):
    pass


class SchemaError(CychomError, ValueError):
    """Input document error; ``pointer`` is a JSON pointer to the bad node."""

    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.detail = message
