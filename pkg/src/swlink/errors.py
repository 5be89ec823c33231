"""Exception hierarchy shared by all swlink modules.

Two families matter for the CLI exit codes: ``DomainError`` means the input
violates a precondition (exit code 2), ``InternalError`` means an identity
that must hold by theorem failed, i.e. the library itself is broken (exit
code 3).
"""


class SwlinkError(Exception):
    """Base class for all swlink errors."""


class DomainError(SwlinkError):
    """The input violates a documented precondition."""


class InternalError(SwlinkError):
    """An identity that is a theorem failed; always an implementation bug."""


# --- domain errors -------------------------------------------------------

class InvalidInput(DomainError):
    pass


class InvalidNewtonPairs(DomainError):
    pass


class NotRationalHomologySphere(DomainError):
    pass


class DegenerateGraph(DomainError):
    pass


class ArrowMissing(DomainError):
    pass


class GraphParseError(DomainError):
    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class DivisionByZeroPolynomial(DomainError):
    pass


class ZeroSurgeryCoefficient(DomainError):
    pass


class ModePreconditionViolated(DomainError):
    pass


class PreconditionViolated(DomainError):
    pass


class CasePreconditionViolated(DomainError):
    pass


class UnsupportedTower(DomainError):
    pass


class WorkBoundExceeded(DomainError):
    pass


class LimitDoesNotExist(DomainError):
    """A character product has a genuine pole at t=1; the graph is invalid."""


# --- internal errors -----------------------------------------------------

class InternalInconsistency(InternalError):
    pass


class IdentityViolated(InternalError):
    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class ConjectureViolated(InternalError):
    pass


class NotRational(InternalError):
    """A character sum that must be Galois-invariant is not; a bookkeeping bug."""


class NoConsistentSeifertForm(InternalError):
    pass


class AmbiguousSeifertForm(InternalError):
    pass


class PoleAtSamplePoint(InternalError):
    """Deterministic resampling exhausted the sample space; should not happen."""
