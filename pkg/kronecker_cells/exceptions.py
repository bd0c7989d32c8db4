class KroneckerError(Exception):
    """Base error for kronecker-cells failures."""


class ConfigurationError(KroneckerError):
    """Raised when environment configuration is out of range."""


class InvalidParameterError(KroneckerError):
    """Raised when a numeric parameter violates its precondition."""


class InvalidPairError(KroneckerError):
    """Raised when a (j, k) pair is not in the JK set of a tuple."""


class InvalidLabelError(KroneckerError):
    """Raised when a row or column label does not exist in a matrix."""


class ShapeError(KroneckerError):
    """Raised when a matrix has the wrong shape for an operation."""


class PolynomialParseError(KroneckerError):
    """Raised when polynomial text cannot be parsed."""


class UnboundVariableError(KroneckerError):
    """Raised when an evaluation assignment misses a variable."""

    def __init__(self, variable) -> None:
        super().__init__(f"No value bound for variable {variable}")
        self.variable = variable


class EmptyRelationError(KroneckerError):
    """Raised when a relation is requested for a pair with no leading terms."""


class PartialOrderViolationError(KroneckerError):
    """Raised when the dependency relation between JK pairs has a cycle."""


class AssignmentDomainError(KroneckerError):
    """Raised when a free-variable assignment does not match the cell."""


class VerificationError(KroneckerError):
    """Base error for failed identity checks."""


class IdentityMismatchError(VerificationError):
    """Raised when det(A) is neither D-hat nor its negative."""


class IdealEqualityViolationError(VerificationError):
    """Raised when a cell point has rank above e1."""


class DecompositionMismatchError(VerificationError):
    """Raised when no sign pattern reproduces a replayed minor."""


class LaurentDivisionError(KroneckerError):
    """Raised when the exchange recursion leaves a non-monomial denominator."""
