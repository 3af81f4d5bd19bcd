"""Exception hierarchy.

``ValidationError`` covers malformed or axiom-violating input; the CLI maps it
to exit code 1.  ``VerificationFailure`` means an internal cross-check did not
hold, which points at a bug rather than at the input; the CLI maps it to 2.
"""


class LoopGroupoidError(Exception):
    pass


class ValidationError(LoopGroupoidError, ValueError):
    """Input violates an axiom.  ``witness`` carries the offending data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotLatinSquare(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class InvalidAction(ValidationError):
    pass


class InvalidCocycle(ValidationError):
    pass


class IncompatibleGroup(ValidationError):
    pass


class SchemaError(ValidationError):
    """A document does not match its schema; ``path`` locates the problem."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}", witness=path)
        self.path = path
        self.reason = reason


class CapExceeded(LoopGroupoidError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class DimensionCapExceeded(CapExceeded):
    pass


class DecisionTimeout(LoopGroupoidError):
    pass


class VerificationFailure(LoopGroupoidError):
    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class EquivalenceFailure(VerificationFailure):
    pass


class MorphismViolation(VerificationFailure):
    pass
