"""Exception hierarchy. Every error carries the offending elements as ``witness``."""


class AlgebraError(Exception):
    tag = "algebra-error"

    def __init__(self, *witness, detail=None):
        self.witness = tuple(int(w) if hasattr(w, "__index__") else w for w in witness)
        self.detail = detail
        msg = f"{self.tag}{self.witness}" if self.witness else self.tag
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class BadShape(AlgebraError):
    tag = "BadShape"


class NoIdentity(AlgebraError):
    tag = "NoIdentity"


class NotAssociative(AlgebraError):
    tag = "NotAssociative"


class NotCommutative(AlgebraError):
    tag = "NotCommutative"


class NoZero(AlgebraError):
    tag = "NoZero"


class NoInverse(AlgebraError):
    tag = "NoInverse"


class AnnotationMismatch(AlgebraError):
    tag = "AnnotationMismatch"


class NotAction(AlgebraError):
    tag = "NotAction"


class NotUnital(AlgebraError):
    tag = "NotUnital"


class NotEndomorphism(AlgebraError):
    tag = "NotEndomorphism"


class NotSubmodule(AlgebraError):
    tag = "NotSubmodule"


class MixedMonoids(AlgebraError):
    tag = "MixedMonoids"


class NotAdditive(AlgebraError):
    tag = "NotAdditive"


class NotEquivariant(AlgebraError):
    tag = "NotEquivariant"


class BoundExceeded(AlgebraError):
    tag = "BoundExceeded"


class NotAbelianGroup(AlgebraError):
    tag = "NotAbelianGroup"

    def __init__(self, cause):
        self.cause = cause
        super().__init__(*getattr(cause, "witness", ()), detail=str(cause))


class NotLeftDistributive(AlgebraError):
    tag = "NotLeftDistributive"


class NotRing(AlgebraError):
    tag = "NotRing"


class PowerLawFails(AlgebraError):
    tag = "PowerLawFails"


class NotMultiplicativeAutomorphism(AlgebraError):
    tag = "NotMultiplicativeAutomorphism"


class EmptySelection(AlgebraError):
    tag = "EmptySelection"


class NotSingleRing(AlgebraError):
    tag = "NotSingleRing"


class TrivialModule(AlgebraError):
    tag = "TrivialModule"


class HypothesisFailed(AlgebraError):
    tag = "HypothesisFailed"


class NoPresentation(AlgebraError):
    tag = "NoPresentation"


class PreconditionFailed(AlgebraError):
    tag = "PreconditionFailed"


class TheoremViolation(AlgebraError):
    """A proven implication failed on a concrete instance: an implementation bug."""

    tag = "TheoremViolation"


class NatSyntaxError(AlgebraError):
    tag = "SyntaxError"

    def __init__(self, line, detail=None):
        self.line = line
        super().__init__(line, detail=detail)


class UnresolvedReference(AlgebraError):
    tag = "UnresolvedReference"


class ValidationError(AlgebraError):
    """Wraps a structural error raised while resolving a parsed block."""

    tag = "ValidationError"

    def __init__(self, block, cause):
        self.block = block
        self.cause = cause
        super().__init__(*getattr(cause, "witness", ()), detail=f"{block}: {cause}")
