"""Exception taxonomy shared by all curveflow modules."""


class CurveFlowError(Exception):
    """Base class for all curveflow errors."""


class TooFewPoints(CurveFlowError):
    pass


class DegenerateCurve(CurveFlowError):
    pass


class NonMonotoneArcLength(CurveFlowError):
    """The parametrization speed vanishes somewhere (cusp)."""


class NotArcLengthParametrized(CurveFlowError):
    """Operation requires an arc-length parametrized curve."""


class OrderTooHigh(CurveFlowError):
    pass


class BadOrder(CurveFlowError):
    pass


class AmbiguousRotation(CurveFlowError):
    """Turning-number integral is not close to an integer."""


class InvalidPreset(CurveFlowError):
    pass


class BadIndices(CurveFlowError):
    pass


class EmptyEnsemble(CurveFlowError):
    pass


class BadInitialData(CurveFlowError):
    pass


class StepSizeUnderflow(CurveFlowError):
    pass


class CurvatureBlowup(CurveFlowError):
    pass


class SelfIntersection(CurveFlowError):
    pass


class TooFewRecords(CurveFlowError):
    pass


class MissingSnapshots(CurveFlowError):
    pass


class NotConverged(CurveFlowError):
    pass


class NotSimple(CurveFlowError):
    pass


class InsufficientPositiveData(CurveFlowError):
    pass


class EmptyInput(CurveFlowError):
    pass


class PerturbationTooLarge(CurveFlowError):
    pass


class MissingTrace(CurveFlowError):
    pass
