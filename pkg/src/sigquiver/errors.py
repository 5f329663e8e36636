"""Exception hierarchy. Everything derives from ``SigQuiverError`` (a ``ValueError``)."""


class SigQuiverError(ValueError):
    pass


class InvalidIntervalError(SigQuiverError):
    pass


class DegenerateFunctionError(SigQuiverError):
    pass


class NonMinimalPeriodError(SigQuiverError):
    pass


class JunctionError(SigQuiverError):
    """Curvature pieces do not join C1 at a junction."""


class NonRegularCurveError(SigQuiverError):
    pass


class InvalidStepError(SigQuiverError):
    pass


class DegenerateSignatureError(SigQuiverError):
    pass


class SimpleSignatureError(SigQuiverError):
    """The signature has no self-intersections, so there is no quiver."""


class NotCyclicError(SigQuiverError):
    pass


class NotAPathError(SigQuiverError):
    pass


class InternalConsistencyError(SigQuiverError):
    pass


class NotClosedError(SigQuiverError):
    pass


class OpenCurveError(SigQuiverError):
    pass


class InvalidSpecError(SigQuiverError):
    pass


class WordSyntaxError(SigQuiverError):
    pass


class TangentialIntersectionWarning(UserWarning):
    """A signature self-intersection is (nearly) tangential and was merged conservatively."""
