"""Exception hierarchy shared by all modules."""


class QGError(ValueError):
    """Base class for input and hypothesis errors."""


class NotPointed(QGError):
    pass


class NotFullDim(QGError):
    pass


class NotGorenstein(QGError):
    pass


class NotSmooth(QGError):
    pass


class NotInterior(QGError):
    pass


class Unbounded(QGError):
    pass


class DegeneratePolytope(QGError):
    pass


class InsufficientSamples(QGError):
    pass


class InconsistentSamples(QGError):
    pass


class FitInconsistent(QGError):
    pass


class NonCoprimeWeight(QGError):
    pass


class NotSmoothFacet(QGError):
    pass


class NoConvergence(RuntimeError):
    """Newton iteration hit its cap; ``best`` holds the last iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class InfeasibleSlice(RuntimeError):
    pass
