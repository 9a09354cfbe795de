"""Exception types raised by the solver."""


class UnsupportedOrderError(ValueError):
    """Polynomial order outside the hard-coded range 0..3."""


class MeshTooSmallError(ValueError):
    """The schemes need at least two elements."""


class InvalidInitialDataError(ValueError):
    """Initial data evaluated to a non-finite value at some node."""


class UndefinedRateError(ValueError):
    """A convergence rate was requested from a nonpositive error."""


class BlowUpError(RuntimeError):
    """The discrete solution became non-finite during time stepping.

    Attributes
    ----------
    t : float
        Time at the end of the offending step.
    element : int or None
        Index of the first element holding a non-finite coefficient.
    trace : EnergyTrace or None
        Energies recorded before the failure, when the caller kept any.
    """

    def __init__(self, t, element=None, trace=None):
        self.t = float(t)
        self.element = element
        self.trace = trace
        where = "" if element is None else f" in element {element}"
        super().__init__(f"non-finite solution at t={self.t:.6g}{where}")
