"""Exception hierarchy shared by the property, cycle, sweep and regression layers."""


class SteamCycleError(Exception):
    """Base class for every error raised by this package."""


class PropertyDomainError(SteamCycleError, ValueError):
    """Input lies outside the range covered by the water/steam formulation."""


class AmbiguousPhaseError(PropertyDomainError):
    """(p, T) sits exactly on the saturation line, so the phase is undetermined."""


class ConvergenceError(SteamCycleError, ArithmeticError):
    """An iterative solver exhausted its budget without meeting tolerance."""


class CycleSpecError(SteamCycleError, ValueError):
    """A cycle definition violates one of its invariants."""


class BracketError(SteamCycleError, ValueError):
    """A root bracket does not straddle the target."""


class RegressionError(SteamCycleError, ValueError):
    """Base class for trendline fitting failures."""


class DegenerateDesignError(RegressionError):
    """Fewer than two distinct abscissae were supplied."""


class RegressionDomainError(RegressionError):
    """Data outside the domain of the model family (e.g. x <= 0 for a log fit)."""


class UndefinedRSquaredError(RegressionError):
    """R^2 is undefined because the observations have zero variance."""


def annotate(exc, prefix):
    """Prefix the message of ``exc`` in place and return it for re-raising."""
    msg = str(exc.args[0]) if exc.args else ""
    exc.args = (f"{prefix}: {msg}",) + tuple(exc.args[1:])
    return exc
