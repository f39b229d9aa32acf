"""Exception hierarchy and sentinel values shared across the package."""


class PTFloquetError(Exception):
    """Base class for numerical failures raised by ptfloquet."""


class StepSizeUnderflow(PTFloquetError):
    """Raised when the adaptive integrator cannot reach the requested end time."""


class NoConvergence(PTFloquetError):
    """Raised when an iterative solver exceeds its iteration cap."""


class NotConverged(PTFloquetError):
    """Raised when quasienergies still move under a change of Floquet truncation."""


class SmallDenominator(PTFloquetError):
    """Raised when an intermediate level comes too close to the effective eigenvalue."""


class DomainExceeded(PTFloquetError):
    """Raised when a special function is evaluated outside its supported domain."""


class DomainError(PTFloquetError, ValueError):
    """Raised when a closed-form formula is evaluated where it has no meaning."""


class NumericalFailure(PTFloquetError):
    """Raised when a root bracket cannot be established."""


class ResolutionTooCoarse(PTFloquetError):
    """Raised when a scan grid is too coarse to resolve the predicted window."""


class NotGrowing(PTFloquetError):
    """Raised when a growth-rate fit finds no exponential growth."""


class NoWindow:
    """Sentinel for 'no PT-broken window found'. Use the NO_WINDOW singleton."""

    _instance = None

    def __new__(cls) -> "NoWindow":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NO_WINDOW"


NO_WINDOW = NoWindow()
