"""Exception hierarchy shared by all modules."""


class ThermalBellError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(ThermalBellError, ValueError):
    """Invalid physical or numerical parameters."""


class InconsistentStateError(ThermalBellError):
    """A computed state violates an invariant beyond tolerance (upstream bug)."""


class NoSettingsError(ThermalBellError):
    """No optimal CHSH settings exist for a vanishing correlation matrix."""


class ConvergenceError(ThermalBellError, ArithmeticError):
    """An iterative solver failed to converge."""


class RangeError(ThermalBellError, OverflowError):
    """Arguments fall outside the numerically supported range."""


class DegenerateModelError(ParameterError):
    """The model is trivial for the requested mapping (e.g. zero coupling)."""
