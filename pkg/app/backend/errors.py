"""Exception hierarchy shared by the simulation modules."""


class OwcLabError(Exception):
    """Base class for every error raised by the link laboratory."""


class ConfigError(OwcLabError, ValueError):
    """Invalid experiment configuration; `path` names the offending section.key."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ValidationError(OwcLabError, ValueError):
    """A precondition of an operation does not hold."""


class CalibrationError(OwcLabError):
    """Noise calibration could not reach its target profile."""

    def __init__(self, message: str, achieved=None, preset=None):
        self.achieved = achieved
        self.preset = preset
        super().__init__(message)


class ExtrapolationError(OwcLabError):
    """A fitted SNR model has no 0 dB crossing to extrapolate to."""


class NumericError(OwcLabError):
    """Non-finite samples or a quadrature that does not converge."""
