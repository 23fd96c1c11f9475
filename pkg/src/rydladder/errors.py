"""Exception types raised by the simulator."""


class ConfigError(ValueError):
    """Invalid or inconsistent configuration input."""


class SteadyStateError(RuntimeError):
    """Steady state is singular / ill-conditioned (non-unique)."""


class SamplingError(RuntimeError):
    """Cloud sampling could not satisfy the minimum-distance constraint."""


class IntegrationError(RuntimeError):
    """Time integration failed (step-size underflow or invariant loss)."""


class PointError(RuntimeError):
    """A sweep grid point produced no usable realizations."""
