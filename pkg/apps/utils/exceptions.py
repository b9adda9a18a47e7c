class MelnikovError(Exception):
    """Base para todos os erros levantados pelo projeto."""

    pass


class InvalidInputError(MelnikovError, ValueError):
    """Parâmetro fora do domínio ou payload inválido."""

    pass


class DegenerateConfigurationError(InvalidInputError):
    """Two primaries share (numerically) the same position."""

    pass


class NumericalError(MelnikovError):
    """Falha numérica: o cálculo não atingiu a precisão pedida."""

    pass


class NotCentralError(NumericalError):
    """The configuration is not central at any scale."""

    pass


class ConvergenceError(NumericalError):
    """Newton or root iteration did not converge."""

    pass


class SingularSystemError(NumericalError):
    """A linear system had no consistent solution."""

    pass


class NonPositiveMassError(NumericalError):
    """A solved mass distribution contains a mass <= 0."""

    pass


class QuadratureBudgetError(NumericalError):
    """The oscillatory quadrature ran out of its evaluation budget."""

    pass


class IntegrationError(NumericalError):
    """The ODE integrator failed (step size underflow or similar)."""

    pass


class ConvergenceRegionError(IntegrationError):
    """State left the region where the Legendre series converges."""

    pass


class NoReturnError(IntegrationError):
    """Trajectory did not come back to the section in time."""

    pass


class GoldenMismatchError(MelnikovError):
    """A catalog value fell outside its tolerance."""

    pass
