"""
Value objects for cubic-phase integrals

    ∫ [C(z) cos(δ p(z)) + S(z) sin(δ p(z))] / (1 + z²)^k dz,  p(z) = z + z³/3.
"""
import math
from dataclasses import dataclass

import numpy as np

from apps.utils.exceptions import InvalidInputError


def _trim(coefficients):
    values = [float(c) for c in coefficients]
    while values and values[-1] == 0.0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class CubicPhaseIntegrand:
    """
    Numeradores em ordem crescente de potência (convenção de
    ``numpy.polynomial``); ``phase_scale`` é o δ da fase δ(z + z³/3).
    """

    cos_numerator: tuple
    sin_numerator: tuple
    denominator_power: int
    phase_scale: float
    label: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'cos_numerator', _trim(self.cos_numerator))
        object.__setattr__(self, 'sin_numerator', _trim(self.sin_numerator))
        if not isinstance(self.denominator_power, (int, np.integer)) or self.denominator_power < 1:
            raise InvalidInputError(f'denominator power must be an integer >= 1, got {self.denominator_power!r}')
        if not math.isfinite(self.phase_scale):
            raise InvalidInputError(f'phase scale must be finite, got {self.phase_scale!r}')
        limit = 2 * self.denominator_power - 2
        for name in ('cos_numerator', 'sin_numerator'):
            degree = len(getattr(self, name)) - 1
            if degree > limit:
                raise InvalidInputError(
                    f'{name} has degree {degree} > {limit}: the integral does not converge absolutely'
                )

    @property
    def degree(self):
        return max(len(self.cos_numerator), len(self.sin_numerator)) - 1

    def complex_numerator(self):
        """C(z) − i S(z), so that the integrand is Re[(C − iS) e^{iδp}]/(1+z²)^k on the real line."""
        size = max(len(self.cos_numerator), len(self.sin_numerator), 1)
        numerator = np.zeros(size, dtype=complex)
        numerator[: len(self.cos_numerator)] += self.cos_numerator
        numerator[: len(self.sin_numerator)] -= 1j * np.asarray(self.sin_numerator)
        return numerator

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        phase = self.phase_scale * (z + z**3 / 3.0)
        cos_part = np.polynomial.polynomial.polyval(z, self.cos_numerator) if self.cos_numerator else 0.0
        sin_part = np.polynomial.polynomial.polyval(z, self.sin_numerator) if self.sin_numerator else 0.0
        return (cos_part * np.cos(phase) + sin_part * np.sin(phase)) / (1.0 + z * z) ** self.denominator_power

    def with_phase(self, phase_scale):
        return CubicPhaseIntegrand(
            self.cos_numerator, self.sin_numerator, self.denominator_power, phase_scale, self.label
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not (math.isfinite(self.error_estimate) and self.error_estimate >= 0):
            raise InvalidInputError(f'error estimate must be finite and >= 0, got {self.error_estimate!r}')
