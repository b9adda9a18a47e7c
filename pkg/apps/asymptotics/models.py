"""
Value objects of the large-|δ| estimates.
"""
import math
from dataclasses import dataclass
from typing import Optional

from apps.utils.exceptions import InvalidInputError


@dataclass(frozen=True)
class FourierEstimate:
    """
    Ordem de grandeza do k-ésimo coeficiente de Fourier da função de
    Melnikov completa:

        α_k ≈ A_k ε^p e^{−r Θ0³/ε³},   β_k ≈ B_k ε^p e^{−r Θ0³/ε³}

    ``alpha_leading``/``beta_leading`` guardam A_k e B_k; para k >= 3 só os
    expoentes são conhecidos e ambos ficam ``None``.
    """

    k: int
    alpha_leading: Optional[float]
    beta_leading: Optional[float]
    epsilon_power: float
    exponential_rate: float
    theta0: float
    epsilon: float

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError(f'harmonic k must be >= 1, got {self.k!r}')
        if not math.isclose(self.exponential_rate, self.k / 3.0):
            raise InvalidInputError(f'exponential rate must be k/3, got {self.exponential_rate!r}')

    @property
    def constants_available(self):
        return self.alpha_leading is not None and self.beta_leading is not None

    @property
    def scale(self):
        """ε^p e^{−r Θ0³/ε³}, the factor shared by α_k and β_k."""
        return self.epsilon**self.epsilon_power * math.exp(
            -self.exponential_rate * self.theta0**3 / self.epsilon**3
        )

    @property
    def alpha(self):
        return None if self.alpha_leading is None else self.alpha_leading * self.scale

    @property
    def beta(self):
        return None if self.beta_leading is None else self.beta_leading * self.scale

    @property
    def amplitude(self):
        if not self.constants_available:
            return None
        return math.hypot(self.alpha, self.beta)
