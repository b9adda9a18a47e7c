"""
Value objects for the harmonic expansion of the perturbing potential.
"""
from dataclasses import dataclass

import numpy as np

from apps.utils.exceptions import InvalidInputError


@dataclass(frozen=True)
class LegendreCosExpansion:
    """
    P_j(cos γ) = Σ_m p_{j,m} cos(mγ).

    With ``derivative=True`` the coefficients expand Q_j = dP_j/dw instead,
    and the harmonics present are those with m ≡ j − 1 (mod 2).
    """

    j: int
    coefficients: tuple
    derivative: bool = False

    def as_dict(self):
        return dict(self.coefficients)

    def __call__(self, gamma):
        gamma = np.asarray(gamma, dtype=float)
        return sum(p * np.cos(m * gamma) for m, p in self.coefficients)


@dataclass(frozen=True)
class HarmonicTable:
    """
    Harmonics of the order-j perturbing term:
    −(ε^(2j+3)/r^(j+1)) Σ_m (A_m cos(m s) + B_m sin(m s)).

    ``entries`` is a tuple of ``(m, A_m, B_m)`` sorted by m.
    """

    j: int
    entries: tuple

    def __post_init__(self):
        if self.j < 2:
            raise InvalidInputError(f'harmonic tables start at j = 2, got {self.j!r}')
        for m, _, _ in self.entries:
            if (m - self.j) % 2:
                raise InvalidInputError(f'harmonic m={m} has the wrong parity for j={self.j}')

    @property
    def harmonics(self):
        return tuple(m for m, _, _ in self.entries)

    def pair(self, m):
        """(A_m, B_m), zero when the harmonic is absent."""
        for harmonic, a, b in self.entries:
            if harmonic == m:
                return a, b
        return 0.0, 0.0


@dataclass(frozen=True)
class CoefficientSet:
    c1: float
    c2: float
    c3: float
    d1: float
    d2: float
    d3: float
    d4: float

    def __post_init__(self):
        if self.c1 < 0:
            raise InvalidInputError(f'c1 must be non-negative, got {self.c1!r}')

    @property
    def c(self):
        return self.c1, self.c2, self.c3

    @property
    def d(self):
        return self.d1, self.d2, self.d3, self.d4
