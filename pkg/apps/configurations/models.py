"""
Value objects for planar central configurations.

These are immutable dataclasses, not database models: configurations are
built, validated and thrown away inside a single computation.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from apps.utils.exceptions import DegenerateConfigurationError, InvalidInputError

MASS_SUM_TOLERANCE = 1e-12
BARYCENTER_TOLERANCE = 1e-10
MIN_SEPARATION = 1e-9


@dataclass(frozen=True)
class PrimaryBody:
    """
    Uma primária: massa adimensional e posição no referencial girante.
    """

    mass: float
    position: tuple

    def __post_init__(self):
        mass = float(self.mass)
        position = tuple(float(c) for c in self.position)
        if len(position) != 2:
            raise InvalidInputError(f'position must have 2 components, got {len(position)}')
        if not math.isfinite(mass) or mass <= 0:
            raise InvalidInputError(f'mass must be positive and finite, got {self.mass!r}')
        if not all(math.isfinite(c) for c in position):
            raise InvalidInputError(f'position must be finite, got {self.position!r}')
        object.__setattr__(self, 'mass', mass)
        object.__setattr__(self, 'position', position)

    @property
    def radius(self):
        return math.hypot(*self.position)

    @property
    def angle(self):
        return math.atan2(self.position[1], self.position[0])


@dataclass(frozen=True)
class CentralConfiguration:
    """
    Ordered primaries with total mass 1 and barycenter at the origin.

    Centrality itself (the equilibrium equations in the rotating frame) is
    not enforced here; it is measured by ``cc_residual``.
    """

    bodies: tuple
    label: str = ''

    def __post_init__(self):
        bodies = tuple(self.bodies)
        object.__setattr__(self, 'bodies', bodies)
        if len(bodies) < 2:
            raise InvalidInputError(f'at least 2 primaries are required, got {len(bodies)}')
        total = math.fsum(body.mass for body in bodies)
        if abs(total - 1.0) > MASS_SUM_TOLERANCE:
            raise InvalidInputError(f'masses must sum to 1, got {total!r}')
        positions = self.positions
        barycenter = self.masses @ positions
        if np.max(np.abs(barycenter)) > BARYCENTER_TOLERANCE:
            raise InvalidInputError(
                f'barycenter must be the origin, got ({barycenter[0]!r}, {barycenter[1]!r})'
            )
        separation = minimum_separation(positions)
        if separation <= MIN_SEPARATION:
            raise DegenerateConfigurationError(
                f'coincident primaries: minimum separation {separation!r}'
            )

    @property
    def n(self):
        return len(self.bodies)

    @property
    def masses(self):
        return np.array([body.mass for body in self.bodies])

    @property
    def positions(self):
        return np.array([body.position for body in self.bodies], dtype=float)

    @property
    def radii(self):
        return np.hypot(*self.positions.T)

    @property
    def angles(self):
        positions = self.positions
        return np.arctan2(positions[:, 1], positions[:, 0])

    @classmethod
    def from_arrays(cls, masses, positions, label=''):
        bodies = tuple(
            PrimaryBody(mass=m, position=tuple(p))
            for m, p in zip(np.asarray(masses, dtype=float), np.asarray(positions, dtype=float))
        )
        return cls(bodies=bodies, label=label)


@dataclass(frozen=True)
class CentralityReport:
    residuals: tuple
    max_norm: float
    lambda_value: Optional[float] = None
    fit_residual: Optional[float] = field(default=None)

    def __post_init__(self):
        if not self.max_norm >= 0:
            raise InvalidInputError(f'max_norm must be >= 0, got {self.max_norm!r}')


def minimum_separation(positions):
    positions = np.asarray(positions, dtype=float)
    deltas = positions[:, None, :] - positions[None, :, :]
    distances = np.hypot(deltas[..., 0], deltas[..., 1])
    np.fill_diagonal(distances, np.inf)
    return float(distances.min())
