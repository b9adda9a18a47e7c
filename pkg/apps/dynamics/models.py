"""
States, flow parameters and trajectories of the McGehee-coordinate flow.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from apps.harmonics.utils import perturbation_tables
from apps.utils.choices import FlowTime
from apps.utils.exceptions import InvalidInputError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class McGeheeState:
    """
    Ponto (x, y, s, Θ) com r = x^(−2), R = −√2·y e s = t − θ.
    """

    x: float
    y: float
    s: float
    theta: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.s, self.theta)):
            raise InvalidInputError(f'state components must be finite, got {self!r}')
        if self.x < 0:
            raise InvalidInputError(f'x must be >= 0, got {self.x!r}')
        object.__setattr__(self, 's', float(self.s) % TWO_PI)

    def as_array(self):
        return np.array([self.x, self.y, self.s, self.theta], dtype=float)

    @classmethod
    def from_array(cls, values):
        x, y, s, theta = (float(v) for v in values)
        return cls(x, y, s, theta)


@dataclass(frozen=True)
class PolarState:
    r: float
    theta_angle: float
    R: float
    Theta: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise InvalidInputError(f'r must be positive, got {self.r!r}')


@dataclass(frozen=True)
class FlowParams:
    """
    Parâmetros do fluxo truncado.

    Atributos:
        epsilon (float): 0 < ε < 1.
        config (CentralConfiguration): primárias.
        truncation_order (int): maior potência de ε mantida no hamiltoniano
            (3, 7 ou 9).
        jacobi_C (float | None): valor da integral de Jacobi, exigido pelo
            mapa de Poincaré.
    """

    epsilon: float
    config: object
    truncation_order: int = 9
    jacobi_C: Optional[float] = None
    tables: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and 0 < self.epsilon < 1):
            raise InvalidInputError(f'epsilon must lie in (0, 1), got {self.epsilon!r}')
        if self.jacobi_C is not None and not math.isfinite(self.jacobi_C):
            raise InvalidInputError(f'jacobi_C must be finite, got {self.jacobi_C!r}')
        object.__setattr__(self, 'tables', perturbation_tables(self.config, self.truncation_order))

    @property
    def max_radius(self):
        return float(np.max(self.config.radii))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Solution of an integration: sample times, states (one row per time),
    the dense interpolant and the event crossings, if any.
    """

    time_variable: FlowTime
    times: np.ndarray
    states: np.ndarray
    solution: object = None
    event_times: tuple = ()
    event_states: tuple = ()

    def __len__(self):
        return len(self.times)

    def at(self, time):
        """Interpolated state at ``time`` (dense output)."""
        if self.solution is None:
            raise InvalidInputError('trajectory has no dense output')
        return self.solution(time)
