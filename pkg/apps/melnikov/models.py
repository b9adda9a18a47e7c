"""
Value objects for Melnikov functions and transversality verdicts.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from apps.utils.choices import ClassifyStage, StageDecision, VerdictStatus
from apps.utils.exceptions import InvalidInputError


@dataclass(frozen=True)
class MelnikovEvaluation:
    """
    A Melnikov function of a fixed ε-order written as a trigonometric
    polynomial in s0: Σ (a_cos cos(k s0) + a_sin sin(k s0)).

    ``harmonic_terms`` holds ``(k, a_cos, a_sin)``; the F-integrals are
    already folded into the amplitudes.
    """

    epsilon_order: int
    harmonic_terms: tuple
    theta0: float
    epsilon: float
    s0_grid_values: Optional[tuple] = None

    def __post_init__(self):
        if self.epsilon_order < 4 or self.epsilon_order % 2:
            raise InvalidInputError(f'epsilon order must be even and >= 4, got {self.epsilon_order!r}')
        if self.theta0 == 0 or not math.isfinite(self.theta0):
            raise InvalidInputError(f'theta0 must be finite and nonzero, got {self.theta0!r}')
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise InvalidInputError(f'epsilon must be positive, got {self.epsilon!r}')

    def __call__(self, s0):
        s0 = np.asarray(s0, dtype=float)
        value = np.zeros_like(s0)
        for k, a_cos, a_sin in self.harmonic_terms:
            value = value + a_cos * np.cos(k * s0) + a_sin * np.sin(k * s0)
        return value if value.ndim else float(value)

    def sampled(self, points):
        grid = 2.0 * np.pi * np.arange(points) / points
        return MelnikovEvaluation(
            self.epsilon_order, self.harmonic_terms, self.theta0, self.epsilon, tuple(self(grid).tolist())
        )


@dataclass(frozen=True)
class TraceEntry:
    stage: ClassifyStage
    coefficients: tuple
    decision: StageDecision
    k: int
    epsilon_order: int
    j: Optional[int] = None


@dataclass(frozen=True)
class Witness:
    """
    Par de coeficientes não nulo que garante zeros simples de M.

    ``coefficient_pair`` segue a convenção das tabelas harmônicas, (A, B)
    do termo A cos(k s) + B sin(k s) do potencial; o fator de M em s0 é
    A sin(k s0) − B cos(k s0).
    """

    k: int
    epsilon_order: int
    coefficient_pair: tuple
    zero_locations: tuple
    stage: ClassifyStage

    def __post_init__(self):
        if self.coefficient_pair == (0.0, 0.0):
            raise InvalidInputError('a witness needs a nonzero coefficient pair')

    def factor(self, s0):
        a, b = self.coefficient_pair
        s0 = np.asarray(s0, dtype=float)
        return a * np.sin(self.k * s0) - b * np.cos(self.k * s0)


@dataclass(frozen=True)
class TransversalityVerdict:
    status: VerdictStatus
    witness: Optional[Witness] = None
    search_trace: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.status == VerdictStatus.TRANSVERSAL and self.witness is None:
            raise InvalidInputError('a transversal verdict must carry its witness')

    @property
    def is_transversal(self):
        return self.status == VerdictStatus.TRANSVERSAL
