"""
Golden cases: named configurations with reference values and tolerances.
"""
import math
from dataclasses import dataclass, field
from typing import Callable

from apps.utils.choices import Provenance
from apps.utils.exceptions import InvalidInputError


@dataclass(frozen=True)
class GoldenValue:
    """
    Valor de referência com tolerância absoluta e origem.

    ``compute`` recebe a configuração do caso e devolve o valor calculado.
    """

    name: str
    expected: float
    tolerance: float
    provenance: Provenance
    compute: Callable = field(repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise InvalidInputError(f'{self.name}: tolerance must be positive, got {self.tolerance!r}')
        if self.provenance not in Provenance.values:
            raise InvalidInputError(f'{self.name}: unknown provenance {self.provenance!r}')
        object.__setattr__(self, 'provenance', Provenance(self.provenance))


@dataclass(frozen=True)
class CatalogCase:
    name: str
    build: Callable = field(repr=False, compare=False)
    expected: tuple = ()

    def __post_init__(self):
        if not self.expected:
            raise InvalidInputError(f'catalog case {self.name!r} has no golden values')
        names = [value.name for value in self.expected]
        if len(set(names)) != len(names):
            raise InvalidInputError(f'catalog case {self.name!r} repeats a golden value name')


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    computed: float
    expected: float
    tolerance: float
    provenance: Provenance

    @property
    def difference(self):
        return abs(self.computed - self.expected)

    @property
    def passed(self):
        return math.isfinite(self.computed) and self.difference <= self.tolerance


@dataclass(frozen=True)
class CatalogReport:
    case: str
    label: str
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]
