import logging
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from apps.utils.exceptions import InvalidInputError
from .models import CoefficientSet, HarmonicTable, LegendreCosExpansion

logger = logging.getLogger(__name__)

MAX_LEGENDRE_ORDER = 64


@lru_cache(maxsize=None)
def legendre_power_coeffs(j):
    """
    Coeficientes exatos de P_j(x) na base de potências, do grau 0 ao j,
    pela recorrência (n+1)P_{n+1} = (2n+1) x P_n − n P_{n−1}.
    """
    previous, current = (Fraction(1),), (Fraction(0), Fraction(1))
    if j == 0:
        return previous
    for n in range(1, j):
        shifted = (Fraction(0),) + tuple((2 * n + 1) * c for c in current)
        padded = previous + (Fraction(0),) * (len(shifted) - len(previous))
        following = tuple((a - n * b) / (n + 1) for a, b in zip(shifted, padded))
        previous, current = current, following
    return current


def power_to_cosine(power_coeffs):
    """
    Rewrites Σ_n c_n cos^n γ as Σ_m p_m cos(mγ), exactly.

    cos^n γ = 2^(1−n) Σ_{k<n/2} C(n, k) cos((n−2k)γ) + [n even] 2^(−n) C(n, n/2).
    """
    result = {}
    for n, c in enumerate(power_coeffs):
        if c == 0:
            continue
        for k in range((n + 1) // 2):
            m = n - 2 * k
            result[m] = result.get(m, Fraction(0)) + c * Fraction(comb(n, k), 2 ** (n - 1))
        if n % 2 == 0:
            result[0] = result.get(0, Fraction(0)) + c * Fraction(comb(n, n // 2), 2**n)
    return result


def _check_order(j, lowest=0):
    if not isinstance(j, (int, np.integer)) or not lowest <= j <= MAX_LEGENDRE_ORDER:
        raise InvalidInputError(f'Legendre order must be in [{lowest}, {MAX_LEGENDRE_ORDER}], got {j!r}')


@lru_cache(maxsize=None)
def _legendre_cosine(j):
    cosine = power_to_cosine(legendre_power_coeffs(j))
    return tuple((m, cosine.get(m, Fraction(0))) for m in range(j % 2, j + 1, 2))


@lru_cache(maxsize=None)
def _legendre_derivative_cosine(j):
    power = legendre_power_coeffs(j)
    derivative = tuple(n * c for n, c in enumerate(power))[1:]
    cosine = power_to_cosine(derivative)
    return tuple((m, cosine.get(m, Fraction(0))) for m in range((j - 1) % 2, j, 2))


def legendre_cos_coeffs(j):
    """
    P_j na base de cossenos, calculado em racionais exatos e convertido
    para float no final.

    Parâmetros:
        j (int): ordem de Legendre, 0 <= j <= 64.

    Retorna:
        LegendreCosExpansion
    """
    _check_order(j)
    return LegendreCosExpansion(j=int(j), coefficients=tuple((m, float(p)) for m, p in _legendre_cosine(j)))


def legendre_derivative_cos_coeffs(j):
    """Q_j = dP_j/dw in the cosine basis (harmonics m ≡ j − 1 mod 2)."""
    _check_order(j, lowest=1)
    return LegendreCosExpansion(
        j=int(j),
        coefficients=tuple((m, float(p)) for m, p in _legendre_derivative_cosine(j)),
        derivative=True,
    )


def harmonic_table(config, j):
    """
    A_m = p_{j,m} Σ_k m_k |a_k|^j cos(m α_k),
    B_m = −p_{j,m} Σ_k m_k |a_k|^j sin(m α_k).
    """
    _check_order(j, lowest=2)
    weights = config.masses * config.radii**j
    angles = config.angles
    entries = []
    for m, p in legendre_cos_coeffs(j).coefficients:
        a = p * float(np.sum(weights * np.cos(m * angles)))
        b = -p * float(np.sum(weights * np.sin(m * angles)))
        entries.append((m, a, b))
    return HarmonicTable(j=int(j), entries=tuple(entries))


def c_coeffs(config):
    masses = config.masses
    a1, a2 = config.positions.T
    c1 = float(np.sum(masses * (a1**2 + a2**2)))
    c2 = 3.0 * float(np.sum(masses * (a1**2 - a2**2)))
    c3 = -6.0 * float(np.sum(masses * a1 * a2))
    return c1, c2, c3


def d_coeffs(config):
    masses = config.masses
    a1, a2 = config.positions.T
    squared = a1**2 + a2**2
    d1 = 3.0 * float(np.sum(masses * a1 * squared))
    d2 = -3.0 * float(np.sum(masses * a2 * squared))
    d3 = 5.0 * float(np.sum(masses * a1 * (a1**2 - 3.0 * a2**2)))
    d4 = -5.0 * float(np.sum(masses * a2 * (3.0 * a1**2 - a2**2)))
    return d1, d2, d3, d4


def d_l(config, l):
    """
    (Σ m_k a_k1 |a_k|^(2l), −Σ m_k a_k2 |a_k|^(2l)): the pair multiplying
    cos s0 / sin s0 at order ε^(2(2l+1)).
    """
    if not isinstance(l, (int, np.integer)) or l < 1:
        raise InvalidInputError(f'l must be an integer >= 1, got {l!r}')
    masses = config.masses
    a1, a2 = config.positions.T
    weight = (a1**2 + a2**2) ** l
    return float(np.sum(masses * a1 * weight)), -float(np.sum(masses * a2 * weight))


def coefficient_set(config):
    return CoefficientSet(*c_coeffs(config), *d_coeffs(config))


def harmonic_value(table, s):
    """h_j(s) = Σ_m A_m cos(m s) + B_m sin(m s); vectorized over s."""
    s = np.asarray(s, dtype=float)
    value = np.zeros_like(s)
    for m, a, b in table.entries:
        value = value + a * np.cos(m * s) + b * np.sin(m * s)
    return value if value.ndim else float(value)


def harmonic_derivative(table, s):
    s = np.asarray(s, dtype=float)
    value = np.zeros_like(s)
    for m, a, b in table.entries:
        value = value + m * (b * np.cos(m * s) - a * np.sin(m * s))
    return value if value.ndim else float(value)


def perturbation_tables(config, truncation_order):
    """
    Tabelas j = 2 .. (truncation_order − 3)/2, i.e. every Legendre term kept
    when the Hamiltonian is truncated at ε^truncation_order.
    """
    if truncation_order not in (3, 7, 9):
        raise InvalidInputError(f'truncation order must be 3, 7 or 9, got {truncation_order!r}')
    return tuple(harmonic_table(config, j) for j in range(2, (truncation_order - 3) // 2 + 1))
