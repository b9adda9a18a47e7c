"""
The basis integrals

    I_k(δ) = ∫_0^∞ cos(δ p(z)) / (1 + z²)^k dz,
    J_k(δ) = ∫_0^∞ z sin(δ p(z)) / (1 + z²)^k dz,     p(z) = z + z³/3,

and the partial-fraction pipeline that rewrites any cubic-phase integrand
on that basis.

I_k and J_k are evaluated on the line Im z = c, shifted towards the pole
and saddle at z = ±i (sign of δ). Along that line the integrand carries the
factor e^{−|δ||c|(1 + x² − c²/3)}, so the results keep their relative
accuracy when they are of order e^{−2|δ|/3}.
"""
import logging
import math
from functools import lru_cache
from math import comb

import numpy as np
from scipy.optimize import brentq

from apps.utils.exceptions import InvalidInputError, QuadratureBudgetError
from .kronrod import EVALUATIONS_PER_PANEL, adaptive_integrate
from .models import QuadratureResult
from .utils import DEFAULT_BUDGET, DEFAULT_TOL, MAX_CUTOFF, log_floor, phase, validate_tol

logger = logging.getLogger(__name__)


def _check_order(k, lowest):
    if not isinstance(k, (int, np.integer)) or k < lowest:
        raise InvalidInputError(f'order k must be an integer >= {lowest}, got {k!r}')


def contour_shift(delta):
    """(η, c): distance η = min(1/2, |δ|^(−1/2)) kept from the pole, line Im z = c = sign(δ)(1 − η)."""
    eta = min(0.5, 1.0 / math.sqrt(abs(delta)))
    return eta, math.copysign(1.0 - eta, delta)


def _line_tail(k, s, decay, cutoff):
    algebraic = cutoff ** (s - 2 * k + 1) / (2 * k - s - 1)
    gaussian = cutoff ** (s - 2 * k) * math.exp(-decay * cutoff * cutoff) / (2.0 * decay * cutoff)
    return 2.0 * 2.0**s * min(algebraic, gaussian)


def _line_cutoff(k, s, decay, target):
    if _line_tail(k, s, decay, 1.0) <= target:
        return 1.0
    if _line_tail(k, s, decay, MAX_CUTOFF) > target:
        raise QuadratureBudgetError(f'contour tail for k={k} cannot reach {target:.3e}')

    def excess(t):
        return log_floor(_line_tail(k, s, decay, math.exp(t))) - math.log(target)

    cutoff = math.exp(brentq(excess, 0.0, math.log(MAX_CUTOFF), xtol=1e-12)) * (1.0 + 1e-9)
    while _line_tail(k, s, decay, cutoff) > target:
        cutoff *= 1.0 + 1e-6
    return cutoff


def _line_breakpoints(delta, eta, c, cutoff, budget):
    gap = 1.0 - c * c
    limit = budget // (2 * EVALUATIONS_PER_PANEL)
    points = [0.0]
    x = 0.0
    while x < cutoff:
        width = min(max(eta, 0.25 * x), math.pi / (abs(delta) * (gap + x * x)))
        x = min(cutoff, x + width)
        points.append(x)
        if len(points) > limit:
            raise QuadratureBudgetError(f'contour for delta={delta:.6g} needs more than {limit} panels per side')
    half = np.array(points)
    return np.concatenate([-half[:0:-1], half])


@lru_cache(maxsize=4096)
def contour_integral(k, delta, odd, tol, budget=DEFAULT_BUDGET):
    """
    ∫_R z^s e^{iδp(z)} / (1+z²)^k dz (s = 1 quando ``odd``), pela reta
    Im z = c.

    Parâmetros:
        k (int): potência do denominador.
        delta (float): escala da fase, não nula.
        odd (bool): inclui o fator z.
        tol (float): tolerância relativa à escala natural do integrando.
        budget (int): avaliações permitidas.

    Retorna:
        tuple: (valor complexo, estimativa de erro absoluta, avaliações).
    """
    s = 1 if odd else 0
    eta, c = contour_shift(delta)
    decay = abs(delta) * abs(c)
    scale = math.exp(-decay * (1.0 - c * c / 3.0))
    if scale == 0.0:
        return 0j, 0.0, 0
    target = tol * (1.0 - c * c) ** (-k) * min(1.0, eta)
    cutoff = _line_cutoff(k, s, decay, target / 4.0)
    breakpoints = _line_breakpoints(delta, eta, c, cutoff, budget)

    def integrand(x):
        z = x + 1j * c
        oscillation = np.exp(-decay * x * x + 1j * delta * (phase(x) - c * c * x))
        return oscillation * z**s / (1.0 + z * z) ** k

    value, error, evaluations = adaptive_integrate(integrand, breakpoints, target / 2.0, budget)
    error += _line_tail(k, s, decay, cutoff)
    logger.debug(
        'contour k=%s odd=%s delta=%.6g c=%.6f X=%.6g panels=%s', k, odd, delta, c, cutoff, len(breakpoints) - 1
    )
    return scale * value, scale * error, evaluations


def ik_at_zero(k):
    """I_k(0) = √π Γ(k − 1/2) / (2 Γ(k))."""
    return math.sqrt(math.pi) * math.gamma(k - 0.5) / (2.0 * math.gamma(k))


def _basis(k, delta, odd, tol, budget):
    if delta == 0.0:
        return (0.0 if odd else ik_at_zero(k)), 0.0, 0
    value, error, evaluations = contour_integral(k, float(delta), odd, tol, budget)
    return (value.imag if odd else value.real) / 2.0, error / 2.0, evaluations


def eval_Ik(k, delta, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET):
    _check_order(k, 1)
    return _basis(int(k), float(delta), False, validate_tol(tol), budget)[0]


def eval_Jk(k, delta, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET):
    _check_order(k, 2)
    return _basis(int(k), float(delta), True, validate_tol(tol), budget)[0]


def _shift_to_weight(coefficients):
    # Σ c_i u^i with u = w − 1, rewritten as Σ e_m w^m
    result = [0] * len(coefficients)
    for i, c in enumerate(coefficients):
        for m in range(i + 1):
            result[m] += c * comb(i, m) * (-1) ** (i - m)
    return tuple(float(e) for e in result)


def partial_fraction_coefficients(integrand):
    """
    Decompõe as partes que sobrevivem à paridade: C par = Σ e_m w^m e
    S ímpar = z Σ f_m w^m, com w = 1 + z².

    Retorna:
        tuple: (e, f), de modo que a integral vale
        Σ 2 e_m I_{k−m} + Σ 2 f_m J_{k−m}.
    """
    return (
        _shift_to_weight(integrand.cos_numerator[0::2]),
        _shift_to_weight(integrand.sin_numerator[1::2]),
    )


def eval_partial_fractions(integrand, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET):
    """Second pipeline for a cubic-phase integral, through the I_k/J_k basis."""
    tol = validate_tol(tol)
    k = integrand.denominator_power
    delta = float(integrand.phase_scale)
    even, odd = partial_fraction_coefficients(integrand)
    weight = 2.0 * (sum(abs(e) for e in even) + sum(abs(f) for f in odd))
    inner_tol = max(tol / max(1.0, weight), 1e-13)
    terms, errors, evaluations = [], [], 0
    for channel, coefficients in ((False, even), (True, odd)):
        for m, coefficient in enumerate(coefficients):
            if coefficient == 0.0:
                continue
            value, error, used = _basis(k - m, delta, channel, inner_tol, budget)
            terms.append(2.0 * coefficient * value)
            errors.append(2.0 * abs(coefficient) * error)
            evaluations += used
    return QuadratureResult(value=math.fsum(terms), error_estimate=math.fsum(errors), evaluations=evaluations)
