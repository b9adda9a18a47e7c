"""
Direct evaluation of cubic-phase integrals on the real line.

The line is cut at ±Z, with Z and the number of integration-by-parts tail
terms chosen together so that the analytic remainder bound stays below
tol/4 at the smallest expected panel count. Panels end at the phase roots
δ p(z) = nπ, so every Kronrod panel sees at most half an oscillation.
"""
import logging
import math
import sys

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from apps.core.pool_manager import get_pool
from apps.utils.exceptions import InvalidInputError, QuadratureBudgetError
from .kronrod import EVALUATIONS_PER_PANEL, adaptive_integrate
from .models import QuadratureResult

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_BUDGET = 10_000_000
MIN_TOL = 1e-13
MAX_TOL = 1e-3
# above this |δ| the direct pipeline refuses and the asymptotic estimates apply
MAX_PHASE_SCALE = 1e4
MAX_TAIL_TERMS = 8
MAX_CUTOFF = 1e15
GRID_STEP = 0.25
GRID_HALF_WIDTH = 2.0
ZERO_XTOL = 1e-10
# F62 is ~1e-9 near its low root; looser quadrature moves that root by 1e-5
ROOT_TOL = MIN_TOL

WEIGHT = np.array([1.0, 0.0, 1.0])


def validate_tol(tol):
    """Returns ``tol`` as float, or raises when it is outside [1e-13, 1e-3]."""
    try:
        tol = float(tol)
    except (TypeError, ValueError):
        raise InvalidInputError(f'tolerance must be a real number, got {tol!r}')
    if not (math.isfinite(tol) and MIN_TOL <= tol <= MAX_TOL):
        raise InvalidInputError(f'tolerance must lie in [{MIN_TOL:g}, {MAX_TOL:g}], got {tol!r}')
    return tol


def phase(z):
    return z + z**3 / 3.0


def phase_inverse(v):
    """
    Real root of z + z³/3 = v (Cardano): z = A − 1/A with
    A = cbrt(3|v|/2 + sqrt(9v²/4 + 1)), extended as an odd function.
    """
    v = np.asarray(v, dtype=float)
    magnitude = np.abs(v)
    a = np.cbrt(1.5 * magnitude + np.hypot(1.5 * magnitude, 1.0))
    root = np.sign(v) * (a - 1.0 / a)
    return root if root.ndim else float(root)


def ibp_sequence(integrand, terms):
    """
    Sequência (N_j, a_j) da integração por partes do termo de cauda.

    Com h_j = N_j/w^{a_j} e w = 1 + z² = p'(z):

        ∫_Z^∞ h_j e^{iδp} dz = −u_j(Z) e^{iδp(Z)} + ∫_Z^∞ h_{j+1} e^{iδp} dz,
        u_j = N_j / (iδ w^{a_j + 1}),
        N_{j+1} = i (N_j' w − 2(a_j + 1) z N_j) / δ,   a_{j+1} = a_j + 2.

    Parâmetros:
        integrand (CubicPhaseIntegrand): integrando de partida (j = 0).
        terms (int): número de passos de integração por partes.

    Retorna:
        list: ``terms + 1`` pares (coeficientes complexos de N_j, a_j).
    """
    delta = integrand.phase_scale
    numerator = integrand.complex_numerator()
    power = integrand.denominator_power
    sequence = [(numerator, power)]
    for _ in range(terms):
        shifted = P.polysub(P.polymul(P.polyder(numerator), WEIGHT), 2 * (power + 1) * P.polymulx(numerator))
        numerator, power = 1j * shifted / delta, power + 2
        sequence.append((numerator, power))
    return sequence


def _remainder_bound(numerator, power, cutoff):
    moduli = np.abs(numerator)
    exponents = np.arange(len(moduli))
    decay = 2 * power - exponents - 1
    return 2.0 * float(np.sum(moduli * float(cutoff) ** (exponents - 2.0 * power + 1) / decay))


def _ratio(numerator, power, z):
    # Σ n_i z^i / (1 + z²)^power for |z| >= 1, in powers of 1/z
    t = 1.0 / z
    degree = len(numerator) - 1
    return z ** (degree - 2 * power) * P.polyval(t, numerator[::-1]) / (1.0 + t * t) ** power


def tail_bound(integrand, cutoff, terms=0):
    """
    Bound on both tails |z| > cutoff of the remainder left after ``terms``
    integration-by-parts corrections: 2 Σ |n_i| Z^{i − 2a + 1}/(2a − i − 1).
    """
    numerator, power = ibp_sequence(integrand, terms)[-1]
    return _remainder_bound(numerator, power, cutoff)


def tail_correction(integrand, cutoff, terms):
    """Sum of the boundary terms u_j(±Z) e^{iδp(±Z)}, j < terms (real part)."""
    if terms == 0:
        return 0.0
    delta = integrand.phase_scale
    rotation = np.exp(1j * delta * phase(cutoff))
    total = 0j
    for numerator, power in ibp_sequence(integrand, terms)[:-1]:
        upper = _ratio(numerator, power + 1, cutoff) / (1j * delta)
        lower = _ratio(numerator, power + 1, -cutoff) / (1j * delta)
        total += lower * np.conj(rotation) - upper * rotation
    return float(total.real)


def log_floor(value):
    """log(value) with underflowed bounds clamped to the smallest normal float."""
    return math.log(max(value, sys.float_info.min))


def _solve_cutoff(numerator, power, target, cap):
    if _remainder_bound(numerator, power, 1.0) <= target:
        return 1.0
    at_cap = _remainder_bound(numerator, power, cap)
    if not math.isfinite(at_cap) or at_cap > target:
        return None

    def excess(t):
        return log_floor(_remainder_bound(numerator, power, math.exp(t))) - math.log(target)

    cutoff = math.exp(brentq(excess, 0.0, math.log(cap), xtol=1e-12)) * (1.0 + 1e-9)
    while _remainder_bound(numerator, power, cutoff) > target:
        cutoff *= 1.0 + 1e-6
    return cutoff


def expected_panels(delta, cutoff):
    return 2.0 * abs(delta) * phase(cutoff) / math.pi + 2.0 * math.log2(max(cutoff, 1.0)) + 2.0 * GRID_HALF_WIDTH / GRID_STEP


def choose_truncation(integrand, tol):
    """
    Escolhe (termos de cauda, Z) que minimizam o número esperado de painéis
    mantendo o limite analítico do resto abaixo de tol/4.

    Raises:
        QuadratureBudgetError: nenhum número de termos atinge tol/4 com
        Z <= 1e15.
    """
    target = tol / 4.0
    delta = integrand.phase_scale
    # the integrand itself must not overflow at ±Z
    cap = min(MAX_CUTOFF, 10.0 ** (280.0 / (2 * integrand.denominator_power)))
    max_terms = MAX_TAIL_TERMS if delta != 0.0 else 0
    best = None
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        for terms, (numerator, power) in enumerate(ibp_sequence(integrand, max_terms)):
            if not np.all(np.isfinite(numerator)):
                break
            cutoff = _solve_cutoff(numerator, power, target, cap)
            if cutoff is None:
                continue
            cost = expected_panels(delta, cutoff)
            if best is None or cost < best[0]:
                best = (cost, terms, cutoff)
    if best is None:
        raise QuadratureBudgetError(f'no tail truncation reaches {target:.3e} with Z <= {cap:.3e}')
    return best[1], best[2]


def panel_breakpoints(delta, cutoff):
    """
    Bordas dos painéis em [−Z, Z]: raízes da fase, pontos ±2^i e uma
    grade de passo 0.25 em [−2, 2].
    """
    points = [np.array([-cutoff, cutoff])]
    grid = np.arange(-GRID_HALF_WIDTH, GRID_HALF_WIDTH + GRID_STEP / 2, GRID_STEP)
    points.append(grid[np.abs(grid) < cutoff])
    if cutoff > 2.0:
        geometric = 2.0 ** np.arange(1, math.ceil(math.log2(cutoff)) + 1)
        geometric = geometric[geometric < cutoff]
        points += [geometric, -geometric]
    if delta != 0.0:
        count = math.floor(abs(delta) * phase(cutoff) / math.pi)
        roots = phase_inverse(np.arange(1, count + 1) * math.pi / abs(delta))
        roots = np.atleast_1d(roots)
        roots = roots[roots < cutoff]
        points += [roots, -roots]
    return np.unique(np.concatenate(points))


def eval_oscillatory(integrand, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET, truncation=None):
    """
    Integral sobre a reta real de [C cos(δp) + S sin(δp)]/(1+z²)^k.

    Parâmetros:
        integrand (CubicPhaseIntegrand): integrando.
        tol (float): tolerância absoluta em [1e-13, 1e-3].
        budget (int): número máximo de avaliações do integrando.
        truncation (tuple | None): (termos de cauda, Z) para fixar o corte;
        por padrão vem de ``choose_truncation``.

    Retorna:
        QuadratureResult: valor, estimativa de erro (painéis + resto da
        cauda) e avaliações usadas.

    Raises:
        InvalidInputError: tolerância fora do intervalo.
        QuadratureBudgetError: |δ| > 1e4 ou orçamento insuficiente.
    """
    tol = validate_tol(tol)
    delta = integrand.phase_scale
    if abs(delta) > MAX_PHASE_SCALE:
        raise QuadratureBudgetError(
            f'phase scale {delta:.6g} exceeds {MAX_PHASE_SCALE:g}; use the asymptotic estimates instead'
        )
    terms, cutoff = truncation if truncation is not None else choose_truncation(integrand, tol)
    estimated = EVALUATIONS_PER_PANEL * expected_panels(delta, cutoff)
    if estimated > budget:
        raise QuadratureBudgetError(f'about {estimated:.3g} evaluations needed, budget is {budget}')
    breakpoints = panel_breakpoints(delta, cutoff)
    value, panel_error, evaluations = adaptive_integrate(integrand, breakpoints, tol / 2.0, budget)
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        tail = tail_correction(integrand, cutoff, terms)
        remainder = tail_bound(integrand, cutoff, terms)
    logger.debug(
        '%s: delta=%.6g Z=%.6g terms=%s panels=%s evaluations=%s',
        integrand.label or 'integrand',
        delta,
        cutoff,
        terms,
        len(breakpoints) - 1,
        evaluations,
    )
    return QuadratureResult(value=value + tail, error_estimate=panel_error + remainder, evaluations=evaluations)


def find_zeros(f, lo, hi, grid=64):
    """
    Sign changes of ``f`` on a uniform grid of ``grid + 1`` points, each one
    refined by Brent's method to 1e-10. Grid points where ``f`` is exactly
    zero are returned as they are.
    """
    if not lo < hi:
        raise InvalidInputError(f'need lo < hi, got [{lo!r}, {hi!r}]')
    if grid < 8:
        raise InvalidInputError(f'grid must be >= 8, got {grid!r}')
    xs = np.linspace(lo, hi, grid + 1)
    values = get_pool().map(f, [float(x) for x in xs])
    roots = []
    for i, value in enumerate(values):
        if value == 0.0:
            roots.append(float(xs[i]))
        elif i < grid and values[i + 1] != 0.0 and (value > 0.0) != (values[i + 1] > 0.0):
            roots.append(float(brentq(f, xs[i], xs[i + 1], xtol=ZERO_XTOL)))
    return sorted(roots)
