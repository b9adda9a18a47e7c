"""
Closed forms of the unperturbed problem and the vector fields of the
McGehee-coordinate flow, in the physical time t and in the rescaled time τ
(dτ/dt = ε³x³/√2).

The order-j perturbing term of the Hamiltonian is
−ε^(2j+3) x^(2j+2) h_j(s), with h_j the harmonic sum of the j-th table.
"""
import math

import numpy as np

from apps.harmonics.utils import harmonic_derivative, harmonic_value
from apps.utils.choices import SignBranch
from apps.utils.exceptions import ConvergenceRegionError, InvalidInputError
from .models import McGeheeState, PolarState

SQRT2 = math.sqrt(2.0)
JACOBI_SERIES_SWITCH = 1e-6


def validate_theta0(theta0):
    if theta0 == 0 or not math.isfinite(theta0):
        raise InvalidInputError(f'theta0 must be finite and nonzero, got {theta0!r}')


def _sech(tau):
    a = np.exp(-np.abs(tau))
    return 2.0 * a / (1.0 + a * a)


def homoclinic(tau, theta0):
    """
    Separatriz da equação de Duffing:
    x = (√2/|Θ0|) sech τ, y = −(√2/|Θ0|) tanh τ sech τ.
    """
    validate_theta0(theta0)
    tau = np.asarray(tau, dtype=float)
    amplitude = SQRT2 / abs(theta0)
    sech = _sech(tau)
    x = amplitude * sech
    y = -amplitude * np.tanh(tau) * sech
    if x.ndim:
        return x, y
    return float(x), float(y)


def duffing_rhs(x, y, theta0):
    return y, x - theta0**2 * x**3


def hd_value(x, y, theta0):
    """H_D = y²/2 − x²/2 + Θ0²x⁴/4."""
    return 0.5 * y * y - 0.5 * x * x + 0.25 * theta0**2 * x**4


def duffing_field(theta0):
    def field(_, u):
        return np.array(duffing_rhs(u[0], u[1], theta0))

    return field


def s_closed_form(tau, s0, theta0, epsilon):
    """
    s(τ) along the homoclinic with s(0) = s0, not reduced mod 2π.
    """
    validate_theta0(theta0)
    sign = SignBranch.of(theta0).sign
    tau = np.asarray(tau, dtype=float)
    value = (
        s0
        - sign * 4.0 * np.arctan(np.tanh(0.5 * tau))
        + sign * theta0**3 / (24.0 * epsilon**3) * (9.0 * np.sinh(tau) + np.sinh(3.0 * tau))
    )
    return value if value.ndim else float(value)


def s_rate(tau, theta0, epsilon):
    """ds/dτ = ±(1/2)ε^(−3)Θ0³cosh³τ ∓ 2 sech τ."""
    validate_theta0(theta0)
    sign = SignBranch.of(theta0).sign
    tau = np.asarray(tau, dtype=float)
    value = sign * 0.5 * theta0**3 * np.cosh(tau) ** 3 / epsilon**3 - sign * 2.0 * _sech(tau)
    return value if value.ndim else float(value)


def perturbation_terms(x, s, epsilon, tables):
    """
    Contribuições da perturbação às equações em τ:

        y' += Σ (j+1) ε^(2j) x^(2j+1) h_j(s)
        Θ' =  −√2 Σ ε^(2j) x^(2j−1) h_j'(s)

    Retorna:
        tuple: (termo de y', Θ'); ambos vetorizados em x e s.
    """
    y_term = 0.0
    theta_term = 0.0
    for table in tables:
        j = table.j
        weight = epsilon ** (2 * j)
        y_term = y_term + (j + 1) * weight * x ** (2 * j + 1) * harmonic_value(table, s)
        theta_term = theta_term - SQRT2 * weight * x ** (2 * j - 1) * harmonic_derivative(table, s)
    return y_term, theta_term


def perturbing_potential(x, s, epsilon, tables):
    """Σ ε^(2j+3) x^(2j+2) h_j(s), the part of the Hamiltonian beyond Kepler."""
    value = 0.0
    for table in tables:
        value = value + epsilon ** (2 * table.j + 3) * x ** (2 * table.j + 2) * harmonic_value(table, s)
    return value


def convergence_limit(params):
    """Largest x for which the Legendre series of the potential converges."""
    radius = params.max_radius
    if radius == 0:
        return math.inf
    return 1.0 / (params.epsilon * math.sqrt(radius))


def _check_region(x, limit):
    if x >= limit:
        raise ConvergenceRegionError(f'x = {x!r} is outside the convergence region x < {limit!r}')


def _t_derivative(x, y, s, theta, epsilon, tables):
    rate = epsilon**3 * x**3 / SQRT2
    y_term, theta_term = perturbation_terms(x, s, epsilon, tables)
    return (
        rate * y,
        rate * (x * (1.0 - theta**2 * x**2) + y_term),
        1.0 - epsilon**3 * theta * x**4,
        rate * theta_term,
    )


def _tau_derivative(x, y, s, theta, epsilon, tables):
    y_term, theta_term = perturbation_terms(x, s, epsilon, tables)
    return (
        y,
        x * (1.0 - theta**2 * x**2) + y_term,
        SQRT2 * (1.0 / epsilon**3 - theta * x**4) / x**3,
        theta_term,
    )


def rhs_mcgehee_t(state, params):
    """
    Campo de vetores no tempo t:

        ẋ = ε³x³y/√2
        ẏ = ε³x⁴(1 − Θ²x²)/√2 + Σ (j+1) ε^(2j+3) x^(2j+4) h_j(s)/√2
        ṡ = 1 − ε³Θx⁴
        Θ̇ = −Σ ε^(2j+3) x^(2j+2) h_j'(s)

    Raises:
        ConvergenceRegionError: x fora da região de convergência.
    """
    _check_region(state.x, convergence_limit(params))
    return _t_derivative(state.x, state.y, state.s, state.theta, params.epsilon, params.tables)


def rhs_mcgehee_tau(state, params):
    """The same flow in τ; the angle equation is singular at x = 0."""
    if state.x <= 0:
        raise InvalidInputError(f'the tau-time flow needs x > 0, got {state.x!r}')
    _check_region(state.x, convergence_limit(params))
    return _tau_derivative(state.x, state.y, state.s, state.theta, params.epsilon, params.tables)


def mcgehee_t_field(params):
    limit = convergence_limit(params)

    def field(_, u):
        _check_region(u[0], limit)
        return np.array(_t_derivative(u[0], u[1], u[2], u[3], params.epsilon, params.tables))

    return field


def mcgehee_tau_field(params):
    limit = convergence_limit(params)

    def field(_, u):
        if u[0] <= 0:
            raise ConvergenceRegionError(f'the tau-time flow reached x = {u[0]!r}')
        _check_region(u[0], limit)
        return np.array(_tau_derivative(u[0], u[1], u[2], u[3], params.epsilon, params.tables))

    return field


def jacobi_value(state, params):
    """
    C = ε³(y² + Θ²x⁴/2 − x²) − V(x, s) − Θ, constante ao longo do fluxo
    truncado na mesma ordem.
    """
    x, y, theta = state.x, state.y, state.theta
    kepler = params.epsilon**3 * (y * y + 0.5 * theta**2 * x**4 - x * x)
    return float(kepler - perturbing_potential(x, state.s, params.epsilon, params.tables) - theta)


def theta_from_jacobi(x, y, C, epsilon, potential=0.0):
    """
    Ramo negativo de Θ(x, y; C):

        Θ = (1 − √(1 + 2ε³x⁴ b)) / (ε³x⁴),   b = C + V + ε³(x² − y²)

    Para ε³x⁴ pequeno usa a série Θ = −b + ub²/2 − u²b³/2 + 5u³b⁴/8,
    u = ε³x⁴, que vale −C em x = y = 0.

    Raises:
        InvalidInputError: radicando negativo.
    """
    u = epsilon**3 * x**4
    b = C + potential + epsilon**3 * (x * x - y * y)
    radicand = 1.0 + 2.0 * u * b
    if radicand < 0:
        raise InvalidInputError(f'negative radicand {radicand!r} at x={x!r}, y={y!r}, C={C!r}')
    if u < JACOBI_SERIES_SWITCH:
        return float(-b + u * b**2 / 2.0 - u**2 * b**3 / 2.0 + 5.0 * u**3 * b**4 / 8.0)
    return float((1.0 - math.sqrt(radicand)) / u)


def reduced_field(params):
    """
    Sistema (x, y, s) com Θ eliminado pela integral de Jacobi, usado pelo
    mapa de Poincaré.
    """
    if params.jacobi_C is None:
        raise InvalidInputError('the reduced flow needs jacobi_C')
    limit = convergence_limit(params)
    epsilon, tables, C = params.epsilon, params.tables, params.jacobi_C

    def field(_, u):
        x, y, s = u
        _check_region(x, limit)
        theta = theta_from_jacobi(x, y, C, epsilon, perturbing_potential(x, s, epsilon, tables))
        dx, dy, ds, _ = _t_derivative(x, y, s, theta, epsilon, tables)
        return np.array([dx, dy, ds])

    return field


def polar_to_mcgehee(state, t=0.0):
    """r = x^(−2), R = −√2·y, s = t − θ."""
    return McGeheeState(state.r**-0.5, -state.R / SQRT2, t - state.theta_angle, state.Theta)


def mcgehee_to_polar(state, t=0.0):
    if state.x <= 0:
        raise InvalidInputError(f'x = 0 is the point at infinity, got {state!r}')
    return PolarState(state.x**-2, t - state.s, -SQRT2 * state.y, state.theta)
