"""
Integração do fluxo, mapa de Poincaré numérico e medidas da separação das
variedades estável e instável ao longo da homoclínica.
"""
import logging
import math

import numpy as np
from django.conf import settings
from scipy.integrate import solve_ivp

from apps.core.pool_manager import get_pool
from apps.harmonics.utils import perturbation_tables
from apps.melnikov.utils import melnikov_sum
from apps.quadrature.kronrod import adaptive_integrate
from apps.quadrature.models import QuadratureResult
from apps.quadrature.utils import GRID_STEP, phase_inverse
from apps.utils.choices import FlowTime
from apps.utils.exceptions import IntegrationError, InvalidInputError, NoReturnError
from .models import TWO_PI, FlowParams, McGeheeState, Trajectory
from .utils import (
    SQRT2,
    validate_theta0,
    hd_value,
    homoclinic,
    mcgehee_tau_field,
    perturbation_terms,
    reduced_field,
    s_closed_form,
)

logger = logging.getLogger(__name__)

MIN_ODE_TOL = 1e-12
MAX_ODE_TOL = 1e-4
MAX_POINCARE_X = 0.1
RETURN_WINDOW = 3.0 * math.pi
MIN_SPLITTING_T = 15.0
MIN_SPLITTING_EPSILON = 0.3
SHOOTING_T = 3.0
TRAJECTORY_HEADER = ('x', 'y', 's', 'theta', 'H_D')


def validate_ode_tol(tol):
    try:
        tol = float(tol)
    except (TypeError, ValueError):
        raise InvalidInputError(f'tolerance must be a real number, got {tol!r}')
    if not (math.isfinite(tol) and MIN_ODE_TOL <= tol <= MAX_ODE_TOL):
        raise InvalidInputError(f'integrator tolerance must lie in [{MIN_ODE_TOL:g}, {MAX_ODE_TOL:g}], got {tol!r}')
    return tol


def integrate(rhs, state0, t_span, tol=None, events=None, time_variable=FlowTime.T, t_eval=None):
    """
    Integra ``rhs(t, u)`` com o par embutido de Runge-Kutta 5(4), controle
    de erro local com rtol = tol e atol = tol/10, e saída densa.

    Parâmetros:
        rhs (callable): campo de vetores no formato de ``solve_ivp``.
        state0 (array | McGeheeState): estado inicial.
        t_span (tuple): (t0, t1); t1 < t0 integra para trás.
        tol (float | None): em [1e-12, 1e-4]; padrão ``settings.MELNIKOV_ODE_TOL``.
        events (callable | list | None): funções de evento de ``solve_ivp``.

    Retorna:
        Trajectory: passos aceitos, interpolante denso e eventos.

    Raises:
        IntegrationError: o integrador parou antes de t1 (passo pequeno demais).
        ConvergenceRegionError: o estado saiu da região de convergência.
    """
    tol = validate_ode_tol(settings.MELNIKOV_ODE_TOL if tol is None else tol)
    if isinstance(state0, McGeheeState):
        state0 = state0.as_array()
    state0 = np.asarray(state0, dtype=float)
    solution = solve_ivp(
        rhs,
        t_span,
        state0,
        method='RK45',
        rtol=tol,
        atol=tol / 10.0,
        dense_output=True,
        events=events,
        t_eval=t_eval,
    )
    if solution.status == -1:
        raise IntegrationError(f'integration failed at t = {solution.t[-1]!r}: {solution.message}')
    logger.debug('integrated %s over %s in %s steps (%s)', time_variable, t_span, len(solution.t), solution.message)
    event_times = tuple(np.asarray(t) for t in solution.t_events) if events is not None else ()
    event_states = tuple(np.asarray(y) for y in solution.y_events) if events is not None else ()
    return Trajectory(
        FlowTime(time_variable), solution.t, solution.y.T, solution.sol, event_times, event_states
    )


def poincare_numeric(x0, y0, s0, params, tol=None):
    """
    Mapa de Poincaré na seção s = s0 (mod 2π) do sistema reduzido (x, y, s),
    com Θ dado pela integral de Jacobi ``params.jacobi_C``.

    Retorna:
        tuple: (x1, y1, tempo de retorno).

    Raises:
        NoReturnError: a trajetória não voltou à seção em 3π.
    """
    if not (0 <= x0 <= MAX_POINCARE_X):
        raise InvalidInputError(f'x0 must lie in [0, {MAX_POINCARE_X}], got {x0!r}')
    target = s0 + TWO_PI

    def section(_, u):
        return u[2] - target

    section.terminal = True
    section.direction = 1

    trajectory = integrate(reduced_field(params), [x0, y0, s0], (0.0, RETURN_WINDOW), tol, events=section)
    if not len(trajectory.event_times[0]):
        raise NoReturnError(f'no return to s = {s0!r} within t = {RETURN_WINDOW!r} from ({x0!r}, {y0!r})')
    x1, y1, _ = trajectory.event_states[0][0]
    return float(x1), float(y1), float(trajectory.event_times[0][0])


def _derivative_bound(theta0, epsilon, tables):
    """K with |dH_D/dτ| <= K sech⁶τ along the homoclinic."""
    amplitude = SQRT2 / abs(theta0)
    bound = 0.0
    for table in tables:
        j = table.j
        size = sum(abs(a) + abs(b) for _, a, b in table.entries)
        slope = sum(m * (abs(a) + abs(b)) for m, a, b in table.entries)
        bound += epsilon ** (2 * j) * amplitude ** (2 * j + 2) * (
            (j + 1) * size + abs(theta0) * amplitude * slope / SQRT2
        )
    return bound


def _splitting_breakpoints(theta0, epsilon, cutoff, harmonic):
    """
    Painéis com no máximo uma oscilação do harmônico mais alto: o ângulo
    ao longo da homoclínica tem parte cúbica (|Θ̃|³/2)(z + z³/3), z = sinh τ.
    """
    uniform = np.arange(0.0, cutoff, GRID_STEP)
    scale = 0.5 * abs(theta0 / epsilon) ** 3
    top = scale * (math.sinh(cutoff) + math.sinh(cutoff) ** 3 / 3.0)
    step = TWO_PI / harmonic
    phases = np.arange(step, top, step)
    crossings = np.arcsinh(phase_inverse(phases / scale)) if len(phases) else np.zeros(0)
    half = np.unique(np.concatenate([uniform, crossings, [cutoff]]))
    return np.concatenate([-half[:0:-1], half])


def splitting_integrand(s0, theta0, epsilon, tables):
    """dH_D/dτ along the unperturbed homoclinic, with s(τ) in closed form."""

    def integrand(tau):
        x, y = homoclinic(tau, theta0)
        s = s_closed_form(tau, s0, theta0, epsilon)
        y_term, theta_term = perturbation_terms(x, s, epsilon, tables)
        return y * y_term + 0.5 * theta0 * x**4 * theta_term

    return integrand


def splitting_measure(s0, theta0, epsilon, config, T=MIN_SPLITTING_T, tol=None, budget=None):
    """
    Integral de Melnikov ∫_{−T}^{T} dH_D/dτ calculada diretamente sobre a
    homoclínica não perturbada, com o campo truncado na ordem ε⁹.

    O intervalo é cortado onde a cota K·sech⁶τ do integrando garante uma
    cauda menor que tol/4; a cauda entra na estimativa de erro.

    Retorna:
        QuadratureResult: valor, estimativa de erro e número de avaliações.
    """
    validate_theta0(theta0)
    if T < MIN_SPLITTING_T:
        raise InvalidInputError(f'T must be >= {MIN_SPLITTING_T}, got {T!r}')
    if not (MIN_SPLITTING_EPSILON <= epsilon < 1):
        raise InvalidInputError(f'epsilon must lie in [{MIN_SPLITTING_EPSILON}, 1), got {epsilon!r}')
    tol = settings.MELNIKOV_QUAD_TOL if tol is None else tol
    budget = settings.MELNIKOV_QUAD_BUDGET if budget is None else budget
    tables = perturbation_tables(config, 9)
    bound = _derivative_bound(theta0, epsilon, tables)
    if bound == 0:
        return QuadratureResult(0.0, 0.0, 0)

    cutoff = min(T, max(GRID_STEP, math.log(2.0 * bound * 64.0 / (6.0 * 0.25 * tol)) / 6.0))
    tail = 2.0 * bound * 64.0 * math.exp(-6.0 * cutoff) / 6.0
    harmonic = max((m for table in tables for m, _, _ in table.entries), default=1)
    breakpoints = _splitting_breakpoints(theta0, epsilon, cutoff, max(harmonic, 1))
    value, error, evaluations = adaptive_integrate(
        splitting_integrand(s0, theta0, epsilon, tables), breakpoints, 0.5 * tol, budget
    )
    logger.debug(
        'splitting at s0=%s: %s panels, cutoff %.3f, %s evaluations', s0, len(breakpoints) - 1, cutoff, evaluations
    )
    return QuadratureResult(value, error + tail, evaluations)


def splitting_shooting(s0, theta0, epsilon, config, T=SHOOTING_T, tol=None):
    """
    Experimental: integra o sistema em τ completo a partir de ±T sobre a
    homoclínica não perturbada até τ = 0 e devolve
    H_D(ramo instável) − H_D(ramo estável), com o mesmo sinal de
    ``splitting_measure``. Para T grande o ângulo gira rápido demais para
    o integrador.
    """
    validate_theta0(theta0)
    if T <= 0:
        raise InvalidInputError(f'T must be positive, got {T!r}')
    field = mcgehee_tau_field(FlowParams(epsilon, config, 9))
    ends = []
    for start in (-T, T):
        x, y = homoclinic(start, theta0)
        state0 = [x, y, s_closed_form(start, s0, theta0, epsilon), theta0]
        trajectory = integrate(field, state0, (start, 0.0), tol, time_variable=FlowTime.TAU)
        x1, y1, _, theta1 = trajectory.states[-1]
        ends.append(hd_value(x1, y1, theta1))
    unstable, stable = ends
    logger.info('shooting at s0=%s from T=%s: %s', s0, T, unstable - stable)
    return float(unstable - stable)


def splitting_sweep(theta0, epsilon, config, points=8, T=MIN_SPLITTING_T, tol=None, progress=False):
    """
    Separação e previsão ε⁴M4 + ε⁶M6 numa grade uniforme de s0 em [0, 2π).

    Retorna:
        list: linhas (s0, separação, estimativa de erro, previsão).
    """
    if points < 1:
        raise InvalidInputError(f'points must be >= 1, got {points!r}')
    quad_tol = settings.MELNIKOV_QUAD_TOL if tol is None else tol
    grid = [TWO_PI * i / points for i in range(points)]

    def row(s0):
        result = splitting_measure(s0, theta0, epsilon, config, T, quad_tol)
        return s0, result.value, result.error_estimate, melnikov_sum(s0, theta0, epsilon, config, quad_tol)

    rows = get_pool().map(row, grid, progress=progress, desc='splitting')
    logger.info('splitting sweep of %s at %s points (theta0=%s, epsilon=%s)', config.label, points, theta0, epsilon)
    return rows


def trajectory_rows(trajectory, theta0=None):
    """
    Rows (time, x, y, s, theta, H_D) of a trajectory. Duffing trajectories
    have no angle and take Θ = theta0.
    """
    rows = []
    for time, state in zip(trajectory.times, trajectory.states):
        if trajectory.time_variable == FlowTime.DUFFING:
            x, y = state
            s, theta = math.nan, theta0
        else:
            x, y, s, theta = state
        rows.append((float(time), x, y, s, theta, hd_value(x, y, theta)))
    return rows


def trajectory_header(trajectory):
    time_column = 't' if trajectory.time_variable == FlowTime.T else 'tau'
    return (time_column,) + TRAJECTORY_HEADER
