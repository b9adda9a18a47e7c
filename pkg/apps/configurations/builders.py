"""
Constructors for the central configurations used throughout the project:
two-body (restricted three-body problem), Lagrange triangle, rhombus,
collinear chains and regular polygons.
"""
import logging
import math

import numpy as np

from apps.utils.exceptions import (
    ConvergenceError,
    InvalidInputError,
    NonPositiveMassError,
    SingularSystemError,
)
from .models import CentralConfiguration
from .utils import normalize_omega

logger = logging.getLogger(__name__)

NEWTON_MAX_ITERATIONS = 200
NEWTON_TOLERANCE = 1e-12
NEWTON_MAX_HALVINGS = 40
LINEAR_RESIDUAL_TOLERANCE = 1e-10
# rhombus masses closer than this to 0 or 1/2 are the degenerate boundary
RHOMBOID_MASS_MARGIN = 1e-12

# integer coefficients, highest power first, of the homogeneous polynomial in
# r = a/b whose admissible real roots make c2 vanish away from the square
RHOMBOID_C2_POLYNOMIAL = (1, 2, 6, 10, 17, 22, -36, -100, -36, 22, 17, 10, 6, 2, 1)


def build_rp3bp(mu):
    """
    Two primaries at unit separation: masses (μ, 1 − μ) at (1 − μ, 0) and (−μ, 0).
    """
    if not 0 < mu <= 0.5:
        raise InvalidInputError(f'mu must lie in (0, 1/2], got {mu!r}')
    return CentralConfiguration.from_arrays(
        [mu, 1.0 - mu],
        [[1.0 - mu, 0.0], [-mu, 0.0]],
        label=f'rp3bp(mu={mu!r})',
    )


def build_equilateral(m1, m2):
    """
    Lagrange configuration of three primaries with unit sides.

    Args:
        m1 (float): first mass, > 0.
        m2 (float): second mass, > 0, with m1 + m2 < 1.

    Returns:
        CentralConfiguration: vertices with m3 = 1 − m1 − m2.
    """
    if not (m1 > 0 and m2 > 0 and m1 + m2 < 1):
        raise InvalidInputError(f'need m1, m2 > 0 and m1 + m2 < 1, got ({m1!r}, {m2!r})')
    half_root3 = math.sqrt(3.0) / 2.0
    positions = [
        [0.5 * (1.0 - m1 - 2.0 * m2), half_root3 * (1.0 - m1)],
        [0.5 * (2.0 - m1 - 2.0 * m2), -half_root3 * m1],
        [-0.5 * (m1 + 2.0 * m2), -half_root3 * m1],
    ]
    return CentralConfiguration.from_arrays(
        [m1, m2, 1.0 - m1 - m2], positions, label=f'equilateral(m1={m1!r}, m2={m2!r})'
    )


def rhomboid_parameters(a, b):
    """
    Half-diagonals (x, y) and mass μ of the central rhombus labelled by (a, b).

    Raises:
        InvalidInputError: outside 0 < b < √3·a < 3·b, when a radicand
        turns negative or when μ rounds onto the boundary 0 or 1/2.
    """
    if not (a > 0 and b > 0):
        raise InvalidInputError(f'a and b must be positive, got ({a!r}, {b!r})')
    root3_a = math.sqrt(3.0) * a
    if not (b < root3_a < 3.0 * b):
        raise InvalidInputError(f'need 0 < b < sqrt(3) a < 3 b, got a={a!r}, b={b!r}')
    s2 = a * a + b * b
    s3 = s2 ** 1.5
    a3, b3 = a**3, b**3
    denominator = 16.0 * a3 * b3 - (a3 + b3) * s3
    numerator = 64.0 * a3 * b3 - s2**3
    if denominator == 0.0:
        raise InvalidInputError(f'singular rhomboid parameters a={a!r}, b={b!r}')
    ratio = numerator / denominator
    if ratio <= 0:
        raise InvalidInputError(f'negative radicand for a={a!r}, b={b!r}')
    cube_root = ratio ** (1.0 / 3.0)
    x = a * cube_root / (2.0 * math.sqrt(s2))
    y = b * cube_root / (2.0 * math.sqrt(s2))
    mu = a3 * (8.0 * b3 - s3) / (2.0 * denominator)
    if not RHOMBOID_MASS_MARGIN < mu < 0.5 - RHOMBOID_MASS_MARGIN:
        raise InvalidInputError(f'mu={mu!r} outside (0, 1/2) for a={a!r}, b={b!r}')
    return x, y, mu


def build_rhomboid(a, b):
    x, y, mu = rhomboid_parameters(a, b)
    return CentralConfiguration.from_arrays(
        [mu, 0.5 - mu, mu, 0.5 - mu],
        [[-x, 0.0], [0.0, y], [x, 0.0], [0.0, -y]],
        label=f'rhomboid(a={a!r}, b={b!r})',
    )


def rhomboid_c2_polynomial():
    return RHOMBOID_C2_POLYNOMIAL


def rhomboid_polynomial_roots():
    """
    Positive real roots of the degree-14 polynomial, ascending.
    """
    roots = np.roots(np.array(RHOMBOID_C2_POLYNOMIAL, dtype=float))
    real = roots[np.abs(roots.imag) < 1e-9].real
    return sorted(float(r) for r in real if r > 0)


def _collinear_residual(x, mass):
    deltas = x[None, :] - x[:, None]
    distances = np.abs(deltas)
    np.fill_diagonal(distances, np.inf)
    return x + mass * np.sum(np.sign(deltas) / distances**2, axis=1), distances


def solve_collinear_equal(n):
    """
    Collinear central configuration of n equal masses 1/n.

    Damped Newton iteration from equispaced points on [-1, 1]; each step is
    halved until the residual norm decreases.

    Raises:
        ConvergenceError: no convergence after ``NEWTON_MAX_ITERATIONS``.
    """
    if n < 2:
        raise InvalidInputError(f'n must be >= 2, got {n!r}')
    mass = 1.0 / n
    x = np.linspace(-1.0, 1.0, n)
    residual, distances = _collinear_residual(x, mass)
    norm = float(np.linalg.norm(residual))
    for iteration in range(NEWTON_MAX_ITERATIONS):
        if norm <= NEWTON_TOLERANCE:
            break
        coupling = 2.0 * mass / distances**3
        jacobian = -coupling
        np.fill_diagonal(jacobian, 1.0 + coupling.sum(axis=1))
        step = np.linalg.solve(jacobian, -residual)
        damping = 1.0
        for _ in range(NEWTON_MAX_HALVINGS):
            candidate = x + damping * step
            if np.all(np.diff(candidate) > 0):
                trial, trial_distances = _collinear_residual(candidate, mass)
                trial_norm = float(np.linalg.norm(trial))
                if trial_norm < norm:
                    break
            damping *= 0.5
        else:
            raise ConvergenceError(f'collinear Newton stalled at iteration {iteration} (n={n})')
        x, residual, distances, norm = candidate, trial, trial_distances, trial_norm
        logger.debug('collinear n=%s iteration %s damping %s residual %s', n, iteration, damping, norm)
    if norm > NEWTON_TOLERANCE:
        raise ConvergenceError(f'collinear Newton did not converge for n={n}: residual {norm:.3e}')
    x = 0.5 * (x - x[::-1])
    positions = np.column_stack([x, np.zeros(n)])
    return CentralConfiguration.from_arrays(np.full(n, mass), positions, label=f'collinear-equal(n={n})')


def solve_collinear_equidistant(n):
    """
    Collinear central configuration with equally spaced primaries.

    With positions h·u_k (u_k = k − (n − 1)/2) the centrality equations read
    Σ_j m_j g_kj + h³ u_k = 0 with g_kj = (u_j − u_k)/|u_j − u_k|³, which is
    linear in (m_1, ..., m_n, h³); adding Σ m_k = 1 closes the system. For odd
    n the system has a one-parameter family of solutions and the minimum-norm
    one is returned.

    Raises:
        SingularSystemError: no consistent solution.
        NonPositiveMassError: a mass or h³ is not positive.
    """
    if n < 3:
        raise InvalidInputError(f'n must be >= 3, got {n!r}')
    u = np.arange(n, dtype=float) - 0.5 * (n - 1)
    deltas = u[None, :] - u[:, None]
    distances = np.abs(deltas)
    np.fill_diagonal(distances, np.inf)
    system = np.zeros((n + 1, n + 1))
    system[:n, :n] = np.sign(deltas) / distances**2
    system[:n, n] = u
    system[n, :n] = 1.0
    rhs = np.zeros(n + 1)
    rhs[n] = 1.0
    solution, _, rank, _ = np.linalg.lstsq(system, rhs, rcond=None)
    residual = float(np.linalg.norm(system @ solution - rhs))
    logger.debug('equidistant n=%s rank %s residual %s', n, rank, residual)
    if residual > LINEAR_RESIDUAL_TOLERANCE:
        raise SingularSystemError(f'equidistant system inconsistent for n={n}: residual {residual:.3e}')
    masses, cube = solution[:n], solution[n]
    if np.any(masses <= 0) or cube <= 0:
        raise NonPositiveMassError(f'equidistant solution for n={n} has non-positive entries')
    masses = 0.5 * (masses + masses[::-1])
    spacing = cube ** (1.0 / 3.0)
    positions = np.column_stack([spacing * u, np.zeros(n)])
    return CentralConfiguration.from_arrays(masses, positions, label=f'collinear-equidistant(n={n})')


def build_polygon(N, normalize=False):
    """
    Regular (N − 1)-gon on the unit circle with equal masses 1/(N − 1).

    With ``normalize=True`` the radius is rescaled so that the centrality
    equations hold with unit angular velocity.
    """
    if N < 4:
        raise InvalidInputError(f'N must be >= 4, got {N!r}')
    count = N - 1
    angles = 2.0 * np.pi * np.arange(count) / count
    positions = np.column_stack([np.cos(angles), np.sin(angles)])
    config = CentralConfiguration.from_arrays(
        np.full(count, 1.0 / count), positions, label=f'polygon(N={N})'
    )
    if normalize:
        config = normalize_omega(config)
    return config


def polygon_potential_constants(N):
    """
    Constantes Γ do potencial do polígono regular na ordem j = N − 1.

    Retorna:
        tuple: (V, W) com W = 2Γ(N − 1/2)/(√π Γ(N)) e
        V = (1 + (−1)^(N−1)) Γ(N/2)² / (2π Γ((N + 1)/2)²).
    """
    if N < 4:
        raise InvalidInputError(f'N must be >= 4, got {N!r}')
    j = N - 1
    w = 2.0 * math.exp(math.lgamma(N - 0.5) - math.lgamma(N)) / math.sqrt(math.pi)
    v = 0.0
    if j % 2 == 0:
        v = 2.0 * math.exp(2.0 * (math.lgamma(j / 2.0 + 0.5) - math.lgamma(j / 2.0 + 1.0))) / (2.0 * math.pi)
    return v, w

