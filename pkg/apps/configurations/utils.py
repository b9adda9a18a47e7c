import logging

import numpy as np

from apps.utils.exceptions import (
    DegenerateConfigurationError,
    InvalidInputError,
    NotCentralError,
)
from .models import MIN_SEPARATION, CentralConfiguration, CentralityReport

logger = logging.getLogger(__name__)

# relative least-squares residual above which no common multiplier exists
NOT_CENTRAL_TOLERANCE = 1e-6


def gravitational_terms(masses, positions):
    """
    Computes, for every primary k, the sum over j != k of
    m_j (a_j - a_k) / |a_j - a_k|^3.

    Args:
        masses (np.ndarray): shape (n,).
        positions (np.ndarray): shape (n, 2).

    Returns:
        np.ndarray: shape (n, 2).
    """
    deltas = positions[None, :, :] - positions[:, None, :]
    distances = np.hypot(deltas[..., 0], deltas[..., 1])
    np.fill_diagonal(distances, np.inf)
    if distances.min() <= MIN_SEPARATION:
        raise DegenerateConfigurationError(
            f'coincident primaries: minimum separation {distances.min()!r}'
        )
    weights = masses[None, :] / distances**3
    return np.einsum('kj,kjc->kc', weights, deltas)


def lambda_fit(config):
    """
    Least-squares multiplier λ of F_k + λ a_k = 0 and its relative residual.

    Bodies at the origin contribute nothing to the denominator.
    """
    positions = config.positions
    forces = gravitational_terms(config.masses, positions)
    denominator = float(np.sum(positions * positions))
    if denominator == 0.0:
        raise NotCentralError('every primary sits at the origin')
    lam = -float(np.sum(forces * positions)) / denominator
    scale = float(np.linalg.norm(forces))
    residual = float(np.linalg.norm(forces + lam * positions))
    relative = residual / scale if scale > 0 else residual
    return lam, relative


def cc_residual(config):
    """
    Residuals a_k + Σ_{j≠k} m_j (a_j − a_k)/|a_j − a_k|³ of the centrality
    equations with unit angular velocity.

    Returns:
        CentralityReport: residuos por corpo, norma máxima e o ajuste de λ
        quando existe.
    """
    positions = config.positions
    residuals = positions + gravitational_terms(config.masses, positions)
    norms = np.hypot(residuals[:, 0], residuals[:, 1])
    try:
        lam, fit = lambda_fit(config)
    except NotCentralError:
        lam, fit = None, None
    return CentralityReport(
        residuals=tuple((float(rx), float(ry)) for rx, ry in residuals),
        max_norm=float(norms.max()),
        lambda_value=lam,
        fit_residual=fit,
    )


def lambda_of(config):
    """
    Common multiplier λ such that Σ_{j≠k} m_j (a_j − a_k)/|a_j − a_k|³ = −λ a_k.

    Raises:
        NotCentralError: when the least-squares fit leaves a relative
        residual above ``NOT_CENTRAL_TOLERANCE``.
    """
    lam, fit = lambda_fit(config)
    logger.debug('lambda fit for %s: lambda=%s residual=%s', config.label, lam, fit)
    if fit > NOT_CENTRAL_TOLERANCE:
        raise NotCentralError(
            f'{config.label or "configuration"} is not central: relative fit residual {fit:.3e}'
        )
    return lam


def scale_configuration(config, c):
    if not c > 0:
        raise InvalidInputError(f'scale factor must be positive, got {c!r}')
    return CentralConfiguration.from_arrays(config.masses, config.positions * c, label=config.label)


def rotate_configuration(config, phi):
    cos_phi, sin_phi = np.cos(phi), np.sin(phi)
    rotation = np.array([[cos_phi, -sin_phi], [sin_phi, cos_phi]])
    positions = config.positions @ rotation.T
    return CentralConfiguration.from_arrays(config.masses, positions, label=config.label)


def normalize_omega(config):
    """
    Rescales positions by λ^(1/3) so that the centrality equations hold
    with λ = 1. Masses and the barycenter are untouched.
    """
    lam = lambda_of(config)
    if lam <= 0:
        raise NotCentralError(f'non-positive multiplier {lam!r}')
    factor = lam ** (1.0 / 3.0)
    if factor == 1.0:
        return config
    return scale_configuration(config, factor)

