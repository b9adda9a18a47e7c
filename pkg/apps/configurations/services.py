import logging
import math

from apps.utils.exceptions import InvalidInputError
from . import builders
from .serializers import CentralConfigurationSerializer

logger = logging.getLogger(__name__)

# admissible open interval of r = a/b for the rhombus, shrunk away from the ends
RHOMBOID_RATIO_MARGIN = 1e-6

BUILDERS = {
    'rp3bp': (builders.build_rp3bp, (float,)),
    'equilateral': (builders.build_equilateral, (float, float)),
    'rhomboid': (builders.build_rhomboid, (float, float)),
    'collinear-equal': (builders.solve_collinear_equal, (int,)),
    'collinear-equidistant': (builders.solve_collinear_equidistant, (int,)),
    'polygon': (builders.build_polygon, (int,)),
}


def _flatten_errors(errors, prefix=''):
    if isinstance(errors, dict):
        for key, value in errors.items():
            name = key if key != 'non_field_errors' else ''
            yield from _flatten_errors(value, f'{prefix}.{name}'.strip('.') if name else prefix)
    elif isinstance(errors, list):
        for index, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                yield from _flatten_errors(value, f'{prefix}[{index}]')
            else:
                yield f'{prefix}: {value}' if prefix else str(value)
    else:
        yield f'{prefix}: {errors}' if prefix else str(errors)


def configuration_from_payload(payload):
    """
    Build a configuration from its JSON payload.

    Raises:
        InvalidInputError: with every validation message joined in one line.
    """
    serializer = CentralConfigurationSerializer(data=payload)
    if not serializer.is_valid():
        raise InvalidInputError('; '.join(_flatten_errors(serializer.errors)))
    return serializer.save()


def configuration_to_payload(config):
    return CentralConfigurationSerializer(config).data


def build_named(name, params, normalize=False):
    """
    Constrói uma configuração a partir do nome do builder e dos parâmetros
    em texto (vindos da linha de comando).
    """
    try:
        builder, casts = BUILDERS[name]
    except KeyError:
        raise InvalidInputError(f'unknown builder {name!r}; choose from {", ".join(BUILDERS)}')
    if len(params) != len(casts):
        raise InvalidInputError(f'builder {name!r} takes {len(casts)} parameter(s), got {len(params)}')
    try:
        values = [cast(param) for cast, param in zip(casts, params)]
    except ValueError as e:
        raise InvalidInputError(f'bad parameter for {name!r}: {e}')
    if name == 'polygon':
        return builder(*values, normalize=normalize)
    return builder(*values)


def rhomboid_c2_roots(grid=256):
    """
    Ratios r = a/b of the admissible rhombi where c2 vanishes.

    Scans c2(build_rhomboid(r, 1)) on (1/√3, √3) and refines sign changes
    with Brent's method.
    """
    from apps.harmonics.utils import c_coeffs
    from apps.quadrature.utils import find_zeros

    lo = 1.0 / math.sqrt(3.0) + RHOMBOID_RATIO_MARGIN
    hi = math.sqrt(3.0) - RHOMBOID_RATIO_MARGIN
    roots = find_zeros(lambda r: c_coeffs(builders.build_rhomboid(r, 1.0))[1], lo, hi, grid)
    logger.info('rhomboid c2 roots: %s', roots)
    return roots
