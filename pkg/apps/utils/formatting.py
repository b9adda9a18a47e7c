"""
Deterministic text output: every float is written with 17 significant
digits in lowercase scientific notation, so identical runs produce
byte-identical CSV and JSON.
"""
import csv
import math
from fractions import Fraction
from numbers import Integral, Real

import numpy as np
import orjson

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def format_float(value):
    """
    Formata um número real com 17 dígitos significativos.

    Parâmetros:
        value (float): valor a formatar.

    Retorna:
        str: representação como ``1.2345678901234567e-03``; valores não
        finitos viram ``nan``, ``inf`` ou ``-inf``.
    """
    value = float(value)
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return f'{value:.16e}'


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(key): _jsonable(item) for key, item in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(item) for item in obj]
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, Integral):
        return int(obj)
    if isinstance(obj, (Real, Fraction)):
        value = float(obj)
        if not math.isfinite(value):
            return format_float(value)
        return orjson.Fragment(format_float(value).encode())
    return obj


def dumps_json(payload):
    """Serialize a report to UTF-8 JSON bytes with fixed float formatting."""
    return orjson.dumps(_jsonable(payload), option=JSON_OPTIONS)


def _cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, Integral):
        return str(int(value))
    return format_float(value)


def write_csv(stream, header, rows):
    """
    Write a header row and data rows, comma separated, LF terminated.
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
