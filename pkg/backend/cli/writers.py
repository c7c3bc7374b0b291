"""
CSV and JSON output for command results.

Rows are dicts with a fixed key order. Complex values arrive either as
Python complex numbers or in their wire form {"re": .., "im": ..} (the
shape Celery hands back); both are written the same way.
"""

import csv
import io
import json
import logging
import math

from core.exceptions import IoFailure, NonFiniteValue

logger = logging.getLogger(__name__)


def encode_complex(value: complex) -> dict:
    value = complex(value)
    return {'re': value.real, 'im': value.imag}


def _as_complex(value):
    if isinstance(value, complex):
        return value
    if isinstance(value, dict) and set(value) == {'re', 'im'}:
        return complex(value['re'], value['im'])
    return None


def _check_finite(name, value):
    if isinstance(value, float) and not math.isfinite(value):
        raise NonFiniteValue(f"Column {name} holds a non-finite value ({value})")


def _format_float(value: float) -> str:
    return format(value, '.17g')


def _csv_cell(name, value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        _check_finite(name, value)
        return _format_float(value)
    if isinstance(value, (list, tuple)):
        return ';'.join(_csv_cell(name, item) for item in value)
    return str(value)


def _csv_columns(columns, first_row):
    header = []
    for name in columns:
        if first_row is not None and _as_complex(first_row.get(name)) is not None:
            header.extend([f"{name}_re", f"{name}_im"])
        else:
            header.append(name)
    return header


def to_csv(rows, columns) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\r\n')
    writer.writerow(_csv_columns(columns, rows[0] if rows else None))
    for row in rows:
        cells = []
        for name in columns:
            value = row.get(name)
            number = _as_complex(value)
            if number is not None:
                cells.extend([_csv_cell(f"{name}_re", number.real), _csv_cell(f"{name}_im", number.imag)])
            else:
                cells.append(_csv_cell(name, value))
        writer.writerow(cells)
    return buffer.getvalue()


def _json_value(name, value):
    number = _as_complex(value)
    if number is not None:
        _check_finite(name, number.real)
        _check_finite(name, number.imag)
        return encode_complex(number)
    if isinstance(value, (list, tuple)):
        return [_json_value(name, item) for item in value]
    _check_finite(name, value)
    return value


def to_json(rows, columns) -> str:
    payload = [{name: _json_value(name, row.get(name)) for name in columns} for row in rows]
    return json.dumps(payload, indent=2, allow_nan=False) + '\n'


def serialize(rows, fmt: str, columns=None) -> str:
    """Rows in sweep order; `columns` fixes the key order and the header of an empty CSV."""
    rows = list(rows)
    if columns is None:
        columns = list(rows[0]) if rows else []
    if fmt == 'csv':
        return to_csv(rows, columns)
    if fmt == 'json':
        return to_json(rows, columns)
    raise ValueError(f"Unknown format {fmt!r}")


def write_output(text: str, destination=None, stream=None):
    """Write to `destination` (a path) or, when it is None, to `stream`."""
    if destination is None:
        stream.write(text)
        return
    try:
        with open(destination, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    except OSError as e:
        raise IoFailure(f"Could not write {destination}: {e}") from e
    logger.info(f"Wrote {destination}")
