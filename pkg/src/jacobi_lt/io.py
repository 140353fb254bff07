"""Operator JSON input and deterministic JSON/CSV report output.

Operator schema::

    {"support_lo": int, "a": [[re, im], ...], "b": [[re, im], ...], "c": [[re, im], ...]}

``a`` and ``c`` may be omitted (all ones).  Complex numbers are written as
``[re, im]`` pairs and floats with 17 significant digits.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .operator import JacobiOperator


class InputError(ValueError):
    """Malformed operator or family description."""


def _complex_list(obj, name):
    if not isinstance(obj, list):
        raise InputError(f"field {name!r}: expected a list of [re, im] pairs")
    out = []
    for i, item in enumerate(obj):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            out.append(complex(item))
        elif (isinstance(item, list) and len(item) == 2
              and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            out.append(complex(item[0], item[1]))
        else:
            raise InputError(f"field {name!r}[{i}]: expected [re, im], got {item!r}")
    return out


def operator_from_dict(data):
    if not isinstance(data, dict):
        raise InputError("operator must be a JSON object")
    if "b" not in data:
        raise InputError("field 'b': missing")
    lo = data.get("support_lo", 0)
    if not isinstance(lo, int) or isinstance(lo, bool):
        raise InputError(f"field 'support_lo': expected an integer, got {lo!r}")
    b = _complex_list(data["b"], "b")
    a = _complex_list(data["a"], "a") if "a" in data else [1] * len(b)
    c = _complex_list(data["c"], "c") if "c" in data else [1] * len(b)
    if not len(a) == len(b) == len(c):
        raise InputError(f"fields 'a', 'b', 'c' must have equal length, got {len(a)}, {len(b)}, {len(c)}")
    try:
        return JacobiOperator(lo, a, b, c)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def operator_to_dict(op):
    return {
        "support_lo": op.support_lo,
        "a": [[v.real, v.imag] for v in op.a],
        "b": [[v.real, v.imag] for v in op.b],
        "c": [[v.real, v.imag] for v in op.c],
    }


def load_json(path):
    """Parse a JSON file, turning syntax errors into `InputError` with line and column."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_operator(path):
    data = load_json(path)
    try:
        return operator_from_dict(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def format_float(x):
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def to_plain(obj):
    """Convert complex numbers and numpy scalars/arrays to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj, indent=2):
    """Deterministic JSON text with floats at 17 significant digits."""
    out = io.StringIO()
    _write(to_plain(obj), out, indent, 0)
    out.write("\n")
    return out.getvalue()


def _write(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.write(pad + json.dumps(k) + ": ")
            _write(v, out, indent, level + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(end + "}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj) and len(obj) <= 2:
            out.write("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        if not obj:
            out.write("[]")
            return
        out.write("[\n")
        for i, v in enumerate(obj):
            out.write(pad)
            _write(v, out, indent, level + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(end + "]")
    else:
        out.write(_scalar(obj))


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    return json.dumps(v)


def rows_to_csv(rows):
    """CSV text for a list of flat dicts; complex cells become ``re+imj`` strings."""
    if not rows:
        return ""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return out.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (complex, np.complexfloating)):
        return f"{format_float(v.real)}{'+' if v.imag >= 0 or math.isnan(v.imag) else '-'}{format_float(abs(v.imag))}j"
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return v
