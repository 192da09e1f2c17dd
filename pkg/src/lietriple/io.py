"""JSON encodings of algebras, tensors, operators and derived structures.

Scalars are strings ``"p/q"`` (or ``"a+b i"`` over ``Q_i``); indices are 0-based.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import LieAlgebra, lie_from_brackets
from .errors import InputError
from .postlie import DendriformTrialgebra, PostLieAlgebra
from .scalars import exact_array, format_scalar, parse_scalar, zeros

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "algebra_to_json",
    "algebra_from_json",
    "table_to_json",
    "table_from_json",
    "postlie_to_json",
    "postlie_from_json",
    "trialgebra_to_json",
    "trialgebra_from_json",
    "residual_summary",
    "dumps",
    "load_json",
]


def matrix_to_json(M):
    M = np.asarray(M, dtype=object)
    if M.ndim == 1:
        return [format_scalar(x) for x in M]
    return [matrix_to_json(row) for row in M]


def matrix_from_json(data, field: str = "Q"):
    try:
        return exact_array(_parse_nested(data), field)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix entry: {exc}") from None


def _parse_nested(data):
    if isinstance(data, list):
        return [_parse_nested(x) for x in data]
    if isinstance(data, str):
        return parse_scalar(data)
    if isinstance(data, int):
        return data
    raise InputError(f"scalars must be strings or integers, got {data!r}")


def algebra_to_json(L: LieAlgebra) -> dict:
    br = []
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            terms = [[k, format_scalar(L.sc[i, j, k])] for k in range(n) if L.sc[i, j, k] != 0]
            if terms:
                br.append([i, j, terms])
    return {"name": L.name, "dim": n, "field": L.field, "brackets": br}


def algebra_from_json(obj: dict) -> LieAlgebra:
    try:
        n = int(obj["dim"])
        field = obj.get("field", "Q")
        brackets = []
        for i, j, terms in obj.get("brackets", []):
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"bracket index out of range: {(i, j)}")
            if i >= j:
                raise InputError("only i < j bracket entries are allowed")
            brackets.append((i, j, [(k, parse_scalar(c)) for k, c in terms]))
        return lie_from_brackets(obj.get("name", "algebra"), n, brackets, field)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra JSON: {exc}") from None


def table_to_json(T) -> list:
    """Every nonzero product ``[i, j, [[k, c], ...]]`` (no symmetry assumed)."""
    T = np.asarray(T, dtype=object)
    n = T.shape[0]
    out = []
    for i in range(n):
        for j in range(n):
            terms = [[k, format_scalar(T[i, j, k])] for k in range(n) if T[i, j, k] != 0]
            if terms:
                out.append([i, j, terms])
    return out


def table_from_json(entries, n: int, field: str = "Q"):
    T = zeros((n, n, n), field)
    for i, j, terms in entries:
        for k, c in terms:
            T[i, j, k] += parse_scalar(c)
    return T


def postlie_to_json(P: PostLieAlgebra) -> dict:
    return {"name": P.name, "dim": P.dim, "bracket": table_to_json(P.bracket), "circ": table_to_json(P.circ)}


def postlie_from_json(obj: dict) -> PostLieAlgebra:
    n = int(obj["dim"])
    return PostLieAlgebra(table_from_json(obj["bracket"], n), table_from_json(obj["circ"], n), obj.get("name", "postlie"))


def trialgebra_to_json(T: DendriformTrialgebra) -> dict:
    return {
        "name": T.name,
        "dim": T.dim,
        "prec": table_to_json(T.prec),
        "succ": table_to_json(T.succ),
        "dot": table_to_json(T.dot),
    }


def trialgebra_from_json(obj: dict) -> DendriformTrialgebra:
    n = int(obj["dim"])
    return DendriformTrialgebra(
        table_from_json(obj["prec"], n), table_from_json(obj["succ"], n), table_from_json(obj["dot"], n), obj.get("name", "trialgebra")
    )


def residual_summary(res) -> dict:
    """Max-abs, exact-zero flag and first witness of a residual array."""
    from .scalars import first_nonzero, max_abs

    res = np.asarray(res, dtype=object)
    w = first_nonzero(res)
    return {
        "zero": w is None,
        "max_abs": format_scalar(max_abs(res)) if res.size else "0",
        "witness": None if w is None else [int(x) for x in w],
    }


def _default(o):
    if isinstance(o, np.ndarray):
        return matrix_to_json(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    try:
        return format_scalar(o)
    except TypeError:
        return str(o)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
