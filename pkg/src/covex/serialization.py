"""JSON (de)serialization for every point kind the CLI exchanges.

Matrices are {"rows": r, "cols": c, "entries": [[...]]} with integer
entries over a prime field and integers or "a/b" strings over the
rationals.  Structured points wrap matrices under descriptive keys.
Parsing validates shapes and structural invariants up front and reports
the offending field in the error message.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .conormal import CotangentMatrixPoint, SpringerFlagPoint, SpringerGrassPoint
from .errors import CovexError, InputError
from .exactla import ExactMatrix, FieldSpec, Subspace
from .permcore import PartialPermutation
from .varieties import Flag, GrassIndex


def scalar_to_json(value) -> Any:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return int(value)


def scalar_from_json(field: FieldSpec, value) -> Any:
    if isinstance(value, str):
        try:
            num, _, den = value.partition("/")
            parsed = Fraction(int(num), int(den)) if den else Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad scalar {value!r}: {exc}") from exc
        return field.coerce(parsed)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"bad scalar {value!r}: expected integer or 'a/b'")
    return field.coerce(value)


def matrix_to_json(matrix: ExactMatrix) -> dict:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [[scalar_to_json(v) for v in row] for row in matrix.entries],
    }


def matrix_from_json(field: FieldSpec, data: Any, where: str = "matrix") -> ExactMatrix:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object with rows/cols/entries")
    try:
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
    except KeyError as exc:
        raise InputError(f"{where}: missing field {exc}") from exc
    if not isinstance(entries, list) or len(entries) != rows:
        raise InputError(f"{where}: entries must be a list of {rows} rows")
    parsed = []
    for i, row in enumerate(entries, start=1):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{where}: row {i} must have {cols} entries")
        parsed.append([scalar_from_json(field, v) for v in row])
    return ExactMatrix.from_rows(field, parsed)


def permutation_to_json(w: PartialPermutation) -> dict:
    return {"n": w.n, "image": list(w.image)}


def permutation_from_json(data: Any, where: str = "permutation") -> PartialPermutation:
    if not isinstance(data, dict) or "n" not in data or "image" not in data:
        raise InputError(f"{where}: expected an object with n and image")
    try:
        return PartialPermutation(int(data["n"]), tuple(int(v) for v in data["image"]))
    except (TypeError, ValueError, CovexError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def subspace_to_json(subspace: Subspace) -> dict:
    return {
        "ambient": subspace.ambient,
        "basis": matrix_to_json(subspace.basis_matrix()),
    }


def subspace_from_json(field: FieldSpec, data: Any, where: str = "subspace") -> Subspace:
    if not isinstance(data, dict) or "ambient" not in data or "basis" not in data:
        raise InputError(f"{where}: expected an object with ambient and basis")
    basis = matrix_from_json(field, data["basis"], f"{where}.basis")
    ambient = int(data["ambient"])
    if basis.rows != ambient:
        raise InputError(f"{where}: basis rows differ from ambient dimension")
    span = Subspace.column_span(basis)
    if span.dim != basis.cols:
        raise InputError(f"{where}: basis columns are linearly dependent")
    return span


def flag_to_json(flag: Flag) -> dict:
    return {"n": flag.n, "generator": matrix_to_json(flag.generator)}


def flag_from_json(field: FieldSpec, data: Any, where: str = "flag") -> Flag:
    if not isinstance(data, dict) or "generator" not in data:
        raise InputError(f"{where}: expected an object with a generator matrix")
    generator = matrix_from_json(field, data["generator"], f"{where}.generator")
    if not generator.is_square():
        raise InputError(f"{where}: generator must be square")
    if "n" in data and int(data["n"]) != generator.rows:
        raise InputError(f"{where}: declared n differs from generator size")
    flag = Flag(generator)
    if generator.rank() != generator.rows:
        raise InputError(f"{where}: generator is singular, dim F_i would be wrong")
    return flag


def grass_index_to_json(idx: GrassIndex) -> dict:
    return {"d": idx.d, "N": idx.N, "positions": list(idx.positions)}


def grass_index_from_json(data: Any, where: str = "index") -> GrassIndex:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object with d, N, positions")
    try:
        return GrassIndex(
            int(data["d"]), int(data["N"]), tuple(int(v) for v in data["positions"])
        )
    except (KeyError, TypeError, ValueError, CovexError) as exc:
        raise InputError(f"{where}: {exc}") from exc


POINT_KINDS = ("matrix", "flag", "grass", "cotangent", "springer-flag", "springer-grass", "perm")


def point_from_json(field: FieldSpec, kind: str, data: Any):
    """Build and validate a typed point from parsed JSON."""
    if kind == "matrix":
        return matrix_from_json(field, data)
    if kind == "perm":
        return permutation_from_json(data)
    if kind == "flag":
        return flag_from_json(field, data)
    if kind == "grass":
        return subspace_from_json(field, data)
    if kind == "cotangent":
        if not isinstance(data, dict) or "x" not in data or "y" not in data:
            raise InputError("cotangent point: expected an object with x and y")
        return CotangentMatrixPoint(
            matrix_from_json(field, data["x"], "x"),
            matrix_from_json(field, data["y"], "y"),
        )
    if kind == "springer-flag":
        if not isinstance(data, dict) or "flag" not in data or "z" not in data:
            raise InputError("springer flag point: expected an object with flag and z")
        return SpringerFlagPoint(
            flag_from_json(field, data["flag"], "flag"),
            matrix_from_json(field, data["z"], "z"),
        )
    if kind == "springer-grass":
        if not isinstance(data, dict) or "V" not in data or "x" not in data:
            raise InputError("springer grass point: expected an object with V and x")
        return SpringerGrassPoint(
            subspace_from_json(field, data["V"], "V"),
            matrix_from_json(field, data["x"], "x"),
        )
    raise InputError(f"unknown point kind {kind!r} (one of {', '.join(POINT_KINDS)})")


def parse_point_file(path: str | Path, kind: str, field: FieldSpec):
    """Load a typed point from a JSON file, enforcing invariants at parse time."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return point_from_json(field, kind, data)
