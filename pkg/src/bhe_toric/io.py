"""JSON/CSV (de)serialisation with deterministic, atomic writes."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exactalg import Poly, Quadratic, RootPair, as_rational
from .orthotoric import GridSample, OrthotoricStructure

__all__ = [
    "structure_to_dict",
    "structure_from_dict",
    "to_jsonable",
    "dumps_json",
    "grid_to_csv",
    "rows_to_csv",
    "atomic_write",
    "read_json",
]


def structure_to_dict(S: OrthotoricStructure) -> dict:
    out = {
        "A": [str(c) for c in S.A.coeffs],
        "B": [str(c) for c in S.B.coeffs],
        "lambda_sq": str(S.lambda_sq),
    }
    if not S.is_quadratic:
        out["x_roots"] = [str(v) for v in S.x_roots.lower]
        out["y_roots"] = [str(v) for v in S.y_roots.lower]
    return out


def structure_from_dict(d: dict, validate: bool = True) -> OrthotoricStructure:
    """Inverse of :func:`structure_to_dict`; also accepts ``{"structure": {...}}``.

    Non-quadratic profiles must carry explicit ``x_roots``/``y_roots``.
    """
    if "structure" in d and "A" not in d:
        d = d["structure"]
    try:
        A, B = Poly(d["A"]), Poly(d["B"])
        lam2 = as_rational(d.get("lambda_sq", 0))
    except KeyError as exc:
        raise ValueError(f"structure JSON lacks field {exc}") from None
    if "x_roots" in d or "y_roots" in d:
        xr = [as_rational(v) for v in d["x_roots"]]
        yr = [as_rational(v) for v in d["y_roots"]]
        S = OrthotoricStructure(A, B, lam2, RootPair("exact", *sorted(xr)),
                                RootPair("exact", *sorted(yr)))
        if validate:
            S.validate()
        return S
    if A.degree > 2 or B.degree > 2:
        raise ValueError("non-quadratic profiles need x_roots and y_roots")
    return OrthotoricStructure.from_quadratics(Quadratic.from_poly(A), Quadratic.from_poly(B),
                                               lam2, validate=validate)


def to_jsonable(obj):
    """Recursively convert Fractions (to "p/q"), numpy scalars and dataclass dicts."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj


def dumps_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=True) + "\n"


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def grid_to_csv(sample: GridSample) -> str:
    return rows_to_csv(("x", "y", "value"), sample.rows())


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path: str | os.PathLike) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
