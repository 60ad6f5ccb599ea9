"""JSON and CSV serialization.

Space format::

    {"name": "optional", "labels": ["a", "b"], "matrix": [[0, 1], [1, 0]]}

Floats are written with ``repr``, the shortest decimal that round-trips.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import MetricInputError
from .space import DEFAULT_TOL, FiniteMetricSpace


def space_to_dict(X: FiniteMetricSpace) -> dict:
    out = {}
    if X.name is not None:
        out["name"] = X.name
    out["labels"] = list(X.labels)
    out["matrix"] = [[float(v) for v in row] for row in X.dist]
    return out


def space_from_dict(obj: dict, tol: float = DEFAULT_TOL) -> FiniteMetricSpace:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise MetricInputError("space JSON needs a 'matrix' field")
    matrix = obj["matrix"]
    try:
        arr = np.array(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MetricInputError(f"matrix is not numeric: {exc}") from None
    labels = obj.get("labels")
    return FiniteMetricSpace.from_matrix(arr, labels=labels, name=obj.get("name"), tol=tol)


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(", ", ": "), allow_nan=False) + "\n"


def ultrametric_to_dict(U, source: FiniteMetricSpace) -> dict:
    """Space format plus ``"classes"``: the input labels merged into each point."""
    out = space_to_dict(U.space)
    out["classes"] = [[source.labels[i] for i in c] for c in U.source_classes]
    return out


def partition_to_dict(X: FiniteMetricSpace, partition) -> dict:
    return {
        "scale": float(partition.scale),
        "components": [[X.labels[i] for i in comp] for comp in partition.components],
    }


def gh_result_to_dict(result, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> dict:
    witness = None
    if result.witness is not None:
        witness = [[X.labels[i], Y.labels[j]] for i, j in result.witness.sorted_pairs()]
    return {
        "lower": float(result.lower),
        "upper": float(result.upper),
        "exact": bool(result.exact),
        "witness": witness,
        "provenance": [{"bound": name, "value": float(v)} for name, v in result.provenance],
        "nodes": int(result.nodes_explored),
        "timed_out": bool(result.timed_out),
    }


def dt_to_dict(dt) -> dict:
    out = space_to_dict(dt.space)
    origins = []
    for o in dt.origins:
        if o[0] == "original":
            origins.append({"original": o[1]})
        else:
            origins.append({"segment": [o[1], o[2]], "s": float(o[3])})
    out["origins"] = origins
    out["t"] = dt.t
    out["step"] = dt.step
    return out


def _parse_csv(text: str):
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise MetricInputError("empty CSV")
    labels = None
    try:
        [float(c) for c in rows[0]]
        numeric_first = True
    except ValueError:
        numeric_first = False
    # numeric labels are recognised by the extra row
    if not numeric_first or len(rows) == len(rows[0]) + 1:
        labels = [c.strip() for c in rows[0]]
        rows = rows[1:]
    try:
        matrix = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise MetricInputError(f"non-numeric CSV entry: {exc}") from None
    if len({len(r) for r in matrix}) > 1:
        raise MetricInputError("CSV rows have different lengths")
    return matrix, labels


def read_csv_text(text: str, tol: float = DEFAULT_TOL, name=None) -> FiniteMetricSpace:
    matrix, labels = _parse_csv(text)
    return FiniteMetricSpace.from_matrix(matrix, labels=labels, name=name, tol=tol)


def write_csv_text(X: FiniteMetricSpace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(X.labels)
    for row in X.dist:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def load_space(path, tol: float = DEFAULT_TOL) -> FiniteMetricSpace:
    """Read a space from ``.json`` or ``.csv`` (decided by suffix, JSON otherwise)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return read_csv_text(text, tol=tol, name=path.stem)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MetricInputError(f"{path}: invalid JSON: {exc}") from None
    return space_from_dict(obj, tol=tol)


def load_matrix(path):
    """Raw matrix and labels from a file, without metric validation."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return _parse_csv(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MetricInputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise MetricInputError("space JSON needs a 'matrix' field")
    return obj["matrix"], obj.get("labels")


def save_space(X: FiniteMetricSpace, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(write_csv_text(X))
    else:
        path.write_text(dumps(space_to_dict(X)))
