"""Reading and writing cost spaces as JSON or CSV.

JSON::

    {"labels": ["a", "b"], "costs": [[0, "3/2"], ["inf", 0]], "mode": "rational"}

CSV: a header row of labels followed by the matrix rows; ``inf`` marks an
unreachable pair.  CSV input has no mode field, so the caller picks one.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from ._numeric import DEFAULT_TOLERANCE, MODES, RATIONAL, fmt
from .core import CostInputError, CostSpace


def label_str(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(label_str(v) for v in x) + ")"
    return str(x)


def json_label(x):
    """Labels stay as JSON strings or integers; anything else is stringified."""
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    return label_str(x)


def space_from_json(obj: dict, mode: str | None = None, tol: float = DEFAULT_TOLERANCE) -> CostSpace:
    if not isinstance(obj, dict) or "costs" not in obj:
        raise CostInputError("cost-space JSON needs a 'costs' matrix")
    costs = obj["costs"]
    labels = obj.get("labels")
    if labels is None:
        labels = list(range(len(costs)))
    mode = mode or obj.get("mode", RATIONAL)
    if mode not in MODES:
        raise CostInputError(f"unknown mode {mode!r}")
    if not isinstance(costs, list) or not all(isinstance(row, list) for row in costs):
        raise CostInputError("'costs' must be a list of rows")
    return CostSpace(tuple(labels), tuple(tuple(r) for r in costs), mode, tol)


def space_to_json(space: CostSpace) -> dict:
    return {
        "labels": [json_label(x) for x in space.labels],
        "costs": [[_json_scalar(v) for v in row] for row in space.cost],
        "mode": space.mode,
    }


def _json_scalar(v):
    s = fmt(v)
    if s == "inf" or "/" in s:
        return s
    n = float(s)
    return int(n) if n.is_integer() and abs(n) < 2 ** 53 else n


def space_from_csv(text: str, mode: str = RATIONAL, tol: float = DEFAULT_TOLERANCE) -> CostSpace:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise CostInputError("empty CSV")
    labels = [h.strip() for h in rows[0]]
    body = [[cell.strip() for cell in r] for r in rows[1:]]
    return CostSpace(tuple(labels), tuple(tuple(r) for r in body), mode, tol)


def space_to_csv(space: CostSpace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([label_str(x) for x in space.labels])
    for row in space.cost:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def load_space(path, mode: str | None = None, tol: float = DEFAULT_TOLERANCE) -> CostSpace:
    """Load a ``.json`` or ``.csv`` file (``-`` is not accepted here)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return space_from_csv(text, mode or RATIONAL, tol)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CostInputError(f"{path}: {exc}") from None
    return space_from_json(obj, mode, tol)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
