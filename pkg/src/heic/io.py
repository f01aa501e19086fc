"""File formats: whitespace edge lists and dense CSV matrices.

Edge list: a header line ``n=<count>`` followed by one ``i j`` pair per
edge (0-based, i < j, whitespace separated).  Dense CSV: one row per line,
comma separated, 17 significant digits so float64 values round-trip.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ValidationError
from .model import require_symmetric


def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def write_edge_list(path, adj) -> None:
    adj = require_symmetric(adj, "adjacency")
    n = adj.shape[0]
    rows, cols = np.nonzero(np.triu(adj, k=1))
    lines = [f"n={n}"]
    lines.extend(f"{i} {j}" for i, j in zip(rows.tolist(), cols.tolist()))
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path) -> np.ndarray:
    text = Path(path).read_text().strip().splitlines()
    if not text or not text[0].startswith("n="):
        raise ValidationError(f"{path}: missing 'n=<count>' header")
    try:
        n = int(text[0][2:])
    except ValueError as exc:
        raise ValidationError(f"{path}: bad node count {text[0]!r}") from exc
    if n < 1:
        raise ValidationError(f"{path}: node count must be >= 1")
    adj = np.zeros((n, n))
    for lineno, line in enumerate(text[1:], start=2):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 'i j'")
        i, j = int(parts[0]), int(parts[1])
        if not (0 <= i < j < n):
            raise ValidationError(f"{path}:{lineno}: edge ({i}, {j}) out of range for n={n}")
        adj[i, j] = adj[j, i] = 1.0
    return adj


def write_matrix_csv(path, m) -> None:
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise ValidationError("dense CSV export expects a 2-d matrix")
    lines = [",".join(format_float(x) for x in row) for row in arr]
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix_csv(path) -> np.ndarray:
    try:
        arr = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ValidationError(f"{path}: malformed dense CSV ({exc})") from exc
    return np.asarray(arr, dtype=float)
