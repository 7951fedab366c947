"""Plain-text density-matrix files.

Line 1 holds the dimension N; each of the next N lines holds one row of N
entries written as ``re+imj`` and separated by single spaces.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import QJSDError
from .linalg import DensityMatrix, as_array


def format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_matrix(a) -> str:
    a = as_array(a)
    n = a.shape[0]
    lines = [str(n)]
    lines += [" ".join(format_entry(complex(z)) for z in row) for row in a]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise QJSDError("empty density-matrix file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise QJSDError(f"first line must be an integer dimension, got {lines[0]!r}") from None
    if n < 1 or len(lines) != n + 1:
        raise QJSDError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        tokens = ln.split()
        if len(tokens) != n:
            raise QJSDError(f"expected {n} entries per row, got {len(tokens)}")
        try:
            rows.append([complex(tok) for tok in tokens])
        except ValueError as exc:
            raise QJSDError(f"bad matrix entry in row {ln!r}: {exc}") from None
    return np.array(rows, dtype=complex)


def write_density_matrix(path, a) -> Path:
    path = Path(path)
    path.write_text(format_matrix(a))
    return path


def read_density_matrix(path) -> DensityMatrix:
    return DensityMatrix(parse_matrix(Path(path).read_text()))
