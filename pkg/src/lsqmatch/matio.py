"""Plain-text matrix serialization shared by the CLI and the tests.

Layout: a header line ``rows cols`` (ASCII decimal integers, one space), then
``rows`` lines of ``cols`` space-separated floating-point values.  Values are
written with Python's shortest round-trip ``repr``, so load(save(a)) == a
bit-for-bit.  Lines end with ``\\n``.
"""

from __future__ import annotations

import os

import numpy as np

from .linalg import as_matrix


def format_matrix(a) -> str:
    a = as_matrix(a)
    rows, cols = a.shape
    lines = [f"{rows} {cols}"]
    for i in range(rows):
        lines.append(" ".join(repr(float(v)) for v in a[i]))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"matrix header must be 'rows cols', got {lines[0]!r}")
    rows, cols = int(header[0]), int(header[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} data lines, got {len(lines) - 1}")
    data = np.empty((rows, cols))
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != cols:
            raise ValueError(f"row {i}: expected {cols} values, got {len(parts)}")
        data[i] = [float(p) for p in parts]
    return as_matrix(data)


def save_matrix(path: str | os.PathLike, a) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(a))


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())
