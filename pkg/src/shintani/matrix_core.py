"""Shintani matrices, zero patterns and 0/1 support vectors.

A Shintani matrix is an ``n x r`` array of non-negative reals with a positive
entry in every row and every column.  Row ``i`` gives the linear form
``L_i(m) = sum_j a_ij m_j`` of the zeta series; column ``j`` gives the form
``C_j(eps) = sum_i a_ij eps_i`` of its kernel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import MalformedMatrix, NegativeEntry, SupportTooSmall, ZeroColumn, ZeroRow


@dataclass(frozen=True, order=False)
class SupportVector:
    """A 0/1 vector of length ``dim`` stored as a bitmask (bit ``i`` <-> coordinate ``i``)."""

    dim: int
    bits: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.bits <= 0 or self.bits >> self.dim:
            raise ValueError(f"bitmask {self.bits:#b} is not a non-empty subset of [{self.dim}]")

    @classmethod
    def from_indices(cls, dim: int, indices: Iterable[int]) -> "SupportVector":
        bits = 0
        for i in indices:
            if not 0 <= i < dim:
                raise ValueError(f"index {i} out of range for dimension {dim}")
            bits |= 1 << i
        return cls(dim, bits)

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> "SupportVector":
        if any(v not in (0, 1) for v in vec):
            raise ValueError(f"{vec!r} is not a 0/1 vector")
        return cls.from_indices(len(vec), (i for i, v in enumerate(vec) if v))

    @classmethod
    def basis(cls, dim: int, i: int) -> "SupportVector":
        return cls.from_indices(dim, [i])

    @cached_property
    def support(self) -> frozenset:
        return frozenset(i for i in range(self.dim) if self.bits >> i & 1)

    @cached_property
    def indices(self) -> tuple:
        return tuple(sorted(self.support))

    @cached_property
    def vector(self) -> tuple:
        return tuple(self.bits >> i & 1 for i in range(self.dim))

    @cached_property
    def size(self) -> int:
        return bin(self.bits).count("1")

    @property
    def is_basis(self) -> bool:
        return self.size == 1

    def union(self, other: "SupportVector") -> "SupportVector":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return SupportVector(self.dim, self.bits | other.bits)

    def dot(self, sigma: Sequence[float]) -> float:
        return sum(sigma[i] for i in self.indices)

    def sort_key(self) -> tuple:
        return (self.size, self.vector)

    def __repr__(self):
        return f"SupportVector({''.join(map(str, self.vector))})"


@dataclass(frozen=True)
class SigmaMatrix:
    """Validated ``n x r`` Shintani matrix; build it with :func:`validate_matrix`."""

    entries: tuple

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.entries, dtype=float)
        a.flags.writeable = False
        return a

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def tolist(self) -> list:
        return [list(row) for row in self.entries]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.tolist()}


def validate_matrix(raw) -> SigmaMatrix:
    """Check the Shintani conditions and freeze ``raw`` (any n x r grid of reals)."""
    rows = [list(r) for r in raw]
    if not rows or not rows[0]:
        raise MalformedMatrix("matrix must have at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MalformedMatrix("matrix rows have different lengths")
    grid = []
    for i, r in enumerate(rows):
        out = []
        for j, v in enumerate(r):
            if isinstance(v, bool):
                raise MalformedMatrix(f"entry ({i + 1},{j + 1}) is not a real number")
            try:
                x = float(v)
            except (TypeError, ValueError):
                raise MalformedMatrix(f"entry ({i + 1},{j + 1}) is not a real number") from None
            if x != x or x in (float("inf"), float("-inf")):
                raise MalformedMatrix(f"entry ({i + 1},{j + 1}) is not finite")
            if x < 0:
                raise NegativeEntry(i, j, x)
            out.append(x)
        grid.append(tuple(out))
    for i, r in enumerate(grid):
        if not any(x > 0 for x in r):
            raise ZeroRow(i)
    for j in range(width):
        if not any(r[j] > 0 for r in grid):
            raise ZeroColumn(j)
    return SigmaMatrix(tuple(grid))


def skeleton(a: SigmaMatrix) -> SigmaMatrix:
    """0/1 matrix with the zero pattern of ``a``."""
    return SigmaMatrix(tuple(tuple(1.0 if x > 0 else 0.0 for x in row) for row in a.entries))


def column_supports(a: SigmaMatrix) -> list:
    return [
        SupportVector.from_indices(a.rows, (i for i in range(a.rows) if a.entries[i][j] > 0))
        for j in range(a.cols)
    ]


def matrix_from_supports(mus: Sequence[SupportVector], n: int) -> SigmaMatrix:
    """Columns ``mu_1..mu_m`` followed by an all-ones column.

    Each ``mu_j`` needs at least two nonzero coordinates.
    """
    cols = []
    for j, mu in enumerate(mus):
        if mu.dim != n:
            raise MalformedMatrix(f"support vector {j + 1} has dimension {mu.dim}, expected {n}")
        if mu.size < 2:
            raise SupportTooSmall(j)
        cols.append(mu.vector)
    cols.append((1,) * n)
    return validate_matrix([[float(c[i]) for c in cols] for i in range(n)])


def parse_matrix(text: str) -> SigmaMatrix:
    """Parse the JSON object form or the whitespace-separated plain-text form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedMatrix(f"invalid JSON: {exc}") from None
        try:
            entries = obj["entries"]
        except (KeyError, TypeError):
            raise MalformedMatrix("JSON matrix needs an 'entries' field") from None
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise MalformedMatrix("'entries' must be a list of rows")
        a = validate_matrix(entries)
        if "rows" in obj and obj["rows"] != a.rows:
            raise MalformedMatrix(f"'rows' is {obj['rows']} but entries have {a.rows} rows")
        if "cols" in obj and obj["cols"] != a.cols:
            raise MalformedMatrix(f"'cols' is {obj['cols']} but entries have {a.cols} columns")
        return a
    lines = [ln.split() for ln in stripped.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return validate_matrix(lines)


def load_matrix(path) -> SigmaMatrix:
    return parse_matrix(Path(path).read_text())
