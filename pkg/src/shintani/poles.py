"""Candidate pole hyperplanes and the absolute-convergence region of ``zeta_A``.

Every non-empty column subset ``J`` contributes the family of hyperplanes
``<mu_J, s> = |J| - l`` where ``mu_J`` is the 0/1 indicator of the union of
the column supports in ``J``.  Subsets with the same ``mu_J`` are merged and
keep the largest ``|J|``.  On a coordinate axis (``mu_J = e_i``) the Gamma
factor cancels the progression below ``l = nu - 1``, so only
``l = 0, ..., nu - 1`` remain.

An alternative reading restricts axis families to ``l in {1, ..., |J|-1}``;
``A = [1]`` (Riemann zeta, pole at ``s = 1``) needs ``l = 0``, so the finite
range starts at zero here.  The report records the convention it used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptySubset
from .matrix_core import SigmaMatrix, SupportVector, column_supports
from .polyhedra import HalfspaceSystem, check_cap, normalize_subset, system_from_levels

L_RANGE_CONVENTION = "axis families carry l in {0,...,nu-1}; all other families carry every l >= 0"


@dataclass(frozen=True)
class PoleFamily:
    mu: SupportVector
    nu: int
    witnesses: tuple = field(default_factory=tuple)

    @property
    def l_range(self):
        """``"all"`` or the finite tuple of admissible shifts ``l``."""
        return tuple(range(self.nu)) if self.mu.is_basis else "all"

    def hyperplane(self, l: int, var: str = "s") -> str:
        lhs = "+".join(f"{var}{i + 1}" for i in self.mu.indices)
        return f"{lhs} = {self.nu - l}"

    def to_json(self) -> dict:
        lr = self.l_range
        return {
            "mu": list(self.mu.vector),
            "nu": self.nu,
            "l_range": lr if lr == "all" else list(lr),
            "witnesses": [[j + 1 for j in w] for w in self.witnesses],
        }


@dataclass(frozen=True)
class PoleReport:
    n: int
    r: int
    families: tuple
    convergence: HalfspaceSystem

    def family(self, mu: Sequence[int]):
        key = SupportVector.from_vector(mu)
        for f in self.families:
            if f.mu == key:
                return f
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "families": [f.to_json() for f in self.families],
            "convergence": self.convergence.to_json(),
            "l_range_convention": L_RANGE_CONVENTION,
            "note": "hyperplanes are possible poles; containment is proven, not that each carries a pole",
        }


def mu_vector(a: SigmaMatrix, J) -> SupportVector:
    js = tuple(J)
    if not js:
        raise EmptySubset()
    js = normalize_subset(js, a.cols)
    mus = column_supports(a)
    bits = 0
    for j in js:
        bits |= mus[j].bits
    return SupportVector(a.rows, bits)


def enumerate_pole_families(a: SigmaMatrix, cap: int | None = None) -> PoleReport:
    check_cap(a.cols, cap)
    masks = [mu.bits for mu in column_supports(a)]
    witnesses: dict = {}
    # union over subsets by peeling the lowest column: union[S] = union[S - low] | mask[low]
    union = [0] * (1 << a.cols)
    for subset in range(1, 1 << a.cols):
        low = subset & -subset
        union[subset] = union[subset ^ low] | masks[low.bit_length() - 1]
        witnesses.setdefault(union[subset], []).append(subset)
    families = []
    for bits, subs in witnesses.items():
        js = sorted(
            (tuple(j for j in range(a.cols) if s >> j & 1) for s in subs),
            key=lambda w: (len(w), w),
        )
        families.append(PoleFamily(SupportVector(a.rows, bits), max(len(w) for w in js), tuple(js)))
    families.sort(key=lambda f: f.mu.sort_key())
    convergence = system_from_levels(a.rows, {f.mu: f.nu for f in families})
    return PoleReport(a.rows, a.cols, tuple(families), convergence)


def convergence_check(a: SigmaMatrix, sigma: Sequence[float], report: PoleReport | None = None) -> bool:
    """Absolute convergence of the series at real parts ``sigma`` (open region)."""
    if len(sigma) != a.rows:
        raise DimensionMismatch(a.rows, len(sigma))
    report = report or enumerate_pole_families(a)
    return report.convergence.contains(sigma)


def first_violated_constraint(a: SigmaMatrix, sigma: Sequence[float]):
    if len(sigma) != a.rows:
        raise DimensionMismatch(a.rows, len(sigma))
    return enumerate_pole_families(a).convergence.first_violated(sigma)


def sufficient_box_check(a: SigmaMatrix, sigma: Sequence[float]) -> bool:
    """Cheap sufficient test: every coordinate strictly above the column count."""
    if len(sigma) != a.rows:
        raise DimensionMismatch(a.rows, len(sigma))
    return min(sigma) > a.cols


@dataclass(frozen=True)
class TransformedFamily:
    normal: tuple
    nu: int
    l_range: object

    def to_json(self) -> dict:
        lr = self.l_range
        return {"normal": list(self.normal), "nu": self.nu, "l_range": lr if lr == "all" else list(lr)}


def transform_pole_families(report: PoleReport, B) -> list:
    """Pole families of ``s -> zeta_A(B s)``: each normal ``mu`` becomes ``B^T mu``."""
    b = np.asarray(B, dtype=float)
    if b.shape != (report.n, report.n):
        raise DimensionMismatch(report.n, b.shape[0] if b.ndim else 0, "transform matrix")
    out = []
    for f in report.families:
        normal = b.T @ np.array(f.mu.vector, dtype=float)
        out.append(TransformedFamily(tuple(float(x) for x in normal), f.nu, f.l_range))
    return out
