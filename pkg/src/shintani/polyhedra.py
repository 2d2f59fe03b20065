"""The polyhedra ``Delta_{C_J} + R^n_+`` and two independent membership tests.

``membership_flow`` decides membership by splitting sigma into one piece per
column of ``J`` (a transportation problem), ``halfspace_description`` lists the
inequalities ``<mu_K, sigma> > |K>`` over the non-empty ``K`` inside ``J``.
:func:`verify_polyhedron_equality` samples points and compares the two.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptySubset, SubsetCapExceeded
from .flow import transport
from .matrix_core import SigmaMatrix, SupportVector, column_supports

DEFAULT_SUBSET_CAP = 20
FLOW_TOL = 1e-9
# Shrink used to probe the open polyhedron; well below the 1e-9 ambiguity band
# that the sampler discards.
STRICT_PROBE = 1e-10
STRICT_FLOW_TOL = 1e-12
BISECTION_STEPS = 30
BOUNDARY_JITTER = 1e-3
AMBIGUOUS_BAND = 1e-9


def subset_cap() -> int:
    raw = os.environ.get("SHINTANI_SUBSET_CAP")
    return int(raw) if raw else DEFAULT_SUBSET_CAP


def check_cap(size: int, cap: int | None = None) -> None:
    cap = subset_cap() if cap is None else cap
    if size > cap:
        raise SubsetCapExceeded(size, cap)


def normalize_subset(J: Iterable[int], r: int) -> tuple:
    js = tuple(sorted(set(J)))
    if not js:
        raise EmptySubset()
    if js[0] < 0 or js[-1] >= r:
        raise ValueError(f"column subset {js} out of range for {r} columns")
    return js


def nonempty_subsets(items: Sequence[int]):
    for k in range(1, len(items) + 1):
        yield from combinations(items, k)


@dataclass(frozen=True)
class Constraint:
    """``<normal, sigma> > rhs`` (or ``>=`` when not strict).

    ``kind`` is ``"support"`` for the ``mu_K`` inequalities and ``"orthant"``
    for the coordinate positivity constraints.
    """

    normal: SupportVector
    rhs: int
    strict: bool = True
    kind: str = "support"

    def value(self, sigma: Sequence[float]) -> float:
        return self.normal.dot(sigma) - self.rhs

    def holds(self, sigma: Sequence[float]) -> bool:
        v = self.value(sigma)
        return v > 0 if self.strict else v >= 0

    def distance(self, sigma: Sequence[float]) -> float:
        return abs(self.value(sigma)) / math.sqrt(self.normal.size)

    def describe(self, var: str = "σ") -> str:
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        lhs = "+".join(f"{var}{str(i + 1).translate(sub)}" for i in sorted(self.normal.support))
        return f"{lhs}{'>' if self.strict else '≥'}{self.rhs}"

    def to_json(self) -> dict:
        return {"mu": list(self.normal.vector), "rhs": self.rhs}


@dataclass(frozen=True)
class HalfspaceSystem:
    dim: int
    constraints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for c in self.constraints:
            if c.normal.dim != self.dim:
                raise DimensionMismatch(self.dim, c.normal.dim, "constraint normal")

    @property
    def support_constraints(self) -> tuple:
        return tuple(c for c in self.constraints if c.kind == "support")

    def contains(self, sigma: Sequence[float]) -> bool:
        if len(sigma) != self.dim:
            raise DimensionMismatch(self.dim, len(sigma))
        return all(c.holds(sigma) for c in self.constraints)

    def first_violated(self, sigma: Sequence[float]):
        for c in self.constraints:
            if not c.holds(sigma):
                return c
        return None

    def to_json(self) -> list:
        return [c.to_json() for c in self.constraints]


def orthant_constraints(n: int) -> tuple:
    return tuple(Constraint(SupportVector.basis(n, i), 0, True, "orthant") for i in range(n))


def system_from_levels(n: int, levels: dict) -> HalfspaceSystem:
    """Strict system ``<mu, sigma> > levels[mu]`` plus the open orthant, sorted canonically."""
    support = tuple(Constraint(mu, nu) for mu, nu in sorted(levels.items(), key=lambda kv: kv[0].sort_key()))
    return HalfspaceSystem(n, support + orthant_constraints(n))


def halfspace_from_sets(sets: Sequence, n: int) -> HalfspaceSystem:
    """Halfspace system for the set family ``sets`` (0-based coordinate lists) in dimension ``n``."""
    masks = [SupportVector.from_indices(n, s).bits for s in sets]
    levels: dict = {}
    for K in nonempty_subsets(range(len(masks))):
        bits = 0
        for k in K:
            bits |= masks[k]
        mu = SupportVector(n, bits)
        levels[mu] = max(levels.get(mu, 0), len(K))
    return system_from_levels(n, levels)


def halfspace_description(a: SigmaMatrix, J: Iterable[int], cap: int | None = None) -> HalfspaceSystem:
    js = normalize_subset(J, a.cols)
    check_cap(len(js), cap)
    mus = column_supports(a)
    return halfspace_from_sets([sorted(mus[j].support) for j in js], a.rows)


def _closed_feasible(sets: Sequence, sigma: Sequence[float], tol: float) -> bool:
    if any(x < -tol for x in sigma):
        return False
    return transport(sets, sigma).value >= len(sets) - tol


def membership_flow(a: SigmaMatrix, J: Iterable[int], sigma: Sequence[float], strict: bool = True) -> bool:
    """Is ``sigma`` in ``Delta_{C_J} + R^n_+`` (open when ``strict``, else its closure)?"""
    if len(sigma) != a.rows:
        raise DimensionMismatch(a.rows, len(sigma))
    js = normalize_subset(J, a.cols)
    mus = column_supports(a)
    return membership_sets([sorted(mus[j].support) for j in js], sigma, strict)


def membership_sets(sets: Sequence, sigma: Sequence[float], strict: bool = True) -> bool:
    """Membership test on the raw set family (0-based coordinate lists)."""
    if not strict:
        return _closed_feasible(sets, sigma, FLOW_TOL)
    if not all(x > 0 for x in sigma):
        return False
    shrunk = [x - STRICT_PROBE for x in sigma]
    return _closed_feasible(sets, shrunk, STRICT_FLOW_TOL)


def interior_margin(sets: Sequence, sigma: Sequence[float], steps: int = BISECTION_STEPS) -> float:
    """Largest ``delta`` (to bisection accuracy) with ``sigma - delta*1`` still in the closure.

    Returns 0.0 when no shrink inside ``(0, min sigma]`` is feasible.
    """
    if not sigma or min(sigma) <= 0:
        return 0.0
    lo, hi = 0.0, min(sigma)
    if _closed_feasible(sets, [x - hi for x in sigma], STRICT_FLOW_TOL):
        return hi
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if _closed_feasible(sets, [x - mid for x in sigma], STRICT_FLOW_TOL):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class VerificationReport:
    J: tuple
    agree: int = 0
    discarded: int = 0
    disagree: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.disagree

    def to_json(self) -> dict:
        return {
            "J": [j + 1 for j in self.J],
            "agree": self.agree,
            "discarded": self.discarded,
            "disagree": [list(s) for s in sorted(self.disagree)],
        }


def sample_points(system: HalfspaceSystem, box: float, count: int, rng: random.Random):
    """Half uniform in ``[0, box]^n``, half jittered across a randomly chosen constraint plane."""
    n = system.dim
    planes = system.constraints
    for t in range(count):
        point = [rng.uniform(0.0, box) for _ in range(n)]
        if t % 2 == 1:
            c = planes[rng.randrange(len(planes))]
            norm2 = c.normal.size
            shift = (c.rhs - c.normal.dot(point)) / norm2
            shift += rng.uniform(-BOUNDARY_JITTER, BOUNDARY_JITTER) / math.sqrt(norm2)
            for i in c.normal.support:
                point[i] += shift
        yield tuple(point)


def verify_sets(sets: Sequence, n: int, sample_count: int, seed: int) -> VerificationReport:
    """Compare the flow oracle and the halfspace test on one set family."""
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    system = halfspace_from_sets(sets, n)
    report = VerificationReport(J=())
    rng = random.Random(seed)
    for sigma in sample_points(system, 2.0 * len(sets), sample_count, rng):
        if any(c.distance(sigma) < AMBIGUOUS_BAND for c in system.constraints):
            report.discarded += 1
            continue
        if membership_sets(sets, sigma, strict=True) == system.contains(sigma):
            report.agree += 1
        else:
            report.disagree.append(sigma)
    report.disagree.sort()
    return report


def verify_polyhedron_equality(a: SigmaMatrix, J: Iterable[int], sample_count: int = 1000,
                               seed: int = 0) -> VerificationReport:
    js = normalize_subset(J, a.cols)
    check_cap(len(js))
    mus = column_supports(a)
    report = verify_sets([sorted(mus[j].support) for j in js], a.rows, sample_count, seed)
    report.J = js
    return report
