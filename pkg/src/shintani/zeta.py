"""Numerical values of ``zeta_A(s)``, its kernel, and a one-variable Mellin check.

``zeta_A(s) = sum_{m in Z_{>=1}^r} prod_i L_i(m)^{-s_i}`` with
``L_i(m) = sum_j a_ij m_j``.  Partial sums are taken over boxes ``{1..M}^r``
with ``M = 1, 2, 4, ...``; each new shell is summed with ``math.fsum``.  The box
sums approach the limit like ``M^{-1} log M``, far too slowly for tight
tolerances, so by default the sequence of box sums is accelerated with Wynn's
epsilon algorithm.  ``extrapolate=False`` gives the plain doubling estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NonpositiveEpsilon, OutsideConvergenceRegion
from .matrix_core import SigmaMatrix, validate_matrix
from .poles import enumerate_pole_families

# total terms in the largest box, split evenly over the axes
TERM_BUDGET_LOG2 = 24
CHUNK_TERMS = 1 << 18
MIN_DOUBLINGS = 6
DEFAULT_REL_TOL = 1e-9


def default_max_terms(r: int) -> int:
    return 1 << max(TERM_BUDGET_LOG2 // r, 1)


@dataclass(frozen=True)
class EvalRequest:
    matrix: SigmaMatrix
    s: tuple
    rel_tol: float = DEFAULT_REL_TOL
    max_terms_per_axis: int | None = None
    extrapolate: bool = True

    def __post_init__(self):
        if len(self.s) != self.matrix.rows:
            raise DimensionMismatch(self.matrix.rows, len(self.s), "exponent vector")
        if not self.rel_tol > 0:
            raise InvalidParameter(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_terms_per_axis is not None and self.max_terms_per_axis < 1:
            raise InvalidParameter("max_terms_per_axis must be at least 1")

    @property
    def axis_cap(self) -> int:
        return self.max_terms_per_axis or default_max_terms(self.matrix.cols)


@dataclass(frozen=True)
class EvalResult:
    value: complex
    error_estimate: float
    terms_used: int
    converged: bool
    # raw box sum at the largest cutoff reached
    partial_sum: complex
    cutoff: int

    def to_json(self) -> dict:
        return {
            "value": _num_json(self.value),
            "error_estimate": self.error_estimate if math.isfinite(self.error_estimate) else None,
            "terms_used": self.terms_used,
            "converged": self.converged,
            "partial_sum": _num_json(self.partial_sum),
            "cutoff": self.cutoff,
        }


def _num_json(z):
    z = complex(z)
    if z.imag == 0:
        return z.real
    return {"re": z.real, "im": z.imag}


def _shell_sum(a: np.ndarray, s: np.ndarray, lo: int, hi: int) -> complex:
    """Sum over ``m in {1..hi}^r`` minus ``{1..lo}^r``, chunked along the first axis."""
    n, r = a.shape
    real = bool(np.all(s.imag == 0))
    sr = s.real if real else s
    rest = hi ** (r - 1)
    step = max(1, CHUNK_TERMS // max(rest, 1))
    parts_re, parts_im = [], []
    tail_axes = [np.arange(1, hi + 1, dtype=float)] * (r - 1)
    for start in range(1, hi + 1, step):
        first = np.arange(start, min(start + step, hi + 1), dtype=float)
        grids = np.meshgrid(first, *tail_axes, indexing="ij")
        m = np.stack([g.ravel() for g in grids])          # r x K
        if lo:
            keep = (m > lo).any(axis=0)
            if not keep.any():
                continue
            m = m[:, keep]
        logs = np.log(a @ m)                               # n x K
        expo = -(sr[:, None] * logs).sum(axis=0)
        terms = np.exp(expo)
        if real:
            parts_re.append(terms)
        else:
            parts_re.append(terms.real)
            parts_im.append(terms.imag)
    re = math.fsum(np.concatenate(parts_re)) if parts_re else 0.0
    im = math.fsum(np.concatenate(parts_im)) if parts_im else 0.0
    return complex(re, im)


def wynn_epsilon(seq: Sequence[complex]) -> complex:
    """Wynn epsilon estimate: last entry of the deepest even column.

    A difference that vanishes to rounding means the sequence has already
    settled, so the table stops growing there.
    """
    if not seq:
        raise ValueError("empty sequence")
    prev = [0.0] * (len(seq) + 1)
    cur = list(seq)
    best = cur[-1]
    k = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if abs(d) <= 1e-15 * max(abs(cur[i + 1]), 1e-300):
                return best
            nxt.append(prev[i + 1] + 1.0 / d)
        prev, cur = cur, nxt
        k += 1
        if k % 2 == 0:
            best = cur[-1]
    return best


def eval_zeta(req: EvalRequest) -> EvalResult:
    a = req.matrix
    sigma = [complex(x).real for x in req.s]
    report = enumerate_pole_families(a)
    bad = report.convergence.first_violated(sigma)
    if bad is not None:
        raise OutsideConvergenceRegion(bad.describe())

    arr = np.asarray(a.array, dtype=float)
    s = np.array([complex(x) for x in req.s])
    real = bool(np.all(s.imag == 0))
    cap = req.axis_cap

    partial: list = []
    estimates: list = []
    total = 0.0 + 0.0j
    shells: list = []
    lo, hi = 0, 1
    error = math.inf
    converged = False
    while hi <= cap:
        shells.append(_shell_sum(arr, s, lo, hi))
        total = complex(math.fsum(z.real for z in shells), math.fsum(z.imag for z in shells))
        partial.append(total)
        est = wynn_epsilon(partial) if req.extrapolate else total
        if real and req.extrapolate:
            # terms are positive, so the limit is at least the box sum
            est = complex(max(est.real, total.real), 0.0)
        estimates.append(est)
        if len(estimates) >= 3:
            error = max(abs(estimates[-1] - estimates[-2]), abs(estimates[-2] - estimates[-3]))
            if not req.extrapolate:
                error = abs(estimates[-1] - estimates[-2])
            if len(partial) >= MIN_DOUBLINGS and error <= req.rel_tol * abs(est):
                converged = True
                break
        lo, hi = hi, hi * 2
    value = estimates[-1]
    cutoff = hi if converged else lo
    if real:
        value, total = complex(value.real, 0.0), complex(total.real, 0.0)
    return EvalResult(value, float(error), cutoff ** a.cols, converged, total, cutoff)


def zeta_value(entries, s, **kw) -> EvalResult:
    """Convenience wrapper: validate ``entries`` and evaluate at ``s``."""
    a = entries if isinstance(entries, SigmaMatrix) else validate_matrix(entries)
    if np.ndim(s) == 0:
        s = (s,)
    return eval_zeta(EvalRequest(a, tuple(s), **kw))


def eval_kernel(a: SigmaMatrix, eps: Sequence[float]) -> float:
    """``prod_j e^{-C_j}/(1 - e^{-C_j}) = prod_j 1/expm1(C_j)`` with ``C_j = sum_i a_ij eps_i``."""
    if len(eps) != a.rows:
        raise DimensionMismatch(a.rows, len(eps), "epsilon vector")
    for i, e in enumerate(eps):
        if not e > 0:
            raise NonpositiveEpsilon(f"eps_{i + 1} = {e!r} must be positive")
    out = 1.0
    for j in range(a.cols):
        c = math.fsum(a.entries[i][j] * eps[i] for i in range(a.rows))
        out /= math.expm1(c)
    return out


def _gauss_composite(f, lo: float, hi: float, points: int, order: int = 10) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    panels = max(1, points // order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return math.fsum(w * f(x))


def _bose(eps: np.ndarray) -> np.ndarray:
    # eps / (e^eps - 1), equal to 1 at eps = 0
    out = np.ones_like(eps)
    nz = eps != 0
    out[nz] = eps[nz] / np.expm1(eps[nz])
    return out


def mellin_cross_check_1d(s: float, quad_points: int = 10000, cutoff: float = 40.0) -> dict:
    """Compare ``zeta(s) Gamma(s)`` with ``int_0^cutoff eps^{s-1}/(e^eps - 1) d eps``.

    On ``[0, 1]`` the integrand is ``eps^{s-2} h(eps)`` with smooth ``h``; for
    ``s < 2`` the substitution ``u = eps^{s-1}`` removes the endpoint singularity.
    """
    s = float(s)
    if not s > 1:
        raise InvalidParameter(f"s must exceed 1 (zeta has its pole at 1), got {s!r}")
    if quad_points < 2 or not cutoff > 1:
        raise InvalidParameter("quad_points must be at least 2 and cutoff must exceed 1")

    lhs = zeta_value([[1.0]], s).value.real * math.gamma(s)
    half = quad_points // 2
    if s < 2:
        p = 1.0 / (s - 1.0)
        head = _gauss_composite(lambda u: _bose(u ** p), 0.0, 1.0, half) / (s - 1.0)
    else:
        head = _gauss_composite(lambda e: e ** (s - 2.0) * _bose(e), 0.0, 1.0, half)
    tail = _gauss_composite(lambda e: e ** (s - 1.0) / np.expm1(e), 1.0, cutoff, quad_points - half)
    rhs = head + tail
    return {"s": s, "lhs": lhs, "rhs": rhs, "abs_diff": abs(lhs - rhs)}
