"""Exact relative projection constants via linear programming.

The minimal operator norm of a projection of l1^d (or linf^d) onto a
subspace E = range(V) is a linear program: every projection with range E
factors as Q = V M with M V = I_n, the entrywise absolute values are
linearized with auxiliary variables, and the max column (row) absolute
sum becomes a single bound variable.  Trace duality supplies certified
lower bounds: any A with nu1(A) = 1 and AP = PAP (P the orthogonal
projection onto E) proves Tr(AP) <= Pi(E, F).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._simplex import solve_lp
from .errors import (InvariantViolation, NumericalError, PreconditionError,
                     WitnessConstraintError, WitnessNormalizationError)
from .eigsum import kyfan_sum
from .matcore import SignMatrix, _entries_of, eig_sym

_SPACES = ("l1", "linf")


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """An n-dimensional subspace of R^d given by linearly independent
    basis columns."""

    V: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.V, dtype=float)
        if v.ndim != 2 or v.shape[0] < v.shape[1] or v.shape[1] == 0:
            raise PreconditionError(
                f"basis must be d x n with d >= n >= 1, got {v.shape}")
        smin = float(np.linalg.svd(v, compute_uv=False).min())
        if smin <= 1e-10:
            raise InvariantViolation("basis linear independence", smin,
                                     detail="smallest singular value")
        vv = np.ascontiguousarray(v)
        vv.flags.writeable = False
        object.__setattr__(self, "V", vv)

    @property
    def d(self) -> int:
        return self.V.shape[0]

    @property
    def n(self) -> int:
        return self.V.shape[1]

    def orthogonal_projection(self) -> np.ndarray:
        q, _ = np.linalg.qr(self.V)
        return q @ q.T

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n,
                "columns": [list(map(float, self.V[:, j]))
                            for j in range(self.n)]}

    @classmethod
    def from_json(cls, obj: dict) -> "SubspaceBasis":
        if not isinstance(obj, dict) or "columns" not in obj:
            raise PreconditionError('basis JSON must have key "columns"')
        cols = np.asarray(obj["columns"], dtype=float)
        if cols.ndim != 2:
            raise PreconditionError("basis columns must form a 2-d array")
        v = cols.T
        if "d" in obj and int(obj["d"]) != v.shape[0]:
            raise PreconditionError("basis JSON d does not match columns")
        if "n" in obj and int(obj["n"]) != v.shape[1]:
            raise PreconditionError("basis JSON n does not match columns")
        return cls(v)


@dataclass(frozen=True, eq=False)
class DualityWitness:
    """A validated trace-duality witness: nu1(A) = 1 and AP = PAP, so
    value = Tr(AP) is a certified lower bound for the projection
    constant."""

    A: np.ndarray
    space: str
    value: float


def _check_space(space: str) -> str:
    if space not in _SPACES:
        raise PreconditionError(f"space must be one of {_SPACES}")
    return space


def nu1(a, space: str) -> float:
    """1-nuclear norm: sum of column-wise max-abs entries for linf,
    sum of row-wise max-abs entries for l1."""
    m = np.asarray(_entries_of(a), dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError("nu1 requires a square matrix")
    _check_space(space)
    if space == "linf":
        return float(np.abs(m).max(axis=0).sum())
    return float(np.abs(m).max(axis=1).sum())


def operator_norm(q, space: str) -> float:
    """Induced operator norm on l1 (max column abs-sum) or linf (max row
    abs-sum)."""
    m = np.abs(np.asarray(_entries_of(q), dtype=float))
    _check_space(space)
    return float(m.sum(axis=0).max() if space == "l1" else m.sum(axis=1).max())


def min_projection_norm(basis: SubspaceBasis, space: str) -> tuple[float, np.ndarray]:
    """Minimal operator norm among projections of the overspace onto the
    subspace, together with a minimizing projection matrix Q."""
    _check_space(space)
    v = basis.V
    d, n = basis.d, basis.n
    nd = n * d
    nb = d * d
    nvars = 2 * nd + nb + 1
    off_mm, off_b, off_t = nd, 2 * nd, 2 * nd + nb

    # MV = I_n
    a_eq = np.zeros((n * n, nvars))
    b_eq = np.zeros(n * n)
    for aa in range(n):
        for bb in range(n):
            row = a_eq[aa * n + bb]
            for j in range(d):
                row[aa * d + j] = v[j, bb]
                row[off_mm + aa * d + j] = -v[j, bb]
            b_eq[aa * n + bb] = 1.0 if aa == bb else 0.0

    # +-(VM)_ij <= B_ij and per-column (or per-row) sums <= t
    a_ub = np.zeros((2 * nb + d, nvars))
    b_ub = np.zeros(2 * nb + d)
    for i in range(d):
        for j in range(d):
            r1 = a_ub[i * d + j]
            r2 = a_ub[nb + i * d + j]
            for aa in range(n):
                r1[aa * d + j] = v[i, aa]
                r1[off_mm + aa * d + j] = -v[i, aa]
                r2[aa * d + j] = -v[i, aa]
                r2[off_mm + aa * d + j] = v[i, aa]
            r1[off_b + i * d + j] = -1.0
            r2[off_b + i * d + j] = -1.0
    for k in range(d):
        row = a_ub[2 * nb + k]
        if space == "l1":
            for i in range(d):
                row[off_b + i * d + k] = 1.0  # column k
        else:
            for j in range(d):
                row[off_b + k * d + j] = 1.0  # row k
        row[off_t] = -1.0

    c = np.zeros(nvars)
    c[off_t] = 1.0
    res = solve_lp(c, a_eq, b_eq, a_ub, b_ub)

    m = (res.x[:nd] - res.x[off_mm:off_mm + nd]).reshape(n, d)
    q = v @ m
    if float(np.abs(q @ v - v).max()) > 1e-8:
        raise NumericalError("LP projection does not fix the subspace")
    if float(np.abs(q @ q - q).max()) > 1e-8:
        raise NumericalError("LP projection is not idempotent")
    value = operator_norm(q, space)
    if abs(value - res.value) > 1e-7:
        raise NumericalError(
            f"LP bound {res.value:.12g} inconsistent with achieved norm "
            f"{value:.12g}")
    return value, q


def trace_certificate(a, basis: SubspaceBasis, space: str) -> DualityWitness:
    """Validate a trace-duality witness and return its certified value.

    Requires nu1(A) = 1 within 1e-9 and AP = PAP within 1e-8 where P is
    the orthogonal projection onto the subspace.
    """
    m = np.asarray(_entries_of(a), dtype=float)
    _check_space(space)
    norm = nu1(m, space)
    if abs(norm - 1.0) > 1e-9:
        raise WitnessNormalizationError(
            f"nu1(A) = {norm:.12g}, expected 1 within 1e-9")
    p = basis.orthogonal_projection()
    defect = float(np.abs(m @ p - p @ m @ p).max())
    if defect > 1e-8:
        raise WitnessConstraintError(
            f"AP = PAP violated by {defect:.3e} (tolerance 1e-8)")
    return DualityWitness(m, space, float(np.trace(m @ p)))


@dataclass(frozen=True, eq=False)
class AttainmentResult:
    attained: bool
    equalities_hold: bool
    E: SubspaceBasis
    value: float
    op_norm_l1: float
    lp_value: float
    rho: float
    mean_abs_sum: float


def attainment_check(s: SignMatrix, n: int, reference: float | None = None,
                     tol: float = 1e-7) -> AttainmentResult:
    """Check whether a sign matrix realizes its normalized Ky Fan value as
    a relative projection constant.

    Builds the Ky Fan maximizer P of S at rank n, takes E = range(P) in
    l1^d, and tests the equality chain
    op_norm_l1(P) = min_projection_norm(E, l1) = rho(|P|) = mean abs sum.
    ``value`` is pi_n(S) / d.  When ``reference`` is given (a known or
    searched maximal value for the same (n, d)), attainment additionally
    requires value >= reference - tol.
    """
    d = s.d
    ky_value, p = kyfan_sum(s, n)
    value = ky_value / d
    basis = SubspaceBasis(eig_sym(s.entries).eigenvectors[:, :n])
    op = operator_norm(p.entries, "l1")
    lp_value, _ = min_projection_norm(basis, "l1")
    rho = float(eig_sym(p.abs_entries()).eigenvalues[0])
    mean_abs = float(np.abs(p.entries).sum()) / d
    quantities = (op, lp_value, rho, mean_abs)
    equalities = max(quantities) - min(quantities) <= tol
    attained = equalities and (reference is None or value >= reference - tol)
    return AttainmentResult(bool(attained), bool(equalities), basis, value,
                            op, lp_value, rho, mean_abs)
