"""Dense symmetric linear algebra and Perron-Frobenius utilities.

Provides the matrix classes used everywhere else (symmetric matrices, sign
matrices, simplex weight vectors, rank-n orthogonal projections, spectra,
sign patterns) together with the spectral primitives: a deterministic
symmetric eigensolver wrapper, Perron pairs of positive matrices, sign
patterns with a zero threshold, projection validation, and absolute
row-sum statistics.

All values are immutable after construction and safe to share across
threads; every operation is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, NumericalError, PreconditionError

# Zero threshold for sign patterns.  The exact-arithmetic notion of a zero
# entry needs a cutoff in floating point; overridable per call.
SIGN_ZERO_TOL = 1e-9

DEFAULT_TOL = 1e-9

# Above this dimension the Perron pair switches from a full eigensolve to
# power iteration, and projection constructors switch to probe-based
# idempotence checks.
_DENSE_SPECTRUM_LIMIT = 512

_POWER_RESIDUAL_TOL = 1e-12
_POWER_MAX_ITER = 100_000


def _as_square_array(entries, name: str = "matrix") -> np.ndarray:
    a = np.asarray(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError(f"{name} contains non-finite entries")
    return a


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """A real symmetric d x d matrix; construction symmetrizes exactly."""

    entries: np.ndarray

    def __post_init__(self):
        a = _as_square_array(self.entries, "SymMatrix")
        # (a + a.T)/2 is exactly symmetric in floating point.
        object.__setattr__(self, "entries", _freeze(0.5 * (a + a.T)))

    @property
    def d(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class SignMatrix:
    """Symmetric matrix with entries in {-1,+1} and ones on the diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        a = _as_square_array(self.entries, "SignMatrix")
        if not np.array_equal(a, a.T):
            raise InvariantViolation("sign matrix symmetry")
        if not np.all(np.abs(a) == 1.0):
            raise InvariantViolation("sign matrix entries in {-1,+1}")
        if not np.all(np.diag(a) == 1.0):
            raise InvariantViolation("sign matrix unit diagonal")
        object.__setattr__(self, "entries", _freeze(a))

    @property
    def d(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Nonnegative diagonal weights summing to one (a simplex point)."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise PreconditionError("weights must be a nonempty vector")
        if np.any(w < 0):
            raise InvariantViolation("weight nonnegativity", float(-w.min()))
        s = float(w.sum())
        if abs(s - 1.0) > 1e-12:
            raise InvariantViolation("weights sum to one", abs(s - 1.0))
        object.__setattr__(self, "w", _freeze(w))

    @property
    def d(self) -> int:
        return self.w.size

    def is_strictly_positive(self) -> bool:
        return bool(np.all(self.w > 0))


@dataclass(frozen=True, eq=False)
class OrthoProjection:
    """Symmetric idempotent d x d matrix of rank n.

    Construct through :func:`validate_projection` for the full invariant
    check with violation reporting; the constructor itself performs the
    cheap checks (symmetry, idempotence, trace) so that internally built
    projectors are still guarded.  For d above the dense-spectrum limit
    idempotence is checked on random probe vectors instead of via a full
    matrix product.
    """

    entries: np.ndarray
    n: int

    def __post_init__(self):
        p = _as_square_array(self.entries, "OrthoProjection")
        tol = DEFAULT_TOL
        sym = float(np.abs(p - p.T).max())
        if sym > tol:
            raise InvariantViolation("projection symmetry", sym)
        if p.shape[0] <= _DENSE_SPECTRUM_LIMIT:
            idem = float(np.abs(p @ p - p).max())
        else:
            rng = np.random.default_rng(0)
            x = rng.standard_normal((p.shape[0], 8))
            idem = float(np.abs(p @ (p @ x) - p @ x).max())
        if idem > tol:
            raise InvariantViolation("projection idempotence", idem)
        tr = float(np.trace(p))
        if abs(tr - self.n) > max(tol, 1e-9 * p.shape[0]):
            raise InvariantViolation("projection trace equals rank",
                                     abs(tr - self.n))
        object.__setattr__(self, "entries", _freeze(p))

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    def abs_entries(self) -> np.ndarray:
        return np.abs(self.entries)

    def abs_is_positive(self, tol: float = SIGN_ZERO_TOL) -> bool:
        """True when every entry of |P| is strictly positive.

        Entries at or below ``tol`` count as zeros, consistent with the
        sign-pattern threshold; matrices that are positive only at
        roundoff scale behave like reducible ones and must not reach the
        Perron machinery.
        """
        return bool(np.all(np.abs(self.entries) > tol))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted descending with matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, eigenvectors[:, i] for eigenvalues[i]

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float)
        v = np.asarray(self.eigenvectors, dtype=float)
        if w.ndim != 1 or v.shape != (w.size, w.size):
            raise PreconditionError("spectrum shape mismatch")
        if np.any(np.diff(w) > 0):
            raise InvariantViolation("eigenvalues sorted descending")
        object.__setattr__(self, "eigenvalues", _freeze(w))
        object.__setattr__(self, "eigenvectors", _freeze(v))

    @property
    def d(self) -> int:
        return self.eigenvalues.size

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


@dataclass(frozen=True, eq=False)
class SignPattern:
    """Matrix of {-1, 0, +1} entries from thresholded signs."""

    entries: np.ndarray  # int8

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.int8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise PreconditionError("sign pattern must be square")
        if not np.all(np.isin(a, (-1, 0, 1))):
            raise InvariantViolation("sign pattern entries in {-1,0,+1}")
        object.__setattr__(self, "entries", _freeze(a))

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    def to_sign_matrix(self) -> SignMatrix:
        """Replace zeros by +1 and return the completed sign matrix."""
        a = np.where(self.entries == 0, 1, self.entries).astype(float)
        a = np.minimum(a, a.T)  # keep symmetry if the source was asymmetric
        np.fill_diagonal(a, 1.0)
        return SignMatrix(a)


def _entries_of(m) -> np.ndarray:
    if isinstance(m, (SymMatrix, SignMatrix, OrthoProjection)):
        return m.entries
    return np.asarray(m, dtype=float)


def eig_sym(a) -> Spectrum:
    """Full spectral decomposition of a symmetric matrix.

    Eigenvalues are returned in descending order.  Each eigenvector is
    normalized so that its first coordinate of magnitude above 1e-9 is
    positive, which makes every downstream search reproducible.
    """
    m = _as_square_array(_entries_of(a), "eig_sym input")
    m = 0.5 * (m + m.T)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"symmetric eigensolver did not converge: {exc}")
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    # Deterministic sign convention: first sufficiently-nonzero coordinate
    # of each eigenvector is positive.
    lead = np.argmax(np.abs(v) > 1e-9, axis=0)
    flip = v[lead, np.arange(v.shape[1])] < 0
    v[:, flip] *= -1.0
    return Spectrum(w, v)


def _power_iteration(m: np.ndarray) -> tuple[float, np.ndarray]:
    d = m.shape[0]
    v = np.full(d, 1.0 / np.sqrt(d))
    rho = 0.0
    for _ in range(_POWER_MAX_ITER):
        mv = m @ v
        nv = float(np.linalg.norm(mv))
        if nv == 0.0:
            raise NumericalError("power iteration collapsed to zero vector")
        v = mv / nv
        rho = float(v @ (m @ v))
        if float(np.linalg.norm(m @ v - rho * v)) <= _POWER_RESIDUAL_TOL:
            return rho, v
    raise NumericalError(
        f"power iteration did not reach residual {_POWER_RESIDUAL_TOL:g} "
        f"within {_POWER_MAX_ITER} iterations")


def perron(m) -> tuple[float, np.ndarray]:
    """Perron pair (spectral radius, positive unit eigenvector) of a
    strictly positive matrix.

    Uses the full spectrum for d <= 512 (robust near degenerate gaps) and
    power iteration with a Rayleigh-quotient stopping rule above.
    """
    a = _as_square_array(_entries_of(m), "perron input")
    if not np.all(a > 0):
        raise PreconditionError("perron requires a strictly positive matrix")
    d = a.shape[0]
    if d <= _DENSE_SPECTRUM_LIMIT:
        if np.array_equal(a, a.T):
            spec = eig_sym(a)
            rho = float(spec.eigenvalues[0])
            v = spec.eigenvectors[:, 0].copy()
        else:
            w, vs = np.linalg.eig(a)
            i = int(np.argmax(w.real))
            rho = float(w[i].real)
            v = vs[:, i].real.copy()
        if v.sum() < 0:
            v = -v
    else:
        rho, v = _power_iteration(a)
    if np.any(v <= 0):
        # One application of the positive matrix makes any nonnegative
        # nonzero eigenvector strictly positive without changing it.
        v = a @ v
    v = v / float(np.linalg.norm(v))
    residual = float(np.linalg.norm(a @ v - rho * v))
    if residual > 1e-10:
        raise NumericalError(f"Perron residual {residual:.3e} exceeds 1e-10")
    if np.any(v <= 0):
        raise NumericalError("Perron vector is not strictly positive")
    return rho, _freeze(v)


def sign_pattern(a, tau: float = SIGN_ZERO_TOL) -> SignPattern:
    """Thresholded sign pattern: -1 below -tau, 0 within [-tau, tau],
    +1 above tau."""
    m = np.asarray(_entries_of(a), dtype=float)
    out = np.zeros(m.shape, dtype=np.int8)
    out[m > tau] = 1
    out[m < -tau] = -1
    return SignPattern(out)


def validate_projection(p, n: int, tol: float = DEFAULT_TOL) -> OrthoProjection:
    """Check all orthogonal-projection invariants of ``p`` at tolerance
    ``tol`` and return the typed value; raise naming the worst violation
    otherwise.

    Symmetry, idempotence and trace are checked at ``tol``; eigenvalue
    proximity to {0, 1} at ``10 * tol`` (matching the 1e-9 / 1e-8 default
    split).
    """
    a = _as_square_array(_entries_of(p), "projection candidate")
    if not (0 <= n <= a.shape[0]):
        raise PreconditionError(f"rank {n} out of range for d={a.shape[0]}")
    checks: list[tuple[str, float, float]] = []
    checks.append(("symmetry", float(np.abs(a - a.T).max()), tol))
    checks.append(("idempotence", float(np.abs(a @ a - a).max()), tol))
    checks.append(("trace equals rank", abs(float(np.trace(a)) - n), tol))
    evals = np.linalg.eigvalsh(0.5 * (a + a.T))
    eig_dev = float(np.abs(evals - np.round(evals)).max())
    on_01 = float(np.max(np.minimum(np.abs(evals), np.abs(evals - 1.0))))
    checks.append(("eigenvalues in {0,1}", max(eig_dev, on_01), 10 * tol))
    worst = max(checks, key=lambda c: c[1] / c[2])
    if worst[1] > worst[2]:
        raise InvariantViolation(worst[0], worst[1],
                                 detail=f"tolerance {worst[2]:g}")
    return OrthoProjection(0.5 * (a + a.T), n)


@dataclass(frozen=True)
class RowSumStats:
    r: float
    R: float
    gap: float


def row_sum_stats(p) -> RowSumStats:
    """Smallest and largest absolute row sums of a matrix, and their gap."""
    a = np.abs(_entries_of(p))
    sums = a.sum(axis=1)
    r = float(sums.min())
    big = float(sums.max())
    return RowSumStats(r, big, big - r)


# ---------------------------------------------------------------------------
# Matrix JSON format: {"d": int, "rows": [[...], ...]}.  Python's float
# repr round-trips bit-exactly, so writers emit full precision.

def matrix_to_json(a) -> dict:
    m = _as_square_array(_entries_of(a), "matrix")
    return {"d": int(m.shape[0]), "rows": [list(map(float, row)) for row in m]}


def matrix_from_json(obj: dict) -> np.ndarray:
    if not isinstance(obj, dict) or "d" not in obj or "rows" not in obj:
        raise PreconditionError('matrix JSON must have keys "d" and "rows"')
    d = int(obj["d"])
    a = np.asarray(obj["rows"], dtype=float)
    if a.shape != (d, d):
        raise PreconditionError(
            f'matrix JSON rows have shape {a.shape}, expected ({d}, {d})')
    return a
