"""Graph blow-ups of sign matrices and their weighted spectral identity.

Replacing vertex i of the graph encoded by a sign matrix S (edge iff entry
-1) with p_i mutually non-adjacent copies yields the blown-up sign matrix
S' = Z S Z^t, where Z is the block indicator.  The nonzero eigenvalues of
S' equal those of sqrt(P) S sqrt(P) with P = diag(p_i); consequently
pi_n(S') = d * pi_n(sqrt(L) S sqrt(L)) for L = diag(p_i / d), d = sum p_i.
Eigenvectors of the small weighted matrix lift to block-constant
eigenvectors of S', which lets callers form Ky Fan maximizers of huge
blow-ups without dense d x d eigensolves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .matcore import SignMatrix, SymMatrix


@dataclass(frozen=True, eq=False)
class BlowupSpec:
    """A base sign matrix together with one positive multiplicity per
    vertex."""

    base: SignMatrix
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.multiplicities)
        if len(p) != self.base.d:
            raise PreconditionError(
                f"need {self.base.d} multiplicities, got {len(p)}")
        if any(x < 1 for x in p):
            raise PreconditionError("multiplicities must be >= 1")
        object.__setattr__(self, "multiplicities", p)

    @property
    def m(self) -> int:
        return self.base.d

    @property
    def d(self) -> int:
        return sum(self.multiplicities)


def blow_up(spec: BlowupSpec) -> SignMatrix:
    """The blown-up d x d sign matrix.

    Block (i, j) is constantly s_ij for i != j; diagonal blocks are
    constantly +1 because copies of a vertex are non-adjacent.
    """
    p = np.asarray(spec.multiplicities)
    s = spec.base.entries
    big = np.repeat(np.repeat(s, p, axis=0), p, axis=1)
    # s_ii = +1 already, so diagonal blocks come out all +1.
    return SignMatrix(big)


def weighted_equivalent(spec: BlowupSpec) -> SymMatrix:
    """sqrt(L) S sqrt(L) with L = diag(p_i / d); satisfies
    pi_n(blow_up(spec)) = d * pi_n(weighted_equivalent(spec)) for all n."""
    p = np.asarray(spec.multiplicities, dtype=float)
    sq = np.sqrt(p / p.sum())
    return SymMatrix(spec.base.entries * sq[:, None] * sq[None, :])


def lift_eigenvectors(spec: BlowupSpec, vectors: np.ndarray) -> np.ndarray:
    """Lift eigenvectors of sqrt(P) S sqrt(P) (equivalently of
    weighted_equivalent, which has the same eigenvectors) to block-constant
    eigenvectors of the blow-up.

    An orthonormal input stays orthonormal; an eigenvector with eigenvalue
    mu of sqrt(P) S sqrt(P) lifts to eigenvalue mu of the blow-up (which is
    d * the corresponding eigenvalue of weighted_equivalent).
    """
    u = np.asarray(vectors, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
    if u.shape[0] != spec.m:
        raise PreconditionError(
            f"vectors have {u.shape[0]} rows, base has {spec.m} vertices")
    p = np.asarray(spec.multiplicities)
    scaled = u / np.sqrt(p.astype(float))[:, None]
    return np.repeat(scaled, p, axis=0)
