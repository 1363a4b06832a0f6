"""Simultaneous rational approximation of Perron weights.

Dirichlet's theorem guarantees, for any target quality k, a denominator
q < k^(m-1) with |q * w_i - round(q * w_i)| <= 1/k for the first m-1
weights.  The smallest such q is found by a linear scan; the last
multiplicity is defined residually so the p_i sum to q exactly.  The
resulting multiplicities feed the blow-up construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, ResourceExhausted

DEFAULT_Q_CAP = 10**6
_SCAN_CHUNK = 1 << 17


@dataclass(frozen=True)
class RationalWeights:
    """Positive integer multiplicities p with sum q approximating a weight
    vector to quality 1/k (on the first m-1 coordinates)."""

    p: tuple[int, ...]
    q: int
    k: int
    max_err: float    # max_i |w_i - p_i/q| over i < m
    total_err: float  # sum_i |w_i - p_i/q| over all i

    def __post_init__(self):
        if sum(self.p) != self.q:
            raise PreconditionError("multiplicities must sum to q")
        if any(x < 1 for x in self.p):
            raise PreconditionError("multiplicities must be >= 1")


def choose_k(n: int, m: int, eps: float, eps0: float) -> int:
    """Smallest integer k strictly above 4 (m-1) sqrt(n) / (eps * eps0).

    sqrt(n) is a valid upper bound for the maximal projection constant of
    order n, which makes the quality parameter computable.
    """
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be positive")
    if eps <= 0 or eps0 <= 0:
        raise PreconditionError("eps and eps0 must be positive")
    bound = 4.0 * (m - 1) * math.sqrt(n) / (eps * eps0)
    return max(1, int(math.floor(bound)) + 1)


def dirichlet_approx(weights, k: int, q_cap: int | None = None) -> RationalWeights:
    """Smallest denominator q <= q_cap with
    max_{i<m} |q w_i - round(q w_i)| <= 1/k, together with the rounded
    multiplicities (the last one residual).

    Ties in round() go to even.  Raises ResourceExhausted (reporting the
    best q seen) when the cap runs out, and a precondition error when some
    multiplicity comes out nonpositive, which signals that k is too small
    for these weights.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise PreconditionError("weights must be a nonempty vector")
    if np.any(w <= 0):
        raise PreconditionError("weights must be strictly positive")
    if abs(float(w.sum()) - 1.0) > 1e-12:
        raise PreconditionError("weights must sum to one within 1e-12")
    if k < 1:
        raise PreconditionError("k must be >= 1")
    m = w.size
    if q_cap is None:
        q_cap = min(k ** max(m - 1, 1), DEFAULT_Q_CAP)
    q_cap = int(q_cap)
    if q_cap < 1:
        raise PreconditionError("q_cap must be >= 1")

    head = w[:-1]
    target = 1.0 / k
    best_q, best_err = 0, np.inf
    found_q = 0
    for lo in range(1, q_cap + 1, _SCAN_CHUNK):
        qs = np.arange(lo, min(lo + _SCAN_CHUNK, q_cap + 1), dtype=float)
        if head.size:
            prod = qs[:, None] * head[None, :]
            errs = np.abs(prod - np.round(prod)).max(axis=1)
        else:
            errs = np.zeros(qs.size)
        hit = np.nonzero(errs <= target)[0]
        i = int(np.argmin(errs))
        if errs[i] < best_err:
            best_err, best_q = float(errs[i]), int(qs[i])
        if hit.size:
            found_q = int(qs[hit[0]])
            break
    if not found_q:
        raise ResourceExhausted(
            f"no q <= {q_cap} reaches quality 1/{k} "
            f"(best q={best_q} with error {best_err:.3e})",
            best_q=best_q, best_err=best_err)

    q = found_q
    p_head = [int(x) for x in np.round(q * head)]
    p_last = q - sum(p_head)
    p = tuple(p_head + [p_last])
    if any(x < 1 for x in p):
        raise PreconditionError(
            f"rounded multiplicity nonpositive at q={q}: {p} "
            "(k too small for these weights)")
    approx = np.asarray(p, dtype=float) / q
    max_err = float(np.abs(w[:-1] - approx[:-1]).max()) if m > 1 else 0.0
    total_err = float(np.abs(w - approx).sum())
    return RationalWeights(p, q, k, max_err, total_err)
