"""Lower bounds and small-dimension exact values of the maximal relative
projection constant.

The objective is pi_n(sqrt(D) S sqrt(D)) over sign matrices S and simplex
weights D.  Exhaustive search enumerates one representative per graph
isomorphism class of sign matrices (the objective is invariant under
simultaneous row/column permutation) and optimizes the weights per
representative with the alternating ascent:

  (i)   P  <- Ky Fan maximizer of sqrt(D) S sqrt(D),
  (ii)  S  <- sign pattern of P with zeros replaced by +1,
  (iii) D  <- squared Perron vector of |P| when |P| is strictly positive.

Each step maximizes the same bilinear functional, so the objective never
decreases; fixed points are reported as converged.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import GuardRefusal, PreconditionError
from .eigsum import kyfan_sum
from .matcore import (OrthoProjection, SIGN_ZERO_TOL, SignMatrix,
                      WeightVector, matrix_to_json, perron, sign_pattern)

EXHAUSTIVE_MAX_D = 7
_RESTART_SEED = 20240913
_FIXED_POINT_WEIGHT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Best (S, D) pair found, with the Ky Fan maximizer P of
    sqrt(D) S sqrt(D), the objective value, and convergence data."""

    S: SignMatrix
    D: WeightVector
    value: float
    P: OrthoProjection
    iterations: int
    converged: bool
    history: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "S": matrix_to_json(self.S)["rows"],
            "D": list(map(float, self.D.w)),
            "P": matrix_to_json(self.P)["rows"],
            "iterations": self.iterations,
            "converged": self.converged,
        }


def gruenbaum_floor(n: int) -> float:
    """Strict lower bound sqrt(2/pi) * sqrt(n) on the maximal projection
    constant of order n (the Euclidean space already exceeds it)."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    return float(np.sqrt(2.0 / np.pi) * np.sqrt(n))


def _weighted(s: SignMatrix, w: np.ndarray) -> np.ndarray:
    sq = np.sqrt(w)
    return s.entries * sq[:, None] * sq[None, :]


def alternate_maximize(n: int, s0: SignMatrix, d0: WeightVector,
                       max_iter: int = 200, tol: float = 1e-11) -> SearchResult:
    """Alternating ascent from (s0, d0); see the module docstring for the
    update steps.  Non-convergence within max_iter is reported via
    converged=False, never raised."""
    if not (1 <= n <= s0.d):
        raise PreconditionError(f"n={n} out of range 1..{s0.d}")
    if d0.d != s0.d:
        raise PreconditionError("weight dimension does not match sign matrix")
    if not d0.is_strictly_positive():
        raise PreconditionError("initial weights must be strictly positive")
    if max_iter < 1:
        raise PreconditionError("max_iter must be >= 1")

    s, w = s0, np.asarray(d0.w, dtype=float)
    history: list[float] = []
    prev_value = -np.inf
    converged = False
    iterations = 0
    value, p = 0.0, None
    for iterations in range(1, max_iter + 1):
        value, p = kyfan_sum(_weighted(s, w), n)
        history.append(value)
        s_next = sign_pattern(p.entries, SIGN_ZERO_TOL).to_sign_matrix()
        if p.abs_is_positive():
            _, v = perron(p.abs_entries())
            w_next = v * v
            w_next = w_next / w_next.sum()
        else:
            w_next = w
        same_signs = np.array_equal(s_next.entries, s.entries)
        same_weights = float(np.abs(w_next - w).max()) <= _FIXED_POINT_WEIGHT_TOL
        if same_signs and same_weights:
            converged = True
            break
        if abs(value - prev_value) <= tol:
            converged = True
            break
        s, w, prev_value = s_next, w_next, value
    return SearchResult(s, WeightVector(w), value, p, iterations, converged,
                        tuple(history))


# ---------------------------------------------------------------------------
# Enumeration of sign matrices up to graph isomorphism.
#
# The upper triangle of S is encoded as an integer with the (0,1) slot as
# the most significant bit and bit 1 meaning entry +1; with this encoding
# integer order coincides with lexicographic order on upper-triangle sign
# vectors (-1 < +1), so the minimum over all vertex permutations is both a
# canonical form and the lexicographically smallest class member.

def _slots(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


@lru_cache(maxsize=None)
def _perm_weights(d: int) -> np.ndarray:
    """Row p holds, per source slot e, the weight 2^(L-1-target(p, e))."""
    slots = _slots(d)
    index = {slot: e for e, slot in enumerate(slots)}
    length = len(slots)
    perms = list(itertools.permutations(range(d)))
    weights = np.zeros((len(perms), length))
    for pi, sigma in enumerate(perms):
        for e, (i, j) in enumerate(slots):
            a, b = sigma[i], sigma[j]
            target = index[(a, b) if a < b else (b, a)]
            weights[pi, e] = float(2 ** (length - 1 - target))
    return weights


@lru_cache(maxsize=None)
def _canonical_reps(d: int) -> tuple[int, ...]:
    """Sorted canonical encodings, one per isomorphism class of graphs on
    d vertices.

    A mask represents its class iff no vertex permutation maps it to a
    smaller encoding, so the full space is filtered by one permutation at
    a time against a shrinking survivor set; the first few permutations
    disqualify almost everything, which keeps d = 7 (2^21 masks, 5040
    permutations) at desk scale.
    """
    length = d * (d - 1) // 2
    if length == 0:
        return (0,)
    weights = _perm_weights(d)[1:]  # identity row filters nothing
    shifts = np.arange(length - 1, -1, -1, dtype=np.uint32)
    survivors = np.arange(1 << length, dtype=np.int64)
    for row in weights:
        bits = ((survivors[None, :].astype(np.uint32) >> shifts[:, None])
                & 1).astype(float)
        images = (row @ bits).astype(np.int64)
        survivors = survivors[images >= survivors]
    return tuple(int(x) for x in survivors)


def _decode(code: int, d: int) -> SignMatrix:
    s = np.ones((d, d))
    slots = _slots(d)
    length = len(slots)
    for e, (i, j) in enumerate(slots):
        if not (code >> (length - 1 - e)) & 1:
            s[i, j] = s[j, i] = -1.0
    return SignMatrix(s)


def restart_weights(d: int, count: int, seed: int = _RESTART_SEED) -> list[WeightVector]:
    """Deterministic weight restarts: uniform plus count-1 strictly
    positive pseudo-random simplex points from a fixed seed."""
    out = [WeightVector(np.full(d, 1.0 / d))]
    rng = np.random.default_rng(seed)
    floor = 1e-3
    for _ in range(max(count - 1, 0)):
        w = rng.dirichlet(np.ones(d))
        w = (w + floor) / (1.0 + d * floor)
        out.append(WeightVector(w / w.sum()))
    return out


def _optimize_class(n: int, s0: SignMatrix, starts: list[WeightVector],
                    max_iter: int, tol: float) -> SearchResult:
    best: SearchResult | None = None
    for d0 in starts:
        run = alternate_maximize(n, s0, d0, max_iter=max_iter, tol=tol)
        if best is None or run.value > best.value:
            best = run
    return best


def exhaustive_pi(n: int, d: int, restarts: int = 5, threads: int = 1,
                  max_iter: int = 100, tol: float = 1e-11) -> SearchResult:
    """Maximize pi_n(sqrt(D) S sqrt(D)) over all sign matrices S of size d
    (one representative per isomorphism class) with the weights optimized
    per representative by restarted alternation.

    Refuses d above 7: the candidate space has 2^(d(d-1)/2) members.
    """
    if d > EXHAUSTIVE_MAX_D:
        raise GuardRefusal(
            f"exhaustive search refused for d={d}: "
            f"2^{d * (d - 1) // 2} = {2 ** (d * (d - 1) // 2)} candidate "
            f"sign matrices exceeds the d<={EXHAUSTIVE_MAX_D} guard",
            candidates=2 ** (d * (d - 1) // 2))
    if not (1 <= n <= d):
        raise PreconditionError(f"n={n} out of range 1..{d}")
    starts = restart_weights(d, restarts)
    reps = _canonical_reps(d)

    def job(code: int) -> SearchResult:
        return _optimize_class(n, _decode(code, d), starts, max_iter, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(job, reps))
    else:
        runs = [job(code) for code in reps]

    # Representatives are visited in ascending canonical order, which is
    # lexicographic on sign vectors, so keeping strict improvements makes
    # ties resolve to the lexicographically smallest candidate.
    best = runs[0]
    for run in runs[1:]:
        if run.value > best.value:
            best = run
    return best
