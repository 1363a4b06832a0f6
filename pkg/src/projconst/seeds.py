"""Named seed projections.

hex3    — the rank-2 projector I - J/3 of l1^3 onto the hexagonal plane
          {x : x1 + x2 + x3 = 0}; absolute row sums all 4/3.
icosa6  — the rank-3 projector (I + C/sqrt(5))/2 of l1^6, where C is a
          6 x 6 Seidel matrix of the six icosahedron diagonals (symmetric
          conference matrix: zero diagonal, +-1 off-diagonal, C^2 = 5I);
          absolute row sums all (1+sqrt(5))/2.
trivial1 — the 1 x 1 identity.

The conference matrix is stored explicitly (one switching-class
representative, Paley construction over GF(5)) and machine-checked at
import via C^2 = 5I.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .matcore import OrthoProjection, validate_projection

C_ICOSA = np.array([
    [0,  1,  1,  1,  1,  1],
    [1,  0,  1, -1, -1,  1],
    [1,  1,  0,  1, -1, -1],
    [1, -1,  1,  0,  1, -1],
    [1, -1, -1,  1,  0,  1],
    [1,  1, -1, -1,  1,  0],
], dtype=float)

if not np.array_equal(C_ICOSA, C_ICOSA.T):
    raise AssertionError("icosahedral Seidel matrix must be symmetric")
if not np.array_equal(C_ICOSA @ C_ICOSA, 5.0 * np.eye(6)):
    raise AssertionError("icosahedral Seidel matrix must satisfy C^2 = 5I")


def hex3() -> OrthoProjection:
    return validate_projection(np.eye(3) - np.ones((3, 3)) / 3.0, 2)


def icosa6() -> OrthoProjection:
    return validate_projection(
        0.5 * (np.eye(6) + C_ICOSA / np.sqrt(5.0)), 3)


def trivial1() -> OrthoProjection:
    return validate_projection(np.array([[1.0]]), 1)


SEEDS = {"hex3": hex3, "icosa6": icosa6, "trivial1": trivial1}


def get_seed(name: str) -> OrthoProjection:
    try:
        factory = SEEDS[name]
    except KeyError:
        raise PreconditionError(
            f"unknown seed {name!r}; available: {', '.join(sorted(SEEDS))}")
    return factory()
