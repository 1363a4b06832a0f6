import numpy as np
import pytest

from projconst import PreconditionError
from projconst.seeds import C_ICOSA, SEEDS, get_seed

PHI = (1 + np.sqrt(5)) / 2


def test_conference_matrix_identity():
    assert np.array_equal(C_ICOSA, C_ICOSA.T)
    assert np.all(np.diag(C_ICOSA) == 0)
    assert np.all(np.abs(C_ICOSA + np.eye(6) * 1) >= 1)  # off-diagonal +-1
    assert np.array_equal(C_ICOSA @ C_ICOSA, 5 * np.eye(6))


def test_all_seeds_validate():
    for name in SEEDS:
        p = get_seed(name)
        assert np.abs(p.entries @ p.entries - p.entries).max() <= 1e-12


def test_positivity_of_named_seeds():
    assert get_seed("hex3").abs_is_positive()
    assert get_seed("icosa6").abs_is_positive()


def test_icosa_row_sums_are_golden():
    sums = np.abs(get_seed("icosa6").entries).sum(axis=1)
    assert np.abs(sums - PHI).max() <= 1e-12


def test_unknown_seed():
    with pytest.raises(PreconditionError):
        get_seed("nosuch")
