import numpy as np
import pytest

from projconst import (PreconditionError, ResourceExhausted, choose_k,
                       dirichlet_approx)


class TestChooseK:
    def test_examples(self):
        # 4 * 2 * sqrt(2) / (1/3) = 24 sqrt(2) ~ 33.94 -> 34
        assert choose_k(2, 3, 1.0, 1 / 3) == 34
        # m = 1 makes the bound zero -> smallest admissible k is 1
        assert choose_k(1, 1, 1.0, 1.0) == 1
        # 4 * 1 * 2 / 0.25 = 32, strictly greater -> 33
        assert choose_k(4, 2, 0.5, 0.5) == 33

    def test_rejects_bad_inputs(self):
        with pytest.raises(PreconditionError):
            choose_k(1, 1, 0.0, 1.0)
        with pytest.raises(PreconditionError):
            choose_k(0, 1, 1.0, 1.0)


class TestDirichletApprox:
    def test_already_rational(self):
        res = dirichlet_approx([1 / 3, 1 / 3, 1 / 3], 10)
        assert res.q == 3 and res.p == (1, 1, 1)

    def test_sqrt2_weights(self):
        res = dirichlet_approx([np.sqrt(2) - 1, 2 - np.sqrt(2)], 5)
        assert res.q == 2 and res.p == (1, 1)

    def test_halves(self):
        res = dirichlet_approx([0.5, 0.5], 100)
        assert res.q == 2 and res.p == (1, 1)

    def test_single_weight(self):
        res = dirichlet_approx([1.0], 7)
        assert res.q == 1 and res.p == (1,)

    def test_rejects_bad_weights(self):
        with pytest.raises(PreconditionError):
            dirichlet_approx([0.5, 0.6], 5)
        with pytest.raises(PreconditionError):
            dirichlet_approx([1.0, 0.0], 5)

    def test_resource_error_reports_best(self):
        with pytest.raises(ResourceExhausted) as err:
            dirichlet_approx([1 / np.sqrt(2), 1 - 1 / np.sqrt(2)], 10**6,
                             q_cap=50)
        assert err.value.best_q is not None and 1 <= err.value.best_q <= 50

    def test_random_suite_invariants(self):
        # k is drawn above (m-1)/min(w), the regime where the rounded
        # multiplicities are guaranteed positive
        rng = np.random.default_rng(30)
        for _ in range(100):
            m = int(rng.integers(1, 5))
            w = (0.6 * rng.dirichlet(np.ones(m)) + 0.1) / (0.6 + 0.1 * m)
            w = w / w.sum()
            kmin = int((m - 1) / w.min()) + 1
            k = int(rng.integers(kmin, 51))
            res = dirichlet_approx(w, k)
            assert sum(res.p) == res.q
            assert all(x >= 1 for x in res.p)
            approx = np.asarray(res.p, dtype=float) / res.q
            if m > 1:
                head_err = np.abs(w[:-1] - approx[:-1]).max()
                assert res.q * head_err <= 1 / k + 1e-12
            assert np.abs(w - approx).sum() <= 2 * (m - 1) / k + 1e-12

    def test_minimality_of_q(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            m = int(rng.integers(2, 4))
            w = (0.6 * rng.dirichlet(np.ones(m)) + 0.1) / (0.6 + 0.1 * m)
            w = w / w.sum()
            kmin = int((m - 1) / w.min()) + 1
            k = int(rng.integers(kmin, 51))
            res = dirichlet_approx(w, k)
            for q in range(1, res.q):
                prod = q * w[:-1]
                assert np.abs(prod - np.round(prod)).max() > 1 / k

    def test_dirichlet_guarantee_within_bound(self):
        # existence below k^(m-1) for irrational weights
        w = np.array([1 / np.sqrt(2), 1 - 1 / np.sqrt(2)])
        for k in (4, 7, 20):
            res = dirichlet_approx(w, k)
            assert res.q < k ** (len(w) - 1) + 1
