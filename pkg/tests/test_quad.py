"""Endpoint-singular adaptive quadrature."""

import numpy as np
import pytest

from hidacur import (IntegrandFailureError, QuadratureBudgetError,
                     integrate_singular, upper_incomplete_gamma)

# the three reference integrands with known exact values
CASES = [
    ("sqrt_singularity",
     lambda t: t ** -0.5, 1.0, -0.5, None, 2.0),
    ("damped_three_halves",
     lambda t: t ** -1.5 * np.exp(-0.5 / t), 1.0, -1.5, 0.5,
     np.sqrt(2.0) * upper_incomplete_gamma(0.5, 0.5)),
    ("constant",
     lambda t: np.ones_like(t), 2.0, 0.0, None, 2.0),
]


class TestExamples:
    @pytest.mark.parametrize("name,f,T,p,damping,exact",
                             CASES, ids=[c[0] for c in CASES])
    def test_known_values(self, name, f, T, p, damping, exact):
        res = integrate_singular(f, T, sing_exponent=p, tol=1e-10,
                                 damping=damping)
        assert abs(res.value - exact) <= 1e-9
        assert res.node_count > 0


class TestErrorEstimate:
    def test_estimate_bounds_true_error(self):
        # sampled tolerances; the reported estimate must bound the true
        # error in >= 99% of runs
        tols = np.geomspace(1e-4, 1e-11, 30)
        total = ok = 0
        for name, f, T, p, damping, exact in CASES:
            for tol in tols:
                res = integrate_singular(f, T, sing_exponent=p, tol=tol,
                                         damping=damping)
                total += 1
                ok += abs(res.value - exact) <= max(res.abs_error_estimate, 1e-15)
        assert ok / total >= 0.99

    def test_halving_tol_never_hurts(self):
        for name, f, T, p, damping, exact in CASES:
            prev_err = np.inf
            for tol in (1e-4, 5e-5, 2.5e-5, 1.25e-5, 1e-8, 5e-9):
                res = integrate_singular(f, T, sing_exponent=p, tol=tol,
                                         damping=damping)
                err = abs(res.value - exact)
                assert err <= prev_err + 1e-14
                prev_err = err


class TestFailures:
    def test_divergent_without_damping_rejected(self):
        with pytest.raises(ValueError):
            integrate_singular(lambda t: t ** -1.5, 1.0,
                               sing_exponent=-1.5, tol=1e-8)

    def test_nan_integrand_raises(self):
        def f(t):
            return np.where(t < 0.5, np.nan, 1.0)

        with pytest.raises(IntegrandFailureError):
            integrate_singular(f, 1.0, sing_exponent=0.0, tol=1e-8)

    def test_budget_error_carries_best_estimate(self):
        with pytest.raises(QuadratureBudgetError) as excinfo:
            integrate_singular(lambda t: np.cos(1.0 / t) / np.sqrt(t), 1.0,
                               sing_exponent=-0.5, tol=1e-14, node_budget=2000)
        assert excinfo.value.best_estimate is not None

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            integrate_singular(lambda t: t, 0.0, sing_exponent=0.0, tol=1e-8)
        with pytest.raises(ValueError):
            integrate_singular(lambda t: t, 1.0, sing_exponent=0.0, tol=0.0)


class TestComplexIntegrands:
    def test_complex_result(self):
        res = integrate_singular(lambda t: np.exp(1j * t), 1.0,
                                 sing_exponent=0.0, tol=1e-12)
        exact = (np.exp(1j) - 1.0) / 1j
        assert abs(res.value - exact) <= 1e-11
        assert isinstance(res.value, complex)
