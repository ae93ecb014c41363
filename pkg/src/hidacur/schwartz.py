"""Vector-valued Schwartz test functions in a finite Hermite-function basis.

A test function phi with d components is stored as d coefficient vectors
against the orthonormal Hermite functions {h_k} of L^2(R).  All norms used
downstream live here: the L^2 norm |phi| (exact via Parseval), the sup norm
|phi|_inf, and the combined norm sqrt(|phi|^2 + |phi|_inf^2).

Component indices are 0-based throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf

__all__ = [
    "TestFunction",
    "hermite_values",
    "hermite_antiderivatives",
]

_PI4 = np.pi ** (-0.25)  # h_0(0)


def hermite_values(n_max, t):
    """Values h_k(t) for k = 0..n_max-1, shape (n_max,) + shape(t).

    Uses the stable three-term recurrence on the *normalized* Hermite
    functions (Gaussian factor kept inside), so no overflow for moderate k.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((n_max,) + t.shape)
    h_prev = np.zeros_like(t)
    h = _PI4 * np.exp(-0.5 * t * t)
    for k in range(n_max):
        out[k] = h
        h_next = np.sqrt(2.0 / (k + 1)) * t * h - np.sqrt(k / (k + 1.0)) * h_prev
        h_prev, h = h, h_next
    return out


def hermite_antiderivatives(n_max, t):
    """Values I_k(t) = int_0^t h_k(s) ds for k = 0..n_max-1.

    Closed-form recurrence obtained by integrating
    h_k' = sqrt(k/2) h_{k-1} - sqrt((k+1)/2) h_{k+1}:

        I_{k+1} = (sqrt(k/2) I_{k-1} - (h_k(t) - h_k(0))) / sqrt((k+1)/2),

    seeded with I_0(t) = pi^{1/4} erf(t/sqrt(2)) / sqrt(2).  Exact up to
    rounding; accurate to ~1e-14 for the coefficient counts used here.
    """
    t = np.asarray(t, dtype=float)
    h = hermite_values(n_max + 1, t)
    h0 = hermite_values(n_max + 1, 0.0)
    out = np.empty((n_max,) + t.shape)
    if n_max >= 1:
        out[0] = np.pi ** 0.25 / np.sqrt(2.0) * erf(t / np.sqrt(2.0))
    for k in range(n_max - 1):
        prev = out[k - 1] if k >= 1 else 0.0
        out[k + 1] = (np.sqrt(k / 2.0) * prev - (h[k] - h0[k])) / np.sqrt((k + 1) / 2.0)
    return out


@dataclass(frozen=True)
class TestFunction:
    """phi in S_d, represented by Hermite coefficients per component.

    components[i][k] is the coefficient of h_k in component i.  Immutable;
    all operations are pure and safe for concurrent readers.
    """

    components: tuple = field(default_factory=tuple)

    def __init__(self, components):
        comps = tuple(np.atleast_1d(np.asarray(c, dtype=float)) for c in components)
        if not comps:
            raise ValueError("need at least one component")
        for c in comps:
            if c.ndim != 1 or not np.all(np.isfinite(c)):
                raise ValueError("coefficients must be finite 1-d arrays")
        object.__setattr__(self, "components", comps)

    @property
    def dimension(self):
        return len(self.components)

    @property
    def n_basis(self):
        return max(len(c) for c in self.components)

    def _check_index(self, i):
        if not 0 <= i < self.dimension:
            raise IndexError(f"component index {i} out of range for d={self.dimension}")

    def eval(self, t, i):
        """phi_i(t); t may be a scalar or array."""
        self._check_index(i)
        c = self.components[i]
        h = hermite_values(len(c), t)
        return np.tensordot(c, h, axes=(0, 0))

    def eval_all(self, t):
        """All components at once, shape (d,) + shape(t)."""
        t = np.asarray(t, dtype=float)
        h = hermite_values(self.n_basis, t)
        out = np.zeros((self.dimension,) + t.shape)
        for i, c in enumerate(self.components):
            out[i] = np.tensordot(c, h[: len(c)], axes=(0, 0))
        return out

    def cumulative(self, t, i):
        """int_0^t phi_i(s) ds, exact via the Hermite antiderivative recurrence."""
        self._check_index(i)
        c = self.components[i]
        anti = hermite_antiderivatives(len(c), t)
        return np.tensordot(c, anti, axes=(0, 0))

    def cumulative_all(self, t):
        """All components, shape (d,) + shape(t)."""
        t = np.asarray(t, dtype=float)
        anti = hermite_antiderivatives(self.n_basis, t)
        out = np.zeros((self.dimension,) + t.shape)
        for i, c in enumerate(self.components):
            out[i] = np.tensordot(c, anti[: len(c)], axes=(0, 0))
        return out

    def l2_norm(self):
        """L^2(R, R^d) norm; exact by Parseval in the orthonormal basis."""
        return float(np.sqrt(sum(np.dot(c, c) for c in self.components)))

    def l2_norm_on_interval(self, a, b, n_nodes=256):
        """L^2 norm of phi restricted to [a, b], by Gauss-Legendre quadrature.

        phi is a finite Hermite combination, so a few hundred nodes reach
        machine precision for any interval of moderate length.
        """
        x, w = np.polynomial.legendre.leggauss(n_nodes)
        t = 0.5 * (a + b) + 0.5 * (b - a) * x
        vals = self.eval_all(t)
        return float(np.sqrt(0.5 * (b - a) * np.sum(vals ** 2 @ w)))

    def sup_norm(self, grid_points=4001):
        """Upper estimate of sup_t max_i |phi_i(t)|.

        Dense grid search over the essential support of the basis, refined by
        parabolic interpolation around the best grid point, then inflated by a
        relative 1e-10 so the result majorizes pointwise samples.
        """
        n = self.n_basis
        half_width = np.sqrt(2.0 * (n + 1)) + 8.0
        t = np.linspace(-half_width, half_width, grid_points)
        vals = np.abs(self.eval_all(t))
        best = 0.0
        for i in range(self.dimension):
            j = int(np.argmax(vals[i]))
            lo = t[max(j - 1, 0)]
            hi = t[min(j + 1, grid_points - 1)]
            # golden-section style refinement on |phi_i|
            for _ in range(60):
                m1 = lo + (hi - lo) * 0.382
                m2 = lo + (hi - lo) * 0.618
                if abs(float(self.eval(m1, i))) >= abs(float(self.eval(m2, i))):
                    hi = m2
                else:
                    lo = m1
            cand = abs(float(self.eval(0.5 * (lo + hi), i)))
            best = max(best, cand, float(vals[i, j]))
        return best * (1.0 + 1e-10)

    def combined_norm(self):
        """sqrt(l2_norm^2 + sup_norm^2)."""
        return float(np.hypot(self.l2_norm(), self.sup_norm()))

    def scaled(self, a):
        return TestFunction([a * c for c in self.components])

    # -- serialization: {d, components: [[c_ik]]}, binary64 round-trip exact --

    def to_json(self):
        return json.dumps(
            {"d": self.dimension, "components": [c.tolist() for c in self.components]}
        )

    @classmethod
    def from_json(cls, s):
        obj = json.loads(s)
        comps = obj["components"]
        if len(comps) != obj["d"]:
            raise ValueError("component count does not match d")
        return cls(comps)

    @classmethod
    def zero(cls, d, n_basis=1):
        return cls([np.zeros(n_basis) for _ in range(d)])

    @classmethod
    def basis_element(cls, d, i, k, coeff=1.0):
        """Test function with a single coefficient c_{i,k} = coeff."""
        comps = [np.zeros(k + 1) for _ in range(d)]
        comps[i][k] = coeff
        return cls(comps)
