"""Closed-form S-transforms of the stochastic-current objects.

Everything here is an explicit integral formula:

  * white noise:            S W_i(t)(phi) = phi_i(t)
  * heat-kernel delta:      S delta(x - B(t))(z phi)
                              = (2 pi t)^(-d/2) exp(-(1/2t) sum_j (x_j - z c_j(t))^2)
  * current component:      S xi_i(x)(phi)
                              = (2 pi)^(-d/2) int_0^T t^(-d/2)
                                  exp(-|x - c(t)|^2 / 2t) phi_i(t) dt
  * mollified current:      same with t -> t + eps2 inside the kernel
                            (Gaussian mollifier of variance eps2; the
                            semigroup property keeps the form closed)

with c_j(t) = int_0^t phi_j.  The current at the origin exists only in
dimension 1; for d > 1 the integral diverges and NonexistenceError is
raised (that negative outcome is quantified in the diagnostics module).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonexistenceError
from .quad import integrate_singular
from .special import singular_mass_closed

__all__ = [
    "CurrentParams",
    "UFunctional",
    "BoundFit",
    "s_white_noise",
    "s_donsker",
    "s_current",
    "s_current_mollified",
    "current_ufunctional",
    "donsker_ufunctional",
    "wick_integrand_ufunctional",
    "constant_ufunctional",
    "wick_product",
    "check_integrability",
    "fit_ufunctional_bound",
]

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CurrentParams:
    """The triple (x, T, d) identifying one stochastic current."""

    x: np.ndarray
    T: float
    d: int

    def __init__(self, x, T, d=None):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if d is None:
            d = len(x)
        if len(x) != d or d < 1:
            raise ValueError(f"x must have length d={d}")
        if not T > 0.0:
            raise ValueError(f"T must be > 0, got {T}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "T", float(T))
        object.__setattr__(self, "d", int(d))

    @property
    def at_origin(self):
        return bool(np.all(self.x == 0.0))

    def check_existence(self):
        """Raise NonexistenceError outside the existence region."""
        if self.at_origin and self.d > 1:
            raise NonexistenceError(
                f"x=0 with d={self.d}: the first chaos diverges, so the current "
                "at the origin is not a Hida distribution; see diagnostics."
            )


@dataclass(frozen=True)
class UFunctional:
    """An evaluable map (z, phi) -> complex with a descriptive label."""

    func: Callable
    label: str = ""

    def __call__(self, z, phi):
        return self.func(z, phi)


@dataclass(frozen=True)
class BoundFit:
    """Fitted growth bound |F(z phi)| <= C1 exp(C2 |z|^2 ||phi||^2)."""

    C1: float
    C2: float
    norm_used: str
    samples: int


def s_white_noise(phi, t, i):
    """S-transform of white noise component i: just phi_i(t)."""
    return phi.eval(t, i)


def s_donsker(x, t, phi, z=1.0):
    """S-transform of the Donsker delta at (x, t), evaluated at z*phi.

    Returns a float for real z, complex otherwise.  The square in the
    exponent is the bilinear one, matching the entire extension in z.
    """
    if not t > 0.0:
        raise ValueError(f"t must be > 0, got {t}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = len(x)
    c = np.array([phi.cumulative(t, j) for j in range(d)])
    q = np.sum((x - z * c) ** 2)
    val = (_TWO_PI * t) ** (-d / 2.0) * np.exp(-q / (2.0 * t))
    if np.iscomplexobj(np.asarray(z)):
        return complex(val)
    return float(val)


def _current_integrand(p, phi, i, z=1.0, eps2=0.0):
    """t-array integrand of component i of the (possibly mollified, possibly
    z-scaled) current S-transform."""
    x = p.x

    def f(t):
        te = t + eps2
        c = phi.cumulative_all(t)  # (d, n)
        q = np.sum((x[:, None] - z * c) ** 2, axis=0)
        return (_TWO_PI * te) ** (-p.d / 2.0) * np.exp(-q / (2.0 * te)) \
            * z * phi.eval(t, i)

    return f


def s_current(p, phi, tol=1e-10, full_output=False):
    """S-transform of the current, component-wise; length-d vector.

    Only defined on the existence region (x != 0, or x = 0 with d = 1);
    raises NonexistenceError otherwise.
    """
    p.check_existence()
    if phi.dimension != p.d:
        raise ValueError("test function dimension does not match d")
    damping = None if p.at_origin else float(np.dot(p.x, p.x)) / 2.0
    vals = np.empty(p.d)
    results = []
    for i in range(p.d):
        res = integrate_singular(
            _current_integrand(p, phi, i), p.T,
            sing_exponent=-p.d / 2.0, tol=tol, damping=damping,
        )
        vals[i] = res.value
        results.append(res)
    if full_output:
        return vals, results
    return vals


def s_current_mollified(p, phi, eps2, tol=1e-10, full_output=False):
    """Mollified current S-transform; defined for every x, every d.

    Replacing the delta by a Gaussian of variance eps2 shifts t -> t + eps2
    in the kernel, so the integrand is bounded on (0, T].
    """
    if not eps2 > 0.0:
        raise ValueError(f"eps2 must be > 0, got {eps2}")
    if phi.dimension != p.d:
        raise ValueError("test function dimension does not match d")
    vals = np.empty(p.d)
    results = []
    for i in range(p.d):
        res = integrate_singular(
            _current_integrand(p, phi, i, eps2=eps2), p.T,
            sing_exponent=0.0, tol=tol,
        )
        vals[i] = res.value
        results.append(res)
    if full_output:
        return vals, results
    return vals


def current_ufunctional(p, i, tol=1e-12):
    """Component i of the current S-transform as a U-functional in z."""

    def f(z, phi):
        p.check_existence()
        z = complex(z)
        if z == 0.0:
            return 0.0 + 0.0j
        damping = None if p.at_origin else float(np.dot(p.x, p.x)) / 2.0
        res = integrate_singular(
            _current_integrand(p, phi, i, z=z), p.T,
            sing_exponent=-p.d / 2.0, tol=tol, damping=damping,
        )
        return complex(res.value)

    return UFunctional(f, label=f"S xi_{i}(x={p.x.tolist()}, T={p.T})")


def donsker_ufunctional(x, t):
    """The Donsker-delta S-transform as a U-functional in z."""
    return UFunctional(lambda z, phi: s_donsker(x, t, phi, z),
                       label=f"S delta(x-B({t}))")


def wick_integrand_ufunctional(x, t, i):
    """U-functional of the current's integrand at fixed t:
    S(delta(x - B(t)))(z phi) * z phi_i(t)."""
    return UFunctional(
        lambda z, phi: s_donsker(x, t, phi, z) * z * phi.eval(t, i),
        label=f"S delta(x-B({t})) * W_{i}(t)",
    )


def constant_ufunctional(c, label=None):
    """S-transform of the constant c (the unit for the Wick product at c=1)."""
    return UFunctional(lambda z, phi: c, label=label or f"const {c}")


def wick_product(F, G):
    """Wick product on the S-transform side: pointwise product."""
    return UFunctional(lambda z, phi: F(z, phi) * G(z, phi),
                       label=f"({F.label}) wick ({G.label})")


def check_integrability(p, tol=1e-10):
    """Mass int_0^T t^(-d/2) exp(-|x|^2/2t) dt, or a divergence report.

    Returns a float on the existence region; for x = 0 with d > 1 returns
    the DivergenceReport from the diagnostics scan (divergence is a result,
    not an error here).
    """
    if not p.at_origin:
        return singular_mass_closed(p.d, float(np.linalg.norm(p.x)), p.T)
    if p.d == 1:
        res = integrate_singular(lambda t: t ** -0.5, p.T,
                                 sing_exponent=-0.5, tol=tol)
        return res.value
    from .diagnostics import default_cutoffs, divergence_scan

    return divergence_scan(p.d, p.T, default_cutoffs(p.T))


def fit_ufunctional_bound(F, phi, radii, angles_per_radius=16):
    """Fit |F(z phi)| <= C1 exp(C2 |z|^2 ||phi||^2) from ray samples.

    Samples z = r e^(i theta); takes the max of log|F| over angles at each
    radius, least-squares fits the quadratic growth coefficient with
    tail-emphasizing weights r^2, then inflates C1 so every sample satisfies
    the bound (the definition demands a majorant, not a best fit).
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0:
        raise ValueError("radii must be nonempty")
    nrm2 = phi.combined_norm() ** 2
    thetas = 2.0 * np.pi * np.arange(angles_per_radius) / angles_per_radius
    y = np.empty(radii.size)
    for k, r in enumerate(radii):
        mags = [abs(F(r * np.exp(1j * th), phi)) for th in thetas]
        y[k] = np.log(max(max(mags), 1e-300))
    u = radii ** 2 * nrm2
    w = radii ** 2
    # weighted LS of y = b0 + C2 * u
    sw, su, sy = w.sum(), (w * u).sum(), (w * y).sum()
    suu, suy = (w * u * u).sum(), (w * u * y).sum()
    denom = sw * suu - su * su
    slope = 0.0 if denom <= 0.0 else (sw * suy - su * sy) / denom
    c2 = max(slope, 0.0)
    log_c1 = np.max(y - c2 * u)
    return BoundFit(C1=float(np.exp(log_c1)), C2=float(c2),
                    norm_used="combined", samples=int(radii.size * angles_per_radius))


def export_record(p, phi, values, tol, results=None):
    """JSON-able record {params, phi_ref, value[], tol, node_count}."""
    node_count = sum(r.node_count for r in results) if results else None
    return {
        "params": {"x": p.x.tolist(), "T": p.T, "d": p.d},
        "phi_ref": {"d": phi.dimension,
                    "components": [c.tolist() for c in phi.components]},
        "value": np.atleast_1d(values).tolist(),
        "tol": tol,
        "node_count": node_count,
    }
