"""Blow-up diagnostics for the first-chaos mass at the origin.

The mass int_delta^T t^(-d/2) dt is computed in closed form on a decreasing
cutoff grid and classified against three models:

  * bounded limit  m = A + B sqrt(delta)   (d = 1: exact, A = 2 sqrt(T))
  * logarithmic    m = A + B log(1/delta)  (d = 2: exact with B = 1)
  * power blow-up  log m = A + e log delta (d >= 3: e -> 1 - d/2)

The scan tests the classification and rate fitting, not quadrature; the
masses are antiderivatives, exact up to rounding.  Tail-weighted fitting
(smallest 60% of cutoffs) suppresses pre-asymptotic bias from the T term.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

__all__ = ["DivergenceReport", "divergence_scan", "default_cutoffs"]


@dataclass(frozen=True)
class DivergenceReport:
    d: int
    T: float
    cutoffs: np.ndarray
    masses: np.ndarray
    model: str                  # "bounded" | "log" | "power"
    rate: float                 # limit (bounded), log slope, or power exponent
    residual: float
    verdict: str                # "convergent" | "divergent"

    def to_json(self):
        return json.dumps({
            "d": self.d, "T": self.T,
            "cutoffs": self.cutoffs.tolist(),
            "masses": self.masses.tolist(),
            "model": self.model, "rate": self.rate,
            "residual": self.residual, "verdict": self.verdict,
        })

    def to_csv(self):
        """Tidy (delta, mass) rows for plotting."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["delta", "mass"])
        for delta, m in zip(self.cutoffs, self.masses):
            writer.writerow([repr(float(delta)), repr(float(m))])
        return buf.getvalue()


def default_cutoffs(T, k=8):
    """Geometric grid 10^-2 ... 10^-(k+1), scaled into (0, T)."""
    return min(T, 1.0) * 10.0 ** (-np.arange(2.0, k + 2.0))


def _mass(d, T, delta):
    if d == 2:
        return np.log(T / delta)
    e = 1.0 - d / 2.0
    return (T ** e - delta ** e) / e


def _lstsq_1d(u, y, w):
    sw, su, sy = w.sum(), (w * u).sum(), (w * y).sum()
    suu, suy = (w * u * u).sum(), (w * u * y).sum()
    denom = sw * suu - su * su
    slope = (sw * suy - su * sy) / denom
    intercept = (sy - slope * su) / sw
    resid = float(np.sqrt(np.average((y - intercept - slope * u) ** 2, weights=w)))
    return intercept, slope, resid


def divergence_scan(d, T, cutoffs):
    """Classify the cutoff masses as convergent or divergent with a rate."""
    cutoffs = np.asarray(cutoffs, dtype=float)
    if cutoffs.size < 4:
        raise ValueError("need at least 4 cutoffs")
    if np.any(cutoffs <= 0.0) or np.any(cutoffs >= T):
        raise ValueError("cutoffs must lie strictly inside (0, T)")
    if np.any(np.diff(cutoffs) >= 0.0):
        raise ValueError("cutoffs must be strictly decreasing")
    if d < 1 or d != int(d):
        raise ValueError(f"d must be a positive integer, got {d}")

    masses = _mass(d, T, cutoffs)

    # tail = smallest 60% of the cutoffs
    n_tail = max(4, int(np.ceil(0.6 * cutoffs.size)))
    delta = cutoffs[-n_tail:]
    m = masses[-n_tail:]
    w = np.ones_like(delta)

    fits = {}
    a, b, r = _lstsq_1d(np.sqrt(delta), m, w)
    fits["bounded"] = (a, b, r / max(abs(m).max(), 1.0))
    a, b, r = _lstsq_1d(np.log(1.0 / delta), m, w)
    fits["log"] = (a, b, r / max(abs(m).max(), 1.0))
    if np.all(m > 0.0):
        a, b, r = _lstsq_1d(np.log(delta), np.log(m), w)
        fits["power"] = (a, b, r)
    best = min(fits, key=lambda k: fits[k][2])

    intercept, slope, resid = fits[best]
    if best == "bounded":
        rate, verdict = intercept, "convergent"
    elif best == "log":
        rate, verdict = slope, "divergent"
    else:
        rate = slope
        verdict = "divergent" if slope < -0.01 else "convergent"

    return DivergenceReport(d=int(d), T=float(T), cutoffs=cutoffs, masses=masses,
                            model=best, rate=float(rate), residual=float(resid),
                            verdict=verdict)
