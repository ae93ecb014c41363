"""
U-functional growth bounds
==========================

A U-functional must satisfy |F(z phi)| <= C1 exp(C2 |z|^2 ||phi||^2).  The
fitter samples F on rays in the complex plane, fits the quadratic growth
coefficient, and inflates C1 so the bound majorizes every sample.  For the
Donsker-delta S-transform the analytic chain gives C2 = 1/2; the fitted
values stay below it.
"""

import numpy as np

from hidacur import TestFunction, fit_ufunctional_bound
from hidacur.stransform import donsker_ufunctional, wick_integrand_ufunctional

rng = np.random.default_rng(11)
radii = np.geomspace(2.0, 12.0, 8)

print(f"{'functional':>16} {'d':>2} {'C1':>10} {'C2':>8}  (analytic C2 cap: 0.5)")
for trial in range(6):
    d = int(rng.integers(1, 4))
    x = rng.uniform(-1.5, 1.5, size=d)
    t = float(rng.uniform(0.5, 2.0))
    phi = TestFunction([rng.normal(size=5) for _ in range(d)])
    phi = phi.scaled(1.0 / phi.l2_norm())
    if trial % 2 == 0:
        F, name = donsker_ufunctional(x, t), "donsker delta"
    else:
        F, name = wick_integrand_ufunctional(x, t, 0), "wick integrand"
    fit = fit_ufunctional_bound(F, phi, radii)
    print(f"{name:>16} {d:>2} {fit.C1:>10.4g} {fit.C2:>8.4f}")
