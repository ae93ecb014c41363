"""
Test functions in the Hermite basis
===================================

A test function phi lives in the Schwartz space S_d and is stored as one
Hermite-coefficient vector per component.  This demo builds a few of them
and exercises the norms the rest of the toolkit depends on.
"""

import numpy as np

from hidacur import TestFunction

# the ground Hermite function h_0(t) = pi^(-1/4) exp(-t^2/2)
phi = TestFunction.basis_element(1, 0, 0)
print("h_0(0)          =", phi.eval(0.0, 0), "(pi^-1/4 =", np.pi ** -0.25, ")")
print("l2 norm         =", phi.l2_norm(), "(orthonormal basis: exactly 1)")
print("sup norm        =", phi.sup_norm())
print("combined norm   =", phi.combined_norm(), "(sqrt(1 + pi^-1/2) =",
      np.sqrt(1 + np.pi ** -0.5), ")")

# cumulative integrals come from an exact antiderivative recurrence, so
# they are cheap enough to call at thousands of quadrature nodes
print("\nint_0^1 h_0     =", phi.cumulative(1.0, 0))

# a 2-component function: coefficients (3) and (0, 4) give l2 norm 5
psi = TestFunction([[3.0], [0.0, 4.0]])
print("\npythagoras      =", psi.l2_norm(), "(3-4-5)")

# everything is serializable and immutable
clone = TestFunction.from_json(psi.to_json())
print("round trip ok   =", all(np.array_equal(a, b) for a, b in
                               zip(clone.components, psi.components)))
