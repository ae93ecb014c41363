import numpy as np
import pytest


def random_phi(rng, d, n_basis=5, unit_l2=False):
    from hidacur import TestFunction

    comps = [rng.normal(size=n_basis) for _ in range(d)]
    phi = TestFunction(comps)
    if unit_l2:
        phi = phi.scaled(1.0 / phi.l2_norm())
    return phi


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
