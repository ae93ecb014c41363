"""Path-level verification of the closed-form S-transforms.

Brownian paths are simulated blockwise with a counter-based Philox
generator keyed on (seed, block), so every (path, step, component)
increment is a pure function of the config and the result is bit-identical
no matter how many worker threads run the blocks.  The mollified current is
realized as a left-endpoint (Ito) Riemann sum

    sum_k p_eps2(x - B(t_k)) dB(t_k),

which for the adapted, square-integrable mollified integrand coincides with
the anticipating integral the closed forms describe.  The empirical
S-transform weights each sample by the normalized exponential
exp(<w, phi> - |phi|^2 / 2), with <w, phi> the Wiener integral of phi.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, replace

import numpy as np

__all__ = ["MCConfig", "MCEstimate", "simulate_increments",
           "mollified_current_sample", "mc_s_transform", "default_threads"]

DEFAULT_BLOCK_SIZE = 1024


@dataclass(frozen=True)
class MCConfig:
    d: int
    T: float
    x: tuple
    n_paths: int
    n_steps: int
    eps2: float
    seed: int
    block_size: int = DEFAULT_BLOCK_SIZE
    dtype: str = "float32"  # bulk path arithmetic; reductions stay float64

    def __post_init__(self):
        x = tuple(float(v) for v in np.atleast_1d(self.x))
        object.__setattr__(self, "x", x)
        if len(x) != self.d or self.d < 1:
            raise ValueError(f"x must have length d={self.d}")
        if self.n_paths < 1 or self.n_steps < 1:
            raise ValueError("n_paths and n_steps must be >= 1")
        if not self.eps2 > 0.0:
            raise ValueError(f"eps2 must be > 0, got {self.eps2}")
        if not self.T > 0.0:
            raise ValueError(f"T must be > 0, got {self.T}")
        if self.dtype not in ("float32", "float64"):
            raise ValueError(f"dtype must be float32 or float64, got {self.dtype}")

    @property
    def n_blocks(self):
        return math.ceil(self.n_paths / self.block_size)

    def block_paths(self, block):
        lo = block * self.block_size
        return min(self.block_size, self.n_paths - lo)

    def to_json(self):
        return json.dumps({
            "d": self.d, "T": self.T, "x": list(self.x),
            "n_paths": self.n_paths, "n_steps": self.n_steps,
            "eps2": self.eps2, "seed": self.seed,
            "block_size": self.block_size, "dtype": self.dtype,
        })

    @classmethod
    def from_json(cls, s):
        return cls(**json.loads(s))


@dataclass(frozen=True)
class MCEstimate:
    mean: np.ndarray            # (d,)
    stderr: np.ndarray          # (d,)
    n_effective: int
    config: MCConfig

    def to_json(self):
        return json.dumps({
            "mean": self.mean.tolist(),
            "stderr": self.stderr.tolist(),
            "n_effective": self.n_effective,
            "config": json.loads(self.config.to_json()),
        })


def _block_rng(cfg, block):
    # independent stream per (seed, block): Philox is keyed, not advanced,
    # so block results never depend on scheduling
    return np.random.Generator(np.random.Philox(key=[cfg.seed, block]))


def simulate_increments(cfg, block):
    """Increments dB for one path block, shape (paths, n_steps, d).

    i.i.d. N(0, T/M) per step per component; deterministic in (seed, block).
    """
    if not 0 <= block < cfg.n_blocks:
        raise IndexError(f"block {block} out of range")
    rng = _block_rng(cfg, block)
    n = cfg.block_paths(block)
    dt = cfg.T / cfg.n_steps
    dtype = np.dtype(cfg.dtype)
    inc = rng.standard_normal((n, cfg.n_steps, cfg.d), dtype=dtype)
    inc *= dtype.type(math.sqrt(dt))
    return inc


def mollified_current_sample(cfg, increments):
    """Ito sum of the mollified current for each path, shape (paths, d).

    increments has shape (paths, n_steps, d); B(t_k) is the left endpoint
    (B(t_0) = 0), and p_eps2 is the d-dimensional Gaussian density of
    variance eps2.
    """
    inc = np.asarray(increments)
    dtype = inc.dtype
    x = np.asarray(cfg.x, dtype=dtype)
    b = np.cumsum(inc, axis=1)
    b[:, 1:, :] = b[:, :-1, :]  # shift to left endpoints in place
    b[:, 0, :] = 0.0
    # q = |x - B_left|^2 accumulated per component to avoid a (p, M, d) temp
    q = np.zeros(inc.shape[:2], dtype=dtype)
    tmp = np.empty_like(q)
    for j in range(cfg.d):
        np.subtract(x[j], b[:, :, j], out=tmp)
        np.square(tmp, out=tmp)
        q += tmp
    q *= dtype.type(-0.5 / cfg.eps2)
    dens = np.exp(q, out=q)
    dens *= dtype.type((2.0 * np.pi * cfg.eps2) ** (-cfg.d / 2.0))
    return np.einsum("pm,pmd->pd", dens, inc)


def _wiener_integral(cfg, phi_grid, increments):
    """sum_i int phi_i dB_i as a left-endpoint sum; phi_grid is (d, M)."""
    return np.einsum("dm,pmd->p", phi_grid, np.asarray(increments))


def _block_moments(cfg, phi_grid, log_c, block):
    inc = simulate_increments(cfg, block)
    current = mollified_current_sample(cfg, inc)          # (paths, d)
    weight = np.exp(_wiener_integral(cfg, phi_grid.astype(inc.dtype), inc) + log_c)
    # moments in float64 regardless of the path dtype; the control
    # f = unweighted current is exactly centered (each Ito term pairs an
    # adapted value with an independent increment)
    f = current.astype(np.float64)
    g = f * weight.astype(np.float64)[:, None]
    return (g.sum(axis=0), (g * g).sum(axis=0),
            f.sum(axis=0), (f * f).sum(axis=0),
            (g * f).sum(axis=0), g.shape[0])


def _pairwise_sum(items):
    """Fixed-order pairwise reduction (scheduling-independent rounding)."""
    items = list(items)
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] if i + 1 < len(items) else items[i]
               for i in range(0, len(items), 2)]
        items = nxt
    return items[0]


def default_threads():
    env = os.environ.get("HIDACUR_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def mc_s_transform(cfg, phi, n_threads=None, csv_path=None, control_variate=True):
    """Empirical S-transform of the mollified current at phi.

    Estimates E[current * exp(<w, phi> - |phi|^2/2)] componentwise over
    cfg.n_paths paths.  Blocks are independent work units; aggregation is a
    fixed-order pairwise fold, so the estimate is bit-identical for any
    thread count.

    With control_variate=True (default) the unweighted current, whose mean
    is exactly zero (Ito sum of an adapted integrand), is subtracted with
    the regression coefficient estimated from the aggregated moments; this
    leaves the estimated expectation unchanged up to O(1/N) while removing
    the noise shared with the weight-free part of the sample.
    """
    if phi.dimension != cfg.d:
        raise ValueError("test function dimension does not match d")
    n_threads = n_threads or default_threads()
    dt = cfg.T / cfg.n_steps
    t_left = np.arange(cfg.n_steps) * dt
    phi_grid = phi.eval_all(t_left)                        # (d, M)
    # only the restriction of phi to [0, T] couples to the current: the
    # off-window part of the Wick exponential is independent of the path on
    # [0, T] and its expectation cancels the matching piece of C(phi)
    log_c = -0.5 * phi.l2_norm_on_interval(0.0, cfg.T) ** 2

    n_blocks = cfg.n_blocks
    results = [None] * n_blocks
    if n_threads == 1:
        for b in range(n_blocks):
            results[b] = _block_moments(cfg, phi_grid, log_c, b)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n_threads) as ex:
            futures = {ex.submit(_block_moments, cfg, phi_grid, log_c, b): b
                       for b in range(n_blocks)}
            for fut, b in futures.items():
                results[b] = fut.result()

    if csv_path is not None:
        with open(csv_path, "w") as fh:
            fh.write("block,n_paths," +
                     ",".join(f"partial_mean_{i}" for i in range(cfg.d)) + "\n")
            for b, r in enumerate(results):
                fh.write(f"{b},{r[5]}," +
                         ",".join(repr(v / r[5]) for v in r[0]) + "\n")

    sg = _pairwise_sum([r[0] for r in results])
    sgg = _pairwise_sum([r[1] for r in results])
    sf = _pairwise_sum([r[2] for r in results])
    sff = _pairwise_sum([r[3] for r in results])
    sgf = _pairwise_sum([r[4] for r in results])
    n_total = sum(r[5] for r in results)

    mean_g = sg / n_total
    var_g = np.maximum(sgg / n_total - mean_g ** 2, 0.0)
    if control_variate:
        mean_f = sf / n_total
        var_f = np.maximum(sff / n_total - mean_f ** 2, 0.0)
        cov = sgf / n_total - mean_g * mean_f
        beta = np.where(var_f > 1e-300, cov / np.maximum(var_f, 1e-300), 0.0)
        mean = mean_g - beta * mean_f
        var = np.maximum(var_g - beta * cov, 0.0)
    else:
        mean = mean_g
        var = var_g
    var = var * n_total / max(n_total - 1, 1)
    stderr = np.sqrt(var / n_total)
    return MCEstimate(mean=mean, stderr=stderr, n_effective=n_total, config=cfg)
