"""Adaptive quadrature over semi-infinite axes and truncated boxes.

The field integrands here (axis velocities and their squares) are smooth,
concentrated near the particle support, and decay algebraically, so the
workhorse is composite Gauss-Legendre on a graded panel layout: uniform
panels of width w0 across the support, then geometrically growing panels
outward.  Truncation is handled by doubling the outer radius until the last
extension contributes less than a tail tolerance, and resolution by
splitting every panel until the value stabilizes.

Integrand evaluation is batched: callables receive whole node arrays, so
each refinement level costs one pairwise-summation sweep.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadSpec:
    """Budget and tolerances for the adaptive integrators."""

    rel_tol: float = 1e-5
    tail_tol: float = 1e-4
    base_nodes: int = 12
    grow: float = 1.6
    max_refine: int = 4
    max_doubles: int = 18

    def lighter(self, rel_tol=1e-3, max_refine=2):
        return QuadSpec(
            rel_tol=rel_tol,
            tail_tol=self.tail_tol,
            base_nodes=self.base_nodes,
            grow=self.grow,
            max_refine=max_refine,
            max_doubles=self.max_doubles,
        )


@lru_cache(maxsize=32)
def _gl(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_bounds(lo, core_hi, hi, w0, grow):
    """Graded boundaries: ~uniform width w0 on [lo, core_hi], geometric after."""
    n_core = max(1, int(np.ceil((core_hi - lo) / w0)))
    bounds = list(np.linspace(lo, core_hi, n_core + 1))
    w = w0 * grow
    x = core_hi
    while x < hi:
        x = min(x + w, hi)
        bounds.append(x)
        w *= grow
    return np.asarray(bounds)


def _split(bounds, level):
    if level == 0:
        return bounds
    out = bounds
    for _ in range(level):
        mids = 0.5 * (out[:-1] + out[1:])
        merged = np.empty(out.size + mids.size)
        merged[0::2] = out
        merged[1::2] = mids
        out = merged
    return out


def _nodes_weights(bounds, n):
    x, w = _gl(n)
    half = 0.5 * np.diff(bounds)
    mid = 0.5 * (bounds[:-1] + bounds[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate_semiaxis(fn, integrands, core_hi, w0, spec=QuadSpec(), lo=0.0):
    """Integrate several functionals of one field profile over [lo, inf).

    Args:
        fn: batched map from node array x to profile values u(x)
        integrands: list of g(x, u) maps; each integral is sum w * g
        core_hi: outer edge of the feature-bearing core region
        w0: panel width inside the core
        spec: tolerances and budget
        lo: lower endpoint

    Returns:
        (values, converged): per-integrand values and a convergence flag
        (False means the budget ran out before tolerances were met).
    """
    hi = 2.0 * core_hi

    def evaluate(hi, level):
        bounds = _split(_panel_bounds(lo, core_hi, hi, w0, spec.grow), level)
        x, w = _nodes_weights(bounds, spec.base_nodes)
        u = fn(x)
        return np.array([np.sum(w * g(x, u)) for g in integrands])

    level = 0
    vals = evaluate(hi, level)
    converged_refine = spec.max_refine == 0
    for level in range(1, spec.max_refine + 1):
        nxt = evaluate(hi, level)
        scale = np.maximum(np.abs(nxt), 1e-300)
        if np.all(np.abs(nxt - vals) <= spec.rel_tol * scale):
            vals = nxt
            converged_refine = True
            break
        vals = nxt
    converged_tail = False
    for _ in range(spec.max_doubles):
        hi *= 2.0
        nxt = evaluate(hi, level)
        scale = np.maximum(np.abs(nxt), 1e-300)
        if np.all(np.abs(nxt - vals) <= spec.tail_tol * scale):
            vals = nxt
            converged_tail = True
            break
        vals = nxt
    return vals, (converged_refine and converged_tail)


def integrate_box(
    fn2,
    integrand,
    r_core,
    z_core,
    w0_r,
    w0_z,
    spec=QuadSpec(),
    eps_r_frac=1e-3,
    hi_mult=2.0,
):
    """Integrate g(r, z, u) over [eps_r, R] x [0, Z], extending R and Z.

    fn2 maps flattened probe arrays (r, z) to field values; integrand maps
    (r, z, u) to the pointwise integrand.  The near-axis strip [0, eps_r]
    is dropped; callers use this for integrands vanishing linearly in r,
    making the strip contribution quadratically small.  hi_mult sets the
    starting truncation radius in units of the core size.
    """
    eps_r = eps_r_frac * r_core
    R = hi_mult * r_core
    Z = hi_mult * z_core

    def evaluate(R, Z, level):
        br = _split(_panel_bounds(eps_r, r_core, R, w0_r, spec.grow), level)
        bz = _split(_panel_bounds(0.0, z_core, Z, w0_z, spec.grow), level)
        xr, wr = _nodes_weights(br, spec.base_nodes)
        xz, wz = _nodes_weights(bz, spec.base_nodes)
        RR, ZZ = np.meshgrid(xr, xz, indexing="ij")
        u = fn2(RR.ravel(), ZZ.ravel()).reshape(RR.shape)
        W = wr[:, None] * wz[None, :]
        return float(np.sum(W * integrand(RR, ZZ, u)))

    level = 0
    val = evaluate(R, Z, level)
    converged_refine = spec.max_refine == 0
    for level in range(1, spec.max_refine + 1):
        nxt = evaluate(R, Z, level)
        if abs(nxt - val) <= spec.rel_tol * max(abs(nxt), 1e-300):
            val = nxt
            converged_refine = True
            break
        val = nxt
    converged_tail = False
    for _ in range(spec.max_doubles):
        R *= 2.0
        Z *= 2.0
        nxt = evaluate(R, Z, level)
        if abs(nxt - val) <= spec.tail_tol * max(abs(nxt), 1e-300):
            val = nxt
            converged_tail = True
            break
        val = nxt
    return val, (converged_refine and converged_tail)


def require_converged(converged, what):
    if not converged:
        raise QuadratureError(f"quadrature failed to converge for {what}")
