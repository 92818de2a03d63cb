"""Velocity and stream-function evaluation from a particle system.

All evaluation reduces to the pairwise sums in summation.py.  Probes at
r < eps_axis (a fixed small fraction of the largest source radius) are
answered by the axis specialization: u_r = 0 there by axisymmetry and u_z
comes from the elementary closed-form kernel; the switch costs O(r^2)
because u_z is even in r.

Sources are immutable during an evaluation.  Parallelism is over probes
and each probe accumulates in a fixed order, so results are bit-identical
for identical inputs regardless of thread count.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularEvaluationError
from . import summation

AXIS_EPS_FACTOR = 1e-6


@dataclass(frozen=True)
class VelocitySample:
    """(u_r, u_z) at one probe point."""

    r: float
    z: float
    ur: float
    uz: float


@dataclass
class FieldRequest:
    """A batch of velocity probes against one source system."""

    probes: list  # of (r, z) pairs, r >= 0
    delta: float | None = None  # defaults to the source system's width
    fold_odd: bool = True

    def arrays(self):
        pts = np.asarray(self.probes, dtype=np.float64).reshape(-1, 2)
        if pts.size and pts[:, 0].min() < 0.0:
            raise DomainError("probe radii must be >= 0")
        return np.ascontiguousarray(pts[:, 0]), np.ascontiguousarray(pts[:, 1])


def axis_threshold(system):
    """Probe radius below which the axis specialization answers."""
    return AXIS_EPS_FACTOR * (float(np.max(system.r)) if system.n else 0.0)


def _check_finite(system, delta, *arrays):
    if all(np.all(np.isfinite(a)) for a in arrays):
        return
    if delta == 0.0:
        raise SingularEvaluationError(
            "unregularized kernel evaluated at a probe coincident with a source"
        )
    raise FloatingPointError("non-finite field evaluation")


def velocity_arrays(pr, pz, system, delta=None, fold_odd=True, want_psi=False, fast=False):
    """(ur, uz[, psi]) arrays at probe arrays (pr, pz).

    fast=True switches to the fast-reduction summation twin (plain
    accumulation, fixed-trip kernel); fast=False keeps the fixed-order
    compensated reduction.
    """
    pr = np.ascontiguousarray(pr, dtype=np.float64)
    pz = np.ascontiguousarray(pz, dtype=np.float64)
    delta = system.delta if delta is None else float(delta)
    ev = summation.eval_field_fast if fast else summation.eval_field
    ur, uz, psi = ev(
        pr, pz, system.r, system.z, system.weights(), delta, fold_odd,
        axis_threshold(system),
    )
    _check_finite(system, delta, ur, uz, psi)
    return (ur, uz, psi) if want_psi else (ur, uz)


def induced_velocity(request, sources):
    """Velocity samples at each probe of the request.

    Per probe x:  u(x) = sum_j zeta_j mu_j [k(x; x_j) - k(x; mirror x_j)]
    with the mirror term present only under odd folding.
    """
    pr, pz = request.arrays()
    ur, uz = velocity_arrays(
        pr, pz, sources, delta=request.delta, fold_odd=request.fold_odd
    )
    return [
        VelocitySample(r=float(pr[i]), z=float(pz[i]), ur=float(ur[i]), uz=float(uz[i]))
        for i in range(pr.size)
    ]


def axis_radial_velocity(r, sources, delta=None, fast=False):
    """u_r(r, 0) on the symmetry plane for r > 0 (scalar or array).

    Equals (2/pi) sum_j zeta_j mu_j (zbar_j / (r sqrt(r rbar_j)))
    (-F'(D_delta)); positive whenever the system carries positive mass.
    """
    scalar = np.isscalar(r)
    rr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    if rr.size and rr.min() <= 0.0:
        raise DomainError("axis_radial_velocity requires r > 0")
    delta = sources.delta if delta is None else float(delta)
    ev = summation.eval_axis_ur_fast if fast else summation.eval_axis_ur
    out = ev(
        np.ascontiguousarray(rr), sources.r, sources.z, sources.weights(), delta
    )
    _check_finite(sources, delta, out)
    return float(out[0]) if scalar else out


def axis_vertical_velocity(z, sources, fold_odd=True):
    """u_z(0, z) on the symmetry axis (scalar or array); delta-free.

    The ring kernel degenerates on the axis to an elementary expression,
    u_z(0,z) = -1/2 sum_j zeta_j mu_j [ rbar^2/(rbar^2+(z-zbar)^2)^{3/2}
    - rbar^2/(rbar^2+(z+zbar)^2)^{3/2} ].
    """
    scalar = np.isscalar(z)
    zz = np.atleast_1d(np.asarray(z, dtype=np.float64))
    out = summation.eval_axis_uz(
        np.ascontiguousarray(zz), sources.r, sources.z, sources.weights(), fold_odd
    )
    return float(out[0]) if scalar else out


def stream_function(probe, sources, delta=None, fold_odd=True):
    """psi at probe(s); accepts one (r, z) pair or arrays of each."""
    if isinstance(probe, tuple) and np.isscalar(probe[0]):
        pr = np.array([probe[0]], dtype=np.float64)
        pz = np.array([probe[1]], dtype=np.float64)
        scalar = True
    else:
        pts = np.asarray(probe, dtype=np.float64).reshape(-1, 2)
        pr, pz = np.ascontiguousarray(pts[:, 0]), np.ascontiguousarray(pts[:, 1])
        scalar = False
    if pr.size and pr.min() < 0.0:
        raise DomainError("stream_function requires r >= 0")
    _ur, _uz, psi = velocity_arrays(
        pr, pz, sources, delta=delta, fold_odd=fold_odd, want_psi=True
    )
    return float(psi[0]) if scalar else psi
