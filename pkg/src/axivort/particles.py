"""Vortex particles and initial-condition seeding.

A particle is a Lagrangian marker on the upper quadrant {r > 0, z > 0}
carrying the transported quantity zeta = omega/r and a volume weight mu
that discretizes the flow-invariant measure d(mu) = r dr dz.  Both zeta and
mu are set at seeding time and never change afterwards; the dynamics module
moves positions only.  The lower half-plane is never stored: odd-in-z
fields are realized through mirror images at evaluation time.

Seeding lays one particle per cell center of a uniform grid over a
rectangle, with mu_i = r_i * (cell area), drops cells whose mass
zeta_i*mu_i falls below a configured fraction of the total, and rescales
the remaining weights so the total mass matches a refined quadrature of
the seed field over the same rectangle.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ConfigError

# blobs must overlap for the regularized field to converge; 1.5 cells is a
# conventional overlap ratio
DELTA_OVER_H = 1.5

# ring-pair seeding defaults: box half-width in sigmas and grid spacing,
# sized for ~2000 particles with identity residuals inside tolerance
DIPOLE_BOX_SIGMAS = 1.0
DIPOLE_H = 0.0089

_FINE_REFINE = 16  # refinement factor for the mass-rescaling quadrature


@dataclass(frozen=True)
class Particle:
    """One marker: position, transported invariant, volume weight."""

    r: float
    z: float
    zeta: float
    mu: float


@dataclass
class ParticleSystem:
    """The upper-quadrant half of an odd-in-z vorticity field.

    Attributes:
        r, z: particle positions (mutated by time stepping only)
        zeta, mu: per-particle invariants, frozen after seeding
        delta: blob regularization width
        a0: recorded sup of the seed zeta field (= sup |omega0/r|)
        meta: scenario provenance, free-form
    """

    r: np.ndarray
    z: np.ndarray
    zeta: np.ndarray
    mu: np.ndarray
    delta: float
    a0: float
    meta: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.r.size

    def total_mass(self):
        """Sum of zeta_i mu_i, the discrete total vorticity mass."""
        return float(np.sum(self.zeta * self.mu))

    def weights(self):
        """zeta_i * mu_i as an array (the circulation carried per particle)."""
        return self.zeta * self.mu

    def particle(self, i):
        return Particle(
            r=float(self.r[i]),
            z=float(self.z[i]),
            zeta=float(self.zeta[i]),
            mu=float(self.mu[i]),
        )

    def copy(self):
        return ParticleSystem(
            r=self.r.copy(),
            z=self.z.copy(),
            zeta=self.zeta.copy(),
            mu=self.mu.copy(),
            delta=self.delta,
            a0=self.a0,
            meta=dict(self.meta),
        )

    def validate(self):
        if self.n:
            if not np.all(self.r > 0.0):
                raise ConfigError("particles must have r > 0")
            if np.any(self.zeta < 0.0):
                raise ConfigError("particles must have zeta >= 0")
            if np.max(self.zeta) > self.a0 * (1.0 + 1e-12):
                raise ConfigError("max zeta exceeds recorded a0")


def _empty_system(delta, a0, meta):
    z = np.zeros(0)
    return ParticleSystem(
        r=z.copy(), z=z.copy(), zeta=z.copy(), mu=z.copy(), delta=delta, a0=a0, meta=meta
    )


def seed_grid(zeta0, bbox, h, mass_floor=1e-8, delta=None, a0=None, meta=None):
    """Discretize a nonnegative scalar field zeta0(r, z) over a rectangle.

    Args:
        zeta0: vectorized callable of (r, z) arrays, >= 0 on the box
        bbox: (r_lo, r_hi, z_lo, z_hi) with r_lo >= 0, z_lo >= 0
        h: nominal cell spacing (the per-axis spacing is snapped so the box
           divides into whole cells)
        mass_floor: drop particles with zeta*mu below this fraction of the
           seeded total
        delta: blob width; defaults to DELTA_OVER_H * h
        a0: recorded sup of zeta0; defaults to the max over cell centers
        meta: provenance dict merged into the system's meta
    """
    r_lo, r_hi, z_lo, z_hi = (float(v) for v in bbox)
    if not (r_lo >= 0.0 and z_lo >= 0.0 and r_hi > r_lo and z_hi > z_lo):
        raise ConfigError(f"invalid seeding box {bbox!r}")
    if not h > 0.0:
        raise ConfigError("spacing h must be > 0")
    if h >= min(r_hi - r_lo, z_hi - z_lo):
        raise ConfigError("spacing h must be smaller than the box extent")
    if delta is None:
        delta = DELTA_OVER_H * h
    if delta < 0.0:
        raise ConfigError("delta must be >= 0")

    n_r = max(1, round((r_hi - r_lo) / h))
    n_z = max(1, round((z_hi - z_lo) / h))
    h_r = (r_hi - r_lo) / n_r
    h_z = (z_hi - z_lo) / n_z
    rc = r_lo + (np.arange(n_r) + 0.5) * h_r
    zc = z_lo + (np.arange(n_z) + 0.5) * h_z
    R, Z = np.meshgrid(rc, zc, indexing="ij")
    R = R.ravel()
    Z = Z.ravel()
    zeta = np.asarray(zeta0(R, Z), dtype=np.float64)
    if np.any(zeta < 0.0):
        raise ConfigError("seed field takes negative values on the box")
    mu = R * (h_r * h_z)

    base_meta = {
        "bbox": [r_lo, r_hi, z_lo, z_hi],
        "h": h,
        "h_r": h_r,
        "h_z": h_z,
        "mass_floor": mass_floor,
    }
    if meta:
        base_meta.update(meta)

    total0 = float(np.sum(zeta * mu))
    if total0 <= 0.0:
        return _empty_system(delta, 0.0 if a0 is None else float(a0), base_meta)

    keep = zeta * mu >= mass_floor * total0
    R, Z, zeta, mu = R[keep], Z[keep], zeta[keep], mu[keep]

    # refined midpoint quadrature of the seed mass over the box
    f = _FINE_REFINE
    rf = r_lo + (np.arange(n_r * f) + 0.5) * (h_r / f)
    zf = z_lo + (np.arange(n_z * f) + 0.5) * (h_z / f)
    RF, ZF = np.meshgrid(rf, zf, indexing="ij")
    target = float(np.sum(zeta0(RF, ZF) * RF)) * (h_r / f) * (h_z / f)
    scale = target / float(np.sum(zeta * mu))
    mu = mu * scale

    base_meta["n_dropped"] = int(np.sum(~keep))
    base_meta["mass_rescale"] = scale
    return ParticleSystem(
        r=R,
        z=Z,
        zeta=zeta,
        mu=mu,
        delta=float(delta),
        a0=float(np.max(zeta)) if a0 is None else float(a0),
        meta=base_meta,
    )


def seed_gaussian_dipole(
    r0=1.0,
    z0=0.5,
    sigma=0.2,
    amp=1.0,
    h=DIPOLE_H,
    mass_floor=1e-8,
    box_sigmas=DIPOLE_BOX_SIGMAS,
    delta=None,
):
    """Gaussian ring pair: zeta0 = amp * exp(-((r-r0)^2+(z-z0)^2)/sigma^2).

    Only the upper ring is seeded; the anti-parallel partner exists through
    the odd folding.  The seeding box is r0 +- box_sigmas*sigma by
    z0 +- box_sigmas*sigma, clipped to z >= 0.  amp = 0 yields an empty
    system; other nonpositive parameters are rejected.
    """
    if amp < 0.0:
        raise ConfigError("amp must be >= 0")
    if not (r0 > 0.0 and z0 > 0.0 and sigma > 0.0 and box_sigmas > 0.0):
        raise ConfigError("r0, z0, sigma, box_sigmas must be > 0")
    half = box_sigmas * sigma
    bbox = (max(r0 - half, 0.0), r0 + half, max(z0 - half, 0.0), z0 + half)
    meta = {
        "kind": "gaussian_dipole",
        "r0": r0,
        "z0": z0,
        "sigma": sigma,
        "amp": amp,
        "box_sigmas": box_sigmas,
    }
    if amp == 0.0:
        return _empty_system(
            DELTA_OVER_H * h if delta is None else delta, 0.0, meta
        )

    def zeta0(r, z):
        return amp * np.exp(-((r - r0) ** 2 + (z - z0) ** 2) / sigma**2)

    return seed_grid(
        zeta0, bbox, h, mass_floor=mass_floor, delta=delta, a0=amp, meta=meta
    )


def seed_patch(r0, z0, a, h, mass_floor=1e-8, delta=None):
    """Patch data: zeta0 = 1 on the disc of radius a about (r0, z0).

    The disc must lie strictly inside the upper quadrant.
    """
    if not a > 0.0:
        raise ConfigError("patch radius a must be > 0")
    if r0 - a <= 0.0 or z0 - a <= 0.0:
        raise ConfigError("patch disc must lie inside {r > 0, z > 0}")
    # keep the seeding box at least one cell wide so a disc smaller than the
    # grid degenerates to an empty system instead of a config error
    b = max(a, 1.01 * h)
    bbox = (max(r0 - b, 0.0), r0 + b, max(z0 - b, 0.0), z0 + b)

    def zeta0(r, z):
        return ((r - r0) ** 2 + (z - z0) ** 2 <= a * a).astype(np.float64)

    meta = {"kind": "patch", "r0": r0, "z0": z0, "a": a}
    return seed_grid(
        zeta0, bbox, h, mass_floor=mass_floor, delta=delta, a0=1.0, meta=meta
    )


# ---------------------------------------------------------------------------
# snapshot I/O: one header line "count delta a0 time", then one line per
# particle "r z zeta mu", full decimal precision, identical for save/load
# ---------------------------------------------------------------------------


def save_snapshot(system, time, path):
    """Write a plain-text snapshot of the system at the given time."""
    with open(path, "w") as fh:
        fh.write(
            f"{system.n} {float(system.delta)!r} {float(system.a0)!r} {float(time)!r}\n"
        )
        for i in range(system.n):
            fh.write(
                f"{float(system.r[i])!r} {float(system.z[i])!r} "
                f"{float(system.zeta[i])!r} {float(system.mu[i])!r}\n"
            )


def load_snapshot(path):
    """Read a snapshot; returns (ParticleSystem, time)."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 4:
            raise ConfigError(f"malformed snapshot header in {path}")
        count = int(header[0])
        delta, a0, time = (float(v) for v in header[1:])
        data = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if data.size == 0:
        data = np.zeros((0, 4))
    if data.shape[0] != count or data.shape[1] != 4:
        raise ConfigError(
            f"snapshot {path} declares {count} particles, found {data.shape}"
        )
    system = ParticleSystem(
        r=np.ascontiguousarray(data[:, 0]),
        z=np.ascontiguousarray(data[:, 1]),
        zeta=np.ascontiguousarray(data[:, 2]),
        mu=np.ascontiguousarray(data[:, 3]),
        delta=delta,
        a0=a0,
        meta={"kind": "from_snapshot", "path": str(path)},
    )
    return system, time
