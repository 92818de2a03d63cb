"""Scalar functionals and identity checks of the particle field.

All diagnostics are pure functions of an immutable system snapshot.  The
monitored quantities fall into three groups:

* plain particle sums (moments P_k, vertical moment Z, masses, norms),
  which discretize integrals of omega dr dz = zeta d(mu);
* velocity-based functionals (kinetic energy through the stream-vorticity
  pairing, the bulk sides of the moment-derivative identities);
* axis/field quadratures (the line-integral sides of the same identities),
  evaluated with the adaptive integrators in quadrature.py.

Each identity is computed on both sides from the same snapshot, so the
reported residuals measure the discretization (blob width and particle
spacing), not the identities themselves, which are exact for the
continuum field.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import summation
from .errors import DomainError
from .field import velocity_arrays
from .quadrature import QuadSpec, integrate_box, integrate_semiaxis

INF_P = float("inf")


# ---------------------------------------------------------------------------
# particle-sum functionals
# ---------------------------------------------------------------------------


def moment_pk(system, k):
    """k-th radial moment: sum r_i^k zeta_i mu_i."""
    if k < 1:
        raise DomainError("moment exponent k must be >= 1")
    return float(np.sum(system.r**k * system.weights())) if system.n else 0.0


def vertical_Z(system):
    """Vertical moment: sum z_i zeta_i mu_i."""
    return float(np.sum(system.z * system.weights())) if system.n else 0.0


def mass_mR(system, R):
    """Vorticity mass at radii <= R."""
    if R < 0.0:
        raise DomainError("mass radius R must be >= 0")
    if not system.n:
        return 0.0
    w = system.weights()
    return float(np.sum(w[system.r <= R]))


def omega_norms(system, p_list=(1.0, 2.0, INF_P)):
    """(sup, {p: Lp}) of the vorticity over all of 3-space.

    sup = max zeta_i r_i; for finite p, ||omega||_p^p = 4 pi sum
    (zeta_i r_i)^p mu_i; p = inf maps to the sup.
    """
    omega = system.zeta * system.r if system.n else np.zeros(0)
    sup = float(np.max(omega)) if system.n else 0.0
    out = {}
    for p in p_list:
        p = float(p)
        if p < 1.0:
            raise DomainError("Lp exponent must be >= 1")
        if math.isinf(p):
            out[p] = sup
        elif system.n:
            out[p] = float((4.0 * math.pi * np.sum(omega**p * system.mu)) ** (1.0 / p))
        else:
            out[p] = 0.0
    return sup, out


def energy_e0(system, psi=None, fast=True):
    """Kinetic energy functional E0 = integral of r |u|^2 over both quadrants.

    Computed as the stream-vorticity pairing E0 = 2 sum psi(x_i) zeta_i mu_i
    (the pairing equals the direct quadrature of r |u|^2; the equivalence is
    validated against a grid quadrature in the test suite).
    """
    if not system.n:
        return 0.0
    if psi is None:
        _ur, _uz, psi = velocity_arrays(
            system.r, system.z, system, want_psi=True, fast=fast
        )
    return float(2.0 * np.sum(psi * system.weights()))


def gamma_bound(system):
    """Computable positive lower bound for the axis integral of u_r(r,0).

    From the initial data only:  H = m0 / (2 Z), k = sqrt(a0) m0 / (2 Z^{3/2}),
    gamma = (1 - k/sqrt(1+k^2)) m0 / 4.
    """
    m0 = system.total_mass()
    z0 = vertical_Z(system)
    if m0 <= 0.0 or z0 <= 0.0 or system.a0 <= 0.0:
        raise DomainError("gamma bound needs positive mass, Z and a0")
    k = math.sqrt(system.a0) * m0 / (2.0 * z0**1.5)
    return (1.0 - k / math.sqrt(1.0 + k * k)) * m0 / 4.0


def weighted_mass_split(system):
    """(weighted_z, weighted_r): the two closed-form mass portions.

    weighted_z = sum (z/sqrt(r^2+z^2)) zeta mu and weighted_r = m0 -
    weighted_z; they equal the two axis integrals of the velocity in the
    continuum.
    """
    if not system.n:
        return 0.0, 0.0
    w = system.weights()
    frac = system.z / np.hypot(system.r, system.z)
    wz = float(np.sum(frac * w))
    wr = float(np.sum((1.0 - frac) * w))
    return wz, wr


# ---------------------------------------------------------------------------
# axis and field quadratures
# ---------------------------------------------------------------------------


def _scales(system):
    """(r_hi, z_hi, w0): support edges and core panel width for quadrature."""
    w = system.weights()
    tot = np.sum(w)
    rc = float(np.sum(w * system.r) / tot)
    zc = float(np.sum(w * system.z) / tot)
    var = float(np.sum(w * ((system.r - rc) ** 2 + (system.z - zc) ** 2)) / tot)
    L = max(math.sqrt(var), system.delta, 1e-12)
    r_hi = float(np.max(system.r)) + 2.0 * L
    z_hi = float(np.max(system.z)) + 2.0 * L
    return r_hi, z_hi, max(system.delta, 0.5 * L)


@dataclass
class AxisProfileResult:
    mass_axis_r: float = 0.0
    dP2_axis: float = 0.0
    p2_line: float = float("nan")
    ur_sup_axis: float = 0.0
    converged: bool = True


def axis_profile_integrals(system, spec=None, fast=True, want_p2_line=False):
    """Integrals of the symmetry-plane radial velocity u_r(r, 0).

    Always returns mass_axis_r = int u_r dr and dP2_axis = int r u_r^2 dr;
    optionally p2_line = int r^2 u_r dr (slow r^-1 tail, so only on
    request).  Also tracks the max |u_r| seen on the quadrature nodes.
    """
    if not system.n:
        return AxisProfileResult(p2_line=0.0)
    spec = spec or QuadSpec()
    r_hi, _z_hi, w0 = _scales(system)
    ev = summation.eval_axis_ur_fast if fast else summation.eval_axis_ur
    sup = [0.0]

    def fn(x):
        u = ev(np.ascontiguousarray(x), system.r, system.z, system.weights(), system.delta)
        sup[0] = max(sup[0], float(np.max(np.abs(u))))
        return u

    gs = [lambda x, u: u, lambda x, u: x * u * u]
    if want_p2_line:
        gs.append(lambda x, u: x * x * u)
    vals, ok = integrate_semiaxis(fn, gs, r_hi, w0, spec)
    res = AxisProfileResult(
        mass_axis_r=float(vals[0]),
        dP2_axis=float(vals[1]),
        ur_sup_axis=sup[0],
        converged=ok,
    )
    if want_p2_line:
        res.p2_line = float(vals[2])
    return res


@dataclass
class AxisVerticalResult:
    mass_axis_z: float = 0.0
    uz2_half: float = 0.0
    z_line: float = float("nan")
    converged: bool = True


def axis_vertical_integrals(system, spec=None, want_z_line=False):
    """Integrals of the axis profile -u_z(0, z) (elementary kernel).

    mass_axis_z = int (-u_z) dz, uz2_half = int u_z^2/2 dz, and optionally
    z_line = int z (-u_z) dz (slow z^-2 tail).
    """
    if not system.n:
        return AxisVerticalResult(z_line=0.0)
    spec = spec or QuadSpec()
    _r_hi, z_hi, w0 = _scales(system)

    def fn(x):
        return -summation.eval_axis_uz(
            np.ascontiguousarray(x), system.r, system.z, system.weights(), True
        )

    gs = [lambda x, u: u, lambda x, u: 0.5 * u * u]
    if want_z_line:
        gs.append(lambda x, u: x * u)
    vals, ok = integrate_semiaxis(fn, gs, z_hi, w0, spec)
    res = AxisVerticalResult(
        mass_axis_z=float(vals[0]), uz2_half=float(vals[1]), converged=ok
    )
    if want_z_line:
        res.z_line = float(vals[2])
    return res


# the 2D field integral has an intrinsic noise floor from blob granularity
# (~0.1% at default resolution), so its tolerances are looser than the 1D
# integrals'; "run" is a single sweep for monitoring columns, "verify" adds
# a refinement pass for the identity drivers
BOX_SPECS = {
    "run": QuadSpec(
        rel_tol=5e-3, tail_tol=5e-4, base_nodes=10, grow=1.7, max_refine=0, max_doubles=2
    ),
    "verify": QuadSpec(
        rel_tol=2.5e-3, tail_tol=2e-4, base_nodes=10, grow=1.7, max_refine=1, max_doubles=3
    ),
    # refinement studies halve the spacing and tighten the grids together
    "fine": QuadSpec(
        rel_tol=6e-4, tail_tol=5e-5, base_nodes=12, grow=1.6, max_refine=2, max_doubles=4
    ),
}


def field_ur2_integral(system, fast=True, profile="verify"):
    """(value, converged) for the quadrant integral of u_r^2 / r."""
    if not system.n:
        return 0.0, True
    spec = BOX_SPECS[profile]
    r_hi, z_hi, w0 = _scales(system)
    w0 = 2.0 * w0  # the squared field is smooth on the cloud scale

    def fn2(rr, zz):
        ur, _uz = velocity_arrays(rr, zz, system, fast=fast)
        return ur

    return integrate_box(
        fn2,
        lambda rr, zz, u: u * u / rr,
        r_hi,
        z_hi,
        w0,
        w0,
        spec,
        hi_mult=4.0,
    )


# ---------------------------------------------------------------------------
# two-sided identities
# ---------------------------------------------------------------------------


def dP2_two_ways(system, spec=None, fast=True, ur_at_particles=None):
    """(bulk, axis) evaluations of the P2 time derivative.

    bulk = 2 sum r_i u_r(x_i) zeta_i mu_i;  axis = int_0^inf r u_r(r,0)^2 dr.
    Equal for the continuum field; the gap measures discretization error.
    """
    if not system.n:
        return 0.0, 0.0
    if ur_at_particles is None:
        ur_at_particles, _ = velocity_arrays(system.r, system.z, system, fast=fast)
    bulk = float(2.0 * np.sum(system.r * ur_at_particles * system.weights()))
    axis = axis_profile_integrals(system, spec, fast).dP2_axis
    return bulk, axis


def dZ_two_ways(system, spec=None, fast=True, uz_at_particles=None, profile="verify"):
    """(bulk, axis_plus_field) evaluations of the Z time derivative.

    bulk = sum u_z(x_i) zeta_i mu_i;
    axis_plus_field = -[ int u_z(0,z)^2/2 dz + iint u_r^2/r dr dz ].
    """
    if not system.n:
        return 0.0, 0.0
    if uz_at_particles is None:
        _, uz_at_particles = velocity_arrays(system.r, system.z, system, fast=fast)
    bulk = float(np.sum(uz_at_particles * system.weights()))
    vert = axis_vertical_integrals(system, spec)
    box, _ok = field_ur2_integral(system, fast=fast, profile=profile)
    return bulk, -(vert.uz2_half + box)


def mass_identities(system, spec=None, fast=True):
    """(axis_r, axis_z, weighted_z, weighted_r).

    axis_r + axis_z should reproduce the total mass; axis_z matches
    weighted_z and axis_r matches weighted_r (closed-form portions of the
    mass), all up to discretization and quadrature error.
    """
    if not system.n:
        return 0.0, 0.0, 0.0, 0.0
    axis_r = axis_profile_integrals(system, spec, fast).mass_axis_r
    axis_z = axis_vertical_integrals(system, spec).mass_axis_z
    weighted_z, weighted_r = weighted_mass_split(system)
    return axis_r, axis_z, weighted_z, weighted_r


def lim_jeong_ratio(ur_sup, e0, a0, p2):
    """||u_r||_inf / (E0^{1/3} a0^{1/2} P2^{1/6}); nan when degenerate."""
    denom = e0 ** (1.0 / 3.0) * math.sqrt(a0) * p2 ** (1.0 / 6.0) if e0 > 0 and a0 > 0 and p2 > 0 else 0.0
    return ur_sup / denom if denom > 0.0 else float("nan")


def fit_exponent(t, q, window):
    """Least-squares slope of log q against log t inside a time window.

    Returns (slope, rms_residual).  Requires at least five samples in the
    window, strictly positive q there, and a positive window start.
    """
    t = np.asarray(t, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    t_lo, t_hi = window
    if not t_lo > 0.0:
        raise DomainError("fit window must start at t > 0")
    sel = (t >= t_lo) & (t <= t_hi)
    if int(np.sum(sel)) < 5:
        raise DomainError("fit window holds fewer than five samples")
    if np.any(q[sel] <= 0.0):
        raise DomainError("fit requires positive values inside the window")
    x = np.log(t[sel])
    y = np.log(q[sel])
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return float(coef[0]), float(np.sqrt(np.mean(resid**2)))


# ---------------------------------------------------------------------------
# the per-record bundle
# ---------------------------------------------------------------------------


@dataclass
class DiagnosticsRecord:
    """One time-stamped row of every monitored scalar."""

    t: float
    p: dict
    bigZ: float
    m0: float
    mR: dict
    e0: float
    omega_sup: float
    omega_lp: dict
    dP2_bulk: float
    dP2_axis: float
    dZ_bulk: float
    dZ_axis: float
    mass_axis_r: float
    mass_axis_z: float
    mass_weighted_z: float
    gamma0: float
    ur_axis_integral: float
    ineq_resid: float
    lj_ratio: float
    clamp_count: int
    zprime_ratio: dict = field(default_factory=dict)
    int_mR4: dict = field(default_factory=dict)


def _fmt_key(v):
    return "inf" if math.isinf(float(v)) else f"{float(v):g}"


def record_columns(k_list, p_list, R_list):
    """CSV column names, fixed order, matching record_to_row."""
    cols = ["t"]
    cols += [f"p{_fmt_key(k)}" for k in k_list]
    cols += ["bigZ", "m0"]
    cols += [f"mR_{_fmt_key(R)}" for R in R_list]
    cols += ["e0", "omega_sup"]
    cols += [f"omega_l{_fmt_key(p)}" for p in p_list]
    cols += [
        "dP2_bulk",
        "dP2_axis",
        "dZ_bulk",
        "dZ_axis",
        "mass_axis_r",
        "mass_axis_z",
        "mass_weighted_z",
        "gamma0",
        "ur_axis_integral",
        "ineq_resid",
        "lj_ratio",
        "clamp_count",
    ]
    cols += [f"zprime_ratio_{_fmt_key(R)}" for R in R_list]
    cols += [f"int_mR4_{_fmt_key(R)}" for R in R_list]
    return cols


def record_to_row(rec, k_list, p_list, R_list):
    row = [rec.t]
    row += [rec.p[float(k)] for k in k_list]
    row += [rec.bigZ, rec.m0]
    row += [rec.mR[float(R)] for R in R_list]
    row += [rec.e0, rec.omega_sup]
    row += [rec.omega_lp[float(p)] for p in p_list]
    row += [
        rec.dP2_bulk,
        rec.dP2_axis,
        rec.dZ_bulk,
        rec.dZ_axis,
        rec.mass_axis_r,
        rec.mass_axis_z,
        rec.mass_weighted_z,
        rec.gamma0,
        rec.ur_axis_integral,
        rec.ineq_resid,
        rec.lj_ratio,
        float(rec.clamp_count),
    ]
    row += [rec.zprime_ratio.get(float(R), float("nan")) for R in R_list]
    row += [rec.int_mR4.get(float(R), float("nan")) for R in R_list]
    return row


def compute_record(
    system,
    t,
    k_list=(2.0, 3.0),
    p_list=(1.0, 2.0, INF_P),
    R_list=(2.0,),
    clamp_count=0,
    e0_ref=None,
    gamma0=None,
    with_dZ_axis=True,
    spec=None,
    box_profile="verify",
    fast=True,
    ur=None,
    uz=None,
    psi=None,
    int_mR4=None,
):
    """Assemble a DiagnosticsRecord for one snapshot.

    Velocities/psi at the particles may be passed in when the caller has
    already evaluated them (the integrator reuses its first stage).  e0_ref
    is the run's initial energy for the growth-inequality slack; gamma0 the
    seeded lower-bound constant.  with_dZ_axis gates the expensive field
    quadrature; the column carries nan when skipped.
    """
    if system.n and (ur is None or uz is None or psi is None):
        ur, uz, psi = velocity_arrays(system.r, system.z, system, want_psi=True, fast=fast)
    w = system.weights() if system.n else np.zeros(0)

    p = {float(k): moment_pk(system, k) for k in k_list}
    bigZ = vertical_Z(system)
    m0 = system.total_mass()
    mR = {float(R): mass_mR(system, R) for R in R_list}
    e0 = energy_e0(system, psi=psi, fast=fast) if system.n else 0.0
    sup, lp = omega_norms(system, p_list)

    if system.n:
        dP2_bulk = float(2.0 * np.sum(system.r * ur * w))
        dZ_bulk = float(np.sum(uz * w))
        prof = axis_profile_integrals(system, spec, fast)
        vert = axis_vertical_integrals(system, spec)
        if with_dZ_axis:
            box, _ok = field_ur2_integral(system, fast=fast, profile=box_profile)
            dZ_axis = -(vert.uz2_half + box)
        else:
            dZ_axis = float("nan")
        weighted_z, _weighted_r = weighted_mass_split(system)
        if gamma0 is None:
            gamma0 = gamma_bound(system)
        e0_ref = e0 if e0_ref is None else e0_ref
        p2 = p.get(2.0, moment_pk(system, 2.0))
        ineq = 2.0 * math.sqrt(max(system.a0 * e0_ref, 0.0)) * math.sqrt(max(p2, 0.0)) - dP2_bulk
        ur_sup = max(float(np.max(np.abs(ur))), prof.ur_sup_axis)
        lj = lim_jeong_ratio(ur_sup, e0_ref, system.a0, p2)
        zratio = {}
        for R, mval in mR.items():
            zratio[R] = (-dZ_bulk) * R**4 / mval**4 if mval > 0.0 else float("nan")
        rec = DiagnosticsRecord(
            t=float(t),
            p=p,
            bigZ=bigZ,
            m0=m0,
            mR=mR,
            e0=e0,
            omega_sup=sup,
            omega_lp=lp,
            dP2_bulk=dP2_bulk,
            dP2_axis=prof.dP2_axis,
            dZ_bulk=dZ_bulk,
            dZ_axis=dZ_axis,
            mass_axis_r=prof.mass_axis_r,
            mass_axis_z=vert.mass_axis_z,
            mass_weighted_z=weighted_z,
            gamma0=gamma0,
            ur_axis_integral=prof.mass_axis_r,
            ineq_resid=ineq,
            lj_ratio=lj,
            clamp_count=int(clamp_count),
        )
        rec.zprime_ratio = zratio
    else:
        rec = DiagnosticsRecord(
            t=float(t),
            p=p,
            bigZ=0.0,
            m0=0.0,
            mR=mR,
            e0=0.0,
            omega_sup=0.0,
            omega_lp=lp,
            dP2_bulk=0.0,
            dP2_axis=0.0,
            dZ_bulk=0.0,
            dZ_axis=0.0,
            mass_axis_r=0.0,
            mass_axis_z=0.0,
            mass_weighted_z=0.0,
            gamma0=float("nan") if gamma0 is None else gamma0,
            ur_axis_integral=0.0,
            ineq_resid=0.0,
            lj_ratio=float("nan"),
            clamp_count=int(clamp_count),
        )
    rec.int_mR4 = dict(int_mR4) if int_mR4 else {float(R): 0.0 for R in R_list}
    return rec
