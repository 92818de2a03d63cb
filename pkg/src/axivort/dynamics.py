"""Time evolution of particle positions under the self-induced field.

Positions follow dr/dt = u_r, dz/dt = u_z with classical fourth-order
Runge-Kutta; zeta and mu never change (the transported quantity and the
volume weight are conserved along trajectories, which the discretization
preserves exactly by construction).  Self-interaction is kept: a
regularized blob induces motion on itself through the ring curvature,
which is the physical self-propulsion of a thin ring with core width
delta.

The continuum flow leaves the upper quadrant invariant, so the vertical
velocity vanishes at z = 0 and trajectories never cross the symmetry
plane.  Discrete steps can overshoot by O(dt^5); such particles are
clamped back to z = 0 and counted, and a run aborts if the count passes a
small fraction of the system (crossings signal resolution failure, not
physics).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, StepRejectedError
from .field import velocity_arrays
from .particles import ParticleSystem
from . import diagnostics

CLAMP_ABORT_FRACTION = 1e-3


@dataclass
class SimState:
    """Positions plus time; zeta/mu live in the shared system arrays."""

    time: float
    system: ParticleSystem
    clamp_count: int = 0


def rhs(state, fast=True, want_psi=False):
    """Velocity samples at the particle positions (odd folding on).

    Returns (ur, uz) arrays, or (ur, uz, psi) with want_psi.  The blob
    width regularizes the self-term, so values are finite for delta > 0.
    """
    sys_ = state.system
    if not sys_.n:
        empty = np.zeros(0)
        return (empty, empty, empty) if want_psi else (empty, empty)
    return velocity_arrays(sys_.r, sys_.z, sys_, want_psi=want_psi, fast=fast)


def _moved(system, r, z):
    return ParticleSystem(
        r=r, z=z, zeta=system.zeta, mu=system.mu,
        delta=system.delta, a0=system.a0, meta=system.meta,
    )


def step_rk4(state, dt, frozen_sources=None, cfl=None, fast=True, k1=None):
    """One classical RK4 step of size dt; returns the advanced state.

    With frozen_sources the particles are advected as passive tracers in
    the field of that fixed system; otherwise the field moves with the
    stage positions (the self-consistent dynamics).  cfl, when given,
    rejects the step unless dt <= cfl * delta / max|u| (StepRejectedError
    carries the admissible dt).  k1 may pass in velocities already
    evaluated at the current positions.
    """
    if not dt > 0.0:
        raise ConfigError("dt must be > 0")
    sys_ = state.system
    if not sys_.n:
        return SimState(state.time + dt, sys_.copy(), state.clamp_count)
    r0, z0 = sys_.r, sys_.z

    def vel(r, z):
        if frozen_sources is not None:
            return velocity_arrays(r, z, frozen_sources, fast=fast)
        return velocity_arrays(r, z, _moved(sys_, r, z), fast=fast)

    if k1 is None:
        k1 = vel(r0, z0)
    ur1, uz1 = k1
    if cfl is not None and cfl > 0.0 and sys_.delta > 0.0:
        umax = float(np.max(np.hypot(ur1, uz1)))
        if umax > 0.0:
            admissible = cfl * sys_.delta / umax
            if dt > admissible:
                raise StepRejectedError(
                    f"dt={dt:g} exceeds CFL-admissible {admissible:g}",
                    admissible_dt=admissible,
                )
    half = 0.5 * dt
    ur2, uz2 = vel(r0 + half * ur1, z0 + half * uz1)
    ur3, uz3 = vel(r0 + half * ur2, z0 + half * uz2)
    ur4, uz4 = vel(r0 + dt * ur3, z0 + dt * uz3)
    r1 = r0 + (dt / 6.0) * (ur1 + 2.0 * ur2 + 2.0 * ur3 + ur4)
    z1 = z0 + (dt / 6.0) * (uz1 + 2.0 * uz2 + 2.0 * uz3 + uz4)

    crossed = z1 < 0.0
    n_crossed = int(np.sum(crossed))
    if n_crossed:
        z1 = z1.copy()
        z1[crossed] = 0.0
    return SimState(
        time=state.time + dt,
        system=_moved(sys_, r1, z1),
        clamp_count=state.clamp_count + n_crossed,
    )


@dataclass
class RunResult:
    status: str  # completed | aborted_nan | aborted_clamp
    final_state: SimState
    n_records: int
    message: str = ""


def run(config, on_record=None, on_snapshot=None):
    """Seed the configured scenario and integrate to t_end.

    Emits a DiagnosticsRecord through on_record every record_every steps
    (plus the final step) and hands states to on_snapshot every snap_every
    steps.  Terminates early with a non-completed status if positions or
    velocities go non-finite, or if the clamp count passes
    CLAMP_ABORT_FRACTION of the particle count.
    """
    from .config import seed_from_config  # local import to avoid a cycle

    system, t0 = seed_from_config(config)
    state = SimState(time=t0, system=system)
    fast = not config.deterministic
    n_steps = int(round(config.t_end / config.dt)) if config.t_end > 0 else 0

    gamma0 = None
    e0_ref = None
    if system.n and system.total_mass() > 0.0 and vertical_ok(system):
        gamma0 = diagnostics.gamma_bound(system)
    int_mR4 = {float(R): 0.0 for R in config.R_list}
    last_record_t = None
    last_mR4 = None
    n_records = 0
    spec = config.quad_spec()

    def emit(state, k1psi, heavy):
        nonlocal e0_ref, last_record_t, last_mR4, n_records
        ur, uz, psi = k1psi
        rec = diagnostics.compute_record(
            state.system,
            state.time,
            k_list=config.k_list,
            p_list=config.p_list,
            R_list=config.R_list,
            clamp_count=state.clamp_count,
            e0_ref=e0_ref,
            gamma0=gamma0,
            with_dZ_axis=heavy,
            spec=spec,
            box_profile="run",
            fast=fast,
            ur=ur,
            uz=uz,
            psi=psi,
        )
        if e0_ref is None:
            e0_ref = rec.e0
        mR4 = {R: v**4 for R, v in rec.mR.items()}
        if last_record_t is not None:
            dt_rec = rec.t - last_record_t
            for R in int_mR4:
                int_mR4[R] += 0.5 * dt_rec * (mR4[R] + last_mR4[R])
        last_record_t, last_mR4 = rec.t, mR4
        rec.int_mR4 = dict(int_mR4)
        n_records += 1
        if on_record is not None:
            on_record(rec)
        return rec

    record_idx = 0
    for step in range(n_steps + 1):
        final = step == n_steps
        recording = final or (step % config.record_every == 0)
        k1psi = rhs(state, fast=fast, want_psi=True) if recording else None
        if recording:
            if not all(np.all(np.isfinite(a)) for a in k1psi):
                emit(state, k1psi, heavy=False)
                return RunResult("aborted_nan", state, n_records, "non-finite field")
            heavy = final or (record_idx % config.identities_every == 0)
            emit(state, k1psi, heavy)
            record_idx += 1
        if on_snapshot is not None and (final or step % config.snap_every == 0):
            on_snapshot(state, step)
        if final:
            break
        k1 = (k1psi[0], k1psi[1]) if recording else None
        state = step_rk4(state, config.dt, cfl=config.cfl or None, fast=fast, k1=k1)
        if state.system.n and not (
            np.all(np.isfinite(state.system.r)) and np.all(np.isfinite(state.system.z))
        ):
            return RunResult("aborted_nan", state, n_records, "non-finite positions")
        if state.system.n and state.clamp_count > CLAMP_ABORT_FRACTION * state.system.n:
            return RunResult(
                "aborted_clamp",
                state,
                n_records,
                f"clamp count {state.clamp_count} exceeds "
                f"{CLAMP_ABORT_FRACTION:g} of {state.system.n} particles",
            )
    return RunResult("completed", state, n_records)


def vertical_ok(system):
    return diagnostics.vertical_Z(system) > 0.0
