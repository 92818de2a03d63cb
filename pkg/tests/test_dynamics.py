import numpy as np
import pytest

from axivort import dynamics
from axivort.config import default_config
from axivort.dynamics import SimState, rhs, run, step_rk4
from axivort.errors import StepRejectedError
from axivort.particles import seed_gaussian_dipole

from conftest import manual_system


def test_empty_system_is_stationary():
    state = SimState(0.0, seed_gaussian_dipole(amp=0.0))
    out = step_rk4(state, 0.1)
    assert out.time == pytest.approx(0.1)
    assert out.system.n == 0


def test_zero_vorticity_leaves_positions_fixed():
    sys_ = manual_system([0.8, 1.2], [0.5, 0.9], [0.0, 0.0], [0.01, 0.01])
    state = SimState(0.0, sys_)
    out = step_rk4(state, 0.05)
    assert np.array_equal(out.system.r, sys_.r)
    assert np.array_equal(out.system.z, sys_.z)


def test_single_blob_velocities_finite():
    sys_ = manual_system([1.0], [0.7], [1.0], [0.02], delta=0.05)
    ur, uz = rhs(SimState(0.0, sys_))
    assert np.all(np.isfinite(ur)) and np.all(np.isfinite(uz))
    # the direct self-pair cancels in u_r, but the mirror ring pushes the
    # blob outward; both components stay bounded by the regularization
    assert 0.0 < ur[0] < 1.0
    assert 0.0 < abs(uz[0]) < 1.0


def test_uz_vanishes_linearly_at_plane(single_blob):
    from axivort.field import velocity_arrays

    z_probe = np.array([1e-3, 1e-4])
    _ur, uz = velocity_arrays(np.array([1.0, 1.0]), z_probe, single_blob)
    ratio = uz[0] / uz[1]
    assert ratio == pytest.approx(10.0, rel=5e-2)


def test_frozen_field_reversibility(three_blobs):
    frozen = three_blobs.copy()
    state = SimState(0.0, three_blobs)

    def residual(dt):
        fwd = step_rk4(state, dt, frozen_sources=frozen)
        back = step_rk4(fwd, dt, frozen_sources=frozen)
        # reverse by advecting in the negated frozen field
        neg = frozen.copy()
        neg.zeta = -neg.zeta  # sign flip flips velocities linearly
        back = step_rk4(fwd, dt, frozen_sources=neg)
        dr = back.system.r - state.system.r
        dz = back.system.z - state.system.z
        return float(np.max(np.hypot(dr, dz)))

    r1, r2 = residual(0.4), residual(0.2)
    assert r1 / r2 > 16.0  # O(dt^5) composition defect


def test_global_fourth_order(three_blobs):
    t_end = 0.8

    def integrate(dt):
        state = SimState(0.0, three_blobs.copy())
        for _ in range(round(t_end / dt)):
            state = step_rk4(state, dt)
        return state.system

    ref = integrate(t_end / 64)
    errs = []
    for dt in (t_end / 4, t_end / 8):
        sys_ = integrate(dt)
        errs.append(
            float(np.max(np.hypot(sys_.r - ref.r, sys_.z - ref.z)))
        )
    order = np.log2(errs[0] / errs[1])
    assert order > 3.6


def test_cfl_rejection(three_blobs):
    state = SimState(0.0, three_blobs)
    with pytest.raises(StepRejectedError) as exc:
        step_rk4(state, 50.0, cfl=0.5)
    assert 0.0 < exc.value.admissible_dt < 50.0


def test_invariants_conserved_through_steps(small_dipole):
    sys_ = small_dipole.copy()
    zeta0 = sys_.zeta.copy()
    mu0 = sys_.mu.copy()
    state = SimState(0.0, sys_)
    for _ in range(3):
        state = step_rk4(state, 0.05)
    assert np.array_equal(state.system.zeta, zeta0)
    assert np.array_equal(state.system.mu, mu0)
    assert state.system.total_mass() == sys_.total_mass()


class TestRun:
    def test_zero_horizon_emits_single_record(self):
        cfg = default_config(t_end=0.0, h=0.04)
        records = []
        res = run(cfg, on_record=records.append)
        assert res.status == "completed"
        assert len(records) == 1
        assert records[0].t == 0.0

    def test_short_run_monotone_moments(self):
        cfg = default_config(t_end=0.3, h=0.035, identities_every=100)
        records = []
        res = run(cfg, on_record=records.append)
        assert res.status == "completed"
        p2 = [r.p[2.0] for r in records]
        bigz = [r.bigZ for r in records]
        assert all(b > a for a, b in zip(p2, p2[1:]))
        assert all(b < a for a, b in zip(bigz, bigz[1:]))
        m0 = {r.m0 for r in records}
        assert len(m0) == 1  # bit-identical across the run
        assert all(r.clamp_count == 0 for r in records)
        drift = abs(records[-1].e0 - records[0].e0) / records[0].e0
        assert drift < 1e-6

    def test_snapshot_cadence(self, tmp_path):
        cfg = default_config(t_end=0.1, h=0.04, snap_every=2)
        seen = []
        run(cfg, on_snapshot=lambda st, step: seen.append(step))
        assert seen == [0, 2, 4, 5]

    def test_clamp_abort(self, monkeypatch):
        # force a crossing via a stepper stub; the run loop must abort once
        # the clamp count passes its fraction of the particle count
        cfg = default_config(t_end=0.2, h=0.035)
        real_step = dynamics.step_rk4

        def crossing_step(state, dt, **kwargs):
            out = real_step(state, dt, **kwargs)
            return dynamics.SimState(out.time, out.system, out.clamp_count + 50)

        monkeypatch.setattr(dynamics, "step_rk4", crossing_step)
        res = dynamics.run(cfg)
        assert res.status == "aborted_clamp"
        assert "clamp" in res.message
