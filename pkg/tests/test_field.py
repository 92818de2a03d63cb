import numpy as np
import pytest

from axivort.errors import DomainError, SingularEvaluationError
from axivort.field import (
    FieldRequest,
    axis_radial_velocity,
    axis_vertical_velocity,
    induced_velocity,
    stream_function,
    velocity_arrays,
)
from axivort.particles import ParticleSystem

from conftest import manual_system


def test_empty_system_gives_zero_samples():
    empty = manual_system([], [], [], [])
    samples = induced_velocity(FieldRequest(probes=[(0.5, 0.2), (1.0, -1.0)]), empty)
    assert all(s.ur == 0.0 and s.uz == 0.0 for s in samples)


def test_mirror_probe_symmetry(single_blob):
    pr = np.array([0.7, 1.2, 1.5])
    pz = np.array([0.4, 1.1, 0.2])
    ur, uz = velocity_arrays(pr, pz, single_blob)
    urm, uzm = velocity_arrays(pr, -pz, single_blob)
    assert np.allclose(urm, ur, rtol=1e-13, atol=1e-18)
    assert np.allclose(uzm, -uz, rtol=1e-13, atol=1e-18)


def test_symmetry_plane_probe_has_zero_uz(single_blob):
    _ur, uz = velocity_arrays(np.array([0.9]), np.array([0.0]), single_blob)
    assert uz[0] == 0.0


def test_near_axis_richardson_against_axis_formula(single_blob):
    # with delta = 0 the r -> 0 limit of the folded kernel is exactly the
    # elementary axis formula; the gap closes at second order in r
    z = 0.8
    uz_axis = axis_vertical_velocity(z, single_blob)
    errs = []
    for r in (1e-3, 5e-4):
        _ur, uz = velocity_arrays(np.array([r]), np.array([z]), single_blob, delta=0.0)
        errs.append(abs(uz[0] - uz_axis))
    ratio = errs[0] / errs[1]
    assert 3.4 < ratio < 4.6


def test_axis_radial_velocity_positive_and_consistent(single_blob):
    r = np.array([0.6, 1.0, 1.8])
    u_spec = axis_radial_velocity(r, single_blob)
    assert np.all(u_spec > 0.0)
    ur, _uz = velocity_arrays(r, np.zeros_like(r), single_blob)
    assert np.allclose(u_spec, ur, rtol=1e-12)


def test_axis_radial_velocity_zero_field():
    zero = manual_system([1.0], [0.5], [0.0], [0.01])
    assert axis_radial_velocity(1.0, zero) == 0.0


def test_axis_radial_velocity_domain():
    sys_ = manual_system([1.0], [0.5], [1.0], [0.01])
    with pytest.raises(DomainError):
        axis_radial_velocity(0.0, sys_)


class TestAxisVertical:
    def test_zero_at_plane(self, single_blob):
        assert axis_vertical_velocity(0.0, single_blob) == 0.0

    def test_negative_above_plane(self, single_blob):
        for z in (0.2, 0.8, 1.5, 3.0):
            assert axis_vertical_velocity(z, single_blob) < 0.0

    def test_single_particle_closed_form(self):
        rb, zb, w = 1.3, 0.7, 1.0
        sys_ = manual_system([rb], [zb], [1.0], [w])
        z = 0.4
        expect = -0.5 * (
            rb**2 / (rb**2 + (z - zb) ** 2) ** 1.5
            - rb**2 / (rb**2 + (z + zb) ** 2) ** 1.5
        )
        assert axis_vertical_velocity(z, sys_) == pytest.approx(expect, rel=1e-14)


class TestStreamFunction:
    def test_zero_on_axis(self, single_blob):
        assert stream_function((0.0, 0.7), single_blob) == 0.0

    def test_zero_on_symmetry_plane(self, single_blob):
        assert stream_function((1.1, 0.0), single_blob) == 0.0

    def test_finite_difference_velocities_second_order(self, single_blob):
        # u = (1/r) (d_z psi, -d_r psi); centered differences converge at
        # O(h^2) to the directly summed velocity
        r0, z0 = 1.4, 0.9
        ur_ref, uz_ref = velocity_arrays(
            np.array([r0]), np.array([z0]), single_blob
        )
        errs = []
        for h in (2e-3, 1e-3):
            psi = stream_function(
                [(r0, z0 + h), (r0, z0 - h), (r0 + h, z0), (r0 - h, z0)], single_blob
            )
            ur_fd = (psi[0] - psi[1]) / (2 * h) / r0
            uz_fd = -(psi[2] - psi[3]) / (2 * h) / r0
            errs.append(np.hypot(ur_fd - ur_ref[0], uz_fd - uz_ref[0]))
        ratio = errs[0] / errs[1]
        assert 3.3 < ratio < 4.7


def test_divergence_free_in_weighted_form(single_blob):
    # d_r(r u_r) + d_z(r u_z) vanishes identically; centered differences
    # shrink at second order under grid refinement
    rr = np.linspace(0.5, 1.6, 7)
    zz = np.linspace(0.4, 1.5, 7)
    R, Z = np.meshgrid(rr, zz, indexing="ij")

    def div_residual(h):
        probes_r = np.concatenate([R.ravel() + h, R.ravel() - h, R.ravel(), R.ravel()])
        probes_z = np.concatenate([Z.ravel(), Z.ravel(), Z.ravel() + h, Z.ravel() - h])
        ur, uz = velocity_arrays(probes_r, probes_z, single_blob)
        n = R.size
        d_r = ((probes_r * ur)[:n] - (probes_r * ur)[n : 2 * n]) / (2 * h)
        d_z = ((probes_r * uz)[2 * n : 3 * n] - (probes_r * uz)[3 * n :]) / (2 * h)
        return float(np.max(np.abs(d_r + d_z)))

    e1, e2 = div_residual(4e-3), div_residual(2e-3)
    assert e1 / e2 > 3.3


def test_circulation_matches_total_weight(single_blob):
    # counterclockwise line integral of u around a rectangle holding all
    # particles equals the enclosed vorticity integral
    from numpy.polynomial.legendre import leggauss

    r_lo, r_hi, z_lo, z_hi = 0.1, 4.0, 0.1, 4.0
    x, w = leggauss(160)

    def edge(a, b):
        return 0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * w

    total = 0.0
    # bottom: +u_r dz=const, top: -u_r; right: +u_z, left: -u_z
    rr, ww = edge(r_lo, r_hi)
    ur, _ = velocity_arrays(rr, np.full_like(rr, z_lo), single_blob)
    total += np.sum(ww * ur)
    ur, _ = velocity_arrays(rr, np.full_like(rr, z_hi), single_blob)
    total -= np.sum(ww * ur)
    zz, ww = edge(z_lo, z_hi)
    _, uz = velocity_arrays(np.full_like(zz, r_hi), zz, single_blob)
    total += np.sum(ww * uz)
    _, uz = velocity_arrays(np.full_like(zz, r_lo), zz, single_blob)
    total -= np.sum(ww * uz)
    assert total == pytest.approx(single_blob.total_mass(), rel=1.5e-3)


def test_bit_determinism(single_blob):
    pr = np.linspace(0.3, 2.0, 40)
    pz = np.linspace(0.1, 2.0, 40)
    a = velocity_arrays(pr, pz, single_blob)
    b = velocity_arrays(pr, pz, single_blob)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_fast_path_matches_deterministic(single_blob):
    pr = np.linspace(0.3, 2.0, 25)
    pz = np.linspace(0.1, 2.0, 25)
    det = velocity_arrays(pr, pz, single_blob, want_psi=True)
    fast = velocity_arrays(pr, pz, single_blob, want_psi=True, fast=True)
    for a, b in zip(det, fast):
        scale = np.max(np.abs(a)) or 1.0
        assert np.max(np.abs(a - b)) < 1e-12 * scale


def test_singular_unregularized_evaluation():
    sys_ = manual_system([1.0], [0.5], [1.0], [0.01], delta=0.05)
    with pytest.raises(SingularEvaluationError):
        velocity_arrays(np.array([1.0]), np.array([0.5]), sys_, delta=0.0)


def test_probe_validation():
    sys_ = manual_system([1.0], [0.5], [1.0], [0.01])
    with pytest.raises(DomainError):
        FieldRequest(probes=[(-0.1, 0.0)]).arrays()
    with pytest.raises(DomainError):
        stream_function((-0.5, 0.0), sys_)
