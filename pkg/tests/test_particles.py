import numpy as np
import pytest
from scipy.integrate import dblquad

from axivort.errors import ConfigError
from axivort.particles import (
    load_snapshot,
    save_snapshot,
    seed_gaussian_dipole,
    seed_grid,
    seed_patch,
)


def gaussian(r0, z0, sigma, amp=1.0):
    def zeta0(r, z):
        return amp * np.exp(-((r - r0) ** 2 + (z - z0) ** 2) / sigma**2)

    return zeta0


class TestSeedGrid:
    def test_zero_field_gives_empty_system(self):
        sys_ = seed_grid(lambda r, z: np.zeros_like(r), (0.5, 1.5, 0.5, 1.5), 0.05)
        assert sys_.n == 0
        assert sys_.total_mass() == 0.0

    def test_total_mass_matches_independent_quadrature(self):
        bbox = (0.4, 1.6, 0.4, 1.6)
        zeta0 = gaussian(1.0, 1.0, 0.2)
        sys_ = seed_grid(zeta0, bbox, 0.02)
        exact, _ = dblquad(
            lambda z, r: zeta0(r, z) * r, bbox[0], bbox[1], bbox[2], bbox[3],
            epsabs=1e-12, epsrel=1e-12,
        )
        assert sys_.total_mass() == pytest.approx(exact, rel=1e-4)

    def test_mass_error_shrinks_quadratically(self):
        bbox = (0.5, 1.5, 0.5, 1.5)
        zeta0 = gaussian(1.0, 1.0, 0.22)
        exact, _ = dblquad(
            lambda z, r: zeta0(r, z) * r, bbox[0], bbox[1], bbox[2], bbox[3],
            epsabs=1e-13, epsrel=1e-13,
        )
        errs = [
            abs(seed_grid(zeta0, bbox, h).total_mass() - exact)
            for h in (0.1, 0.05, 0.025)
        ]
        assert errs[0] / errs[1] > 3.0
        assert errs[1] / errs[2] > 3.0

    def test_deterministic(self):
        bbox = (0.5, 1.5, 0.2, 1.2)
        a = seed_grid(gaussian(1.0, 0.7, 0.2), bbox, 0.03)
        b = seed_grid(gaussian(1.0, 0.7, 0.2), bbox, 0.03)
        for x, y in ((a.r, b.r), (a.z, b.z), (a.zeta, b.zeta), (a.mu, b.mu)):
            assert np.array_equal(x, y)

    def test_all_particles_in_quadrant(self):
        sys_ = seed_gaussian_dipole(h=0.02)
        assert np.all(sys_.r > 0) and np.all(sys_.z > 0) and np.all(sys_.zeta >= 0)

    def test_config_errors(self):
        with pytest.raises(ConfigError):
            seed_grid(gaussian(1, 1, 0.2), (1.5, 0.5, 0.0, 1.0), 0.05)
        with pytest.raises(ConfigError):
            seed_grid(gaussian(1, 1, 0.2), (0.5, 1.0, 0.0, 1.0), 0.8)
        with pytest.raises(ConfigError):
            seed_grid(gaussian(1, 1, 0.2), (0.5, 1.0, 0.0, 1.0), -0.1)


class TestGaussianDipole:
    def test_zero_amplitude_empty(self):
        assert seed_gaussian_dipole(amp=0.0).n == 0

    def test_recorded_sup_is_amplitude(self):
        sys_ = seed_gaussian_dipole(amp=2.5, h=0.02)
        assert sys_.a0 == 2.5
        assert np.max(sys_.zeta) <= 2.5

    def test_vertical_centroid_near_ring_height(self):
        z0 = 0.5
        sys_ = seed_gaussian_dipole(z0=z0, sigma=0.1 * z0, h=0.005)
        centroid = np.sum(sys_.z * sys_.zeta * sys_.mu) / sys_.total_mass()
        assert centroid == pytest.approx(z0, rel=2e-2)

    def test_default_scale(self):
        sys_ = seed_gaussian_dipole()
        assert 1800 <= sys_.n <= 2300
        assert sys_.delta == pytest.approx(1.5 * 0.0089, rel=1e-6)

    def test_negative_parameters_rejected(self):
        with pytest.raises(ConfigError):
            seed_gaussian_dipole(amp=-1.0)
        with pytest.raises(ConfigError):
            seed_gaussian_dipole(sigma=0.0)
        with pytest.raises(ConfigError):
            seed_gaussian_dipole(z0=-0.5)


class TestPatch:
    def test_mass_matches_disc_integral(self):
        r0, z0, a = 1.5, 1.0, 0.15
        sys_ = seed_patch(r0, z0, a, h=0.01)
        # centroid formula: integral of r over the disc = pi a^2 r0
        assert sys_.total_mass() == pytest.approx(np.pi * a * a * r0, rel=1e-2)

    def test_unit_sup(self):
        assert seed_patch(1.5, 1.0, 0.2, h=0.02).a0 == 1.0

    def test_tiny_patch_empties(self):
        sys_ = seed_patch(1.0, 1.0, 0.004, h=0.01)
        assert sys_.n == 0

    def test_disc_must_stay_in_quadrant(self):
        with pytest.raises(ConfigError):
            seed_patch(0.5, 1.0, 0.6, h=0.01)
        with pytest.raises(ConfigError):
            seed_patch(1.0, 0.2, 0.3, h=0.01)


class TestSnapshots:
    def test_roundtrip_bitwise(self, tmp_path, single_blob):
        path = tmp_path / "snap.txt"
        save_snapshot(single_blob, 1.25, path)
        loaded, t = load_snapshot(path)
        assert t == 1.25
        assert loaded.delta == single_blob.delta
        assert loaded.a0 == single_blob.a0
        for a, b in (
            (loaded.r, single_blob.r),
            (loaded.z, single_blob.z),
            (loaded.zeta, single_blob.zeta),
            (loaded.mu, single_blob.mu),
        ):
            assert np.array_equal(a, b)

    def test_empty_roundtrip(self, tmp_path):
        empty = seed_gaussian_dipole(amp=0.0)
        path = tmp_path / "empty.txt"
        save_snapshot(empty, 0.0, path)
        loaded, _ = load_snapshot(path)
        assert loaded.n == 0

    def test_malformed_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 2\n")
        with pytest.raises(ConfigError):
            load_snapshot(path)
