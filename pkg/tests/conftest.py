import numpy as np
import pytest

from axivort.particles import ParticleSystem, seed_gaussian_dipole


def manual_system(r, z, zeta, mu, delta=0.05, a0=None):
    r = np.asarray(r, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    zeta = np.asarray(zeta, dtype=np.float64)
    mu = np.asarray(mu, dtype=np.float64)
    return ParticleSystem(
        r=r,
        z=z,
        zeta=zeta,
        mu=mu,
        delta=delta,
        a0=float(np.max(zeta)) if a0 is None and zeta.size else (a0 or 0.0),
        meta={"kind": "manual"},
    )


@pytest.fixture(scope="session")
def single_blob():
    """One compact ring blob well away from both axes, ~500 particles."""
    return seed_gaussian_dipole(r0=1.0, z0=1.0, sigma=0.1, h=0.0089, box_sigmas=1.0)


@pytest.fixture(scope="session")
def small_dipole():
    """Quarter-resolution ring pair (~500 particles) for identity smoke tests."""
    return seed_gaussian_dipole(h=0.0178)


@pytest.fixture()
def three_blobs():
    return manual_system(
        r=[0.8, 1.1, 1.3],
        z=[0.6, 0.9, 0.5],
        zeta=[1.0, 0.7, 0.4],
        mu=[0.01, 0.012, 0.008],
        delta=0.1,
    )
