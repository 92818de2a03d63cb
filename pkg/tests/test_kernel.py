import math

import numpy as np
import pytest

from axivort.errors import DomainError
from axivort.kernel import desing_D, kernel_eval, kernel_F, kernel_F_prime
from axivort.oracles import (
    central_difference,
    kernel_F_prime_quadrature,
    kernel_F_quadrature,
    log_spaced,
)

# frozen oracle values (adaptive quadrature of the defining integrals)
F_AT_4 = 0.11288854241046767
F_AT_HALF = 0.6174121116668531
FP_AT_1 = -0.28582861948408317


def test_frozen_quadrature_values():
    assert kernel_F(4.0) == pytest.approx(F_AT_4, rel=1e-9)
    assert kernel_F(0.5) == pytest.approx(F_AT_HALF, rel=1e-9)
    assert kernel_F_prime(1.0) == pytest.approx(FP_AT_1, rel=1e-9)


@pytest.mark.parametrize("s", [1e-6, 1e-3, 0.3, 4.0, 11.5, 13.0, 1e3, 1e6])
def test_live_oracle_spot_checks(s):
    assert kernel_F(s) == pytest.approx(kernel_F_quadrature(s), rel=1e-9)
    assert kernel_F_prime(s) == pytest.approx(kernel_F_prime_quadrature(s), rel=1e-9)


def test_large_s_asymptote():
    s = 1e6
    assert kernel_F(s) * s**1.5 == pytest.approx(math.pi / 2, rel=1e-3)


def test_small_s_asymptote():
    s = 1e-8
    target = 0.5 * math.log(1.0 / s) + math.log(8.0) - 2.0
    assert abs(kernel_F(s) - target) < 1e-4


def test_prime_small_s_asymptote():
    s = 1e-6
    assert -kernel_F_prime(s) == pytest.approx(1.0 / (2.0 * s), rel=1e-2)


def test_prime_large_s_asymptote():
    s = 1e6
    assert -kernel_F_prime(s) == pytest.approx(0.75 * math.pi * s**-2.5, rel=1e-2)


def test_prime_matches_finite_difference():
    fd = central_difference(kernel_F, 1.0, 1e-5)
    assert kernel_F_prime(1.0) == pytest.approx(fd, rel=1e-6)


def test_signs_and_monotonicity():
    s = log_spaced(1e-6, 1e6, 200)
    f = kernel_F(s)
    fp = kernel_F_prime(s)
    assert np.all(f > 0)
    assert np.all(fp < 0)
    assert np.all(np.diff(f) < 0)
    assert np.all(np.diff(fp) > 0)


def test_branch_seam_is_smooth():
    # the series/closed-form switch sits at s = 12; remove the genuine
    # first-order variation of F across the gap before comparing branches
    eps = 1e-9
    lo = kernel_F(12.0 - eps)
    hi = kernel_F(12.0 + eps)
    jump = (lo - hi) - (-2.0 * eps * kernel_F_prime(12.0))
    assert abs(jump) < 1e-12 * kernel_F(12.0)


def test_kernel_eval_bundle():
    ev = kernel_eval(2.5)
    assert ev.s == 2.5
    assert ev.f == kernel_F(2.5)
    assert ev.fp == kernel_F_prime(2.5)


@pytest.mark.parametrize("s", [0.0, -1.0])
def test_domain_error(s):
    with pytest.raises(DomainError):
        kernel_F(s)
    with pytest.raises(DomainError):
        kernel_F_prime(s)


class TestDesingD:
    def test_coincident_points(self):
        assert desing_D(1.0, 1.0, 1.0, 1.0, delta=0.1) == pytest.approx(0.01)

    def test_plain_substitution(self):
        assert desing_D(1.0, 0.0, 2.0, 0.0, delta=0.0) == pytest.approx(0.5)

    def test_symmetry_under_point_swap(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            r, rb = rng.uniform(0.1, 3.0, 2)
            z, zb = rng.uniform(-2.0, 2.0, 2)
            d = rng.uniform(0.0, 0.5)
            assert desing_D(r, z, rb, zb, d) == pytest.approx(
                desing_D(rb, zb, r, z, d), rel=1e-14
            )

    def test_zero_delta_recovers_similarity_variable(self):
        assert desing_D(2.0, 1.0, 1.0, -1.0, delta=0.0) == pytest.approx(
            (1.0 + 4.0) / 2.0
        )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            desing_D(0.0, 0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            desing_D(1.0, 0.0, -1.0, 0.0)
        with pytest.raises(DomainError):
            desing_D(1.0, 0.0, 1.0, 0.0, delta=-0.1)


def test_oracle_equivalence_sweep():
    # subset of the acceptance sweep so the unit suite stays quick
    for s in log_spaced(1e-6, 1e6, 25):
        q = kernel_F_quadrature(s)
        qp = kernel_F_prime_quadrature(s)
        assert abs(kernel_F(s) - q) <= 1e-9 * abs(q)
        assert abs(kernel_F_prime(s) - qp) <= 1e-9 * abs(qp)
