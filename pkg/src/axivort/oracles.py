"""Quadrature oracles for the kernel module.

These evaluate the *defining integrals* directly with adaptive quadrature
and exist only to check the closed-form elliptic reduction; production code
never calls them in hot paths.  They are deliberately independent of
kernel.py: no elliptic integrals, no series, just the integrands.

Conditioning trick: since integral_0^pi cos(theta) dtheta = 0, any constant
may be subtracted from the square-root weight without changing the value.
Subtracting the theta = pi/2 weight makes the integrand the same order of
magnitude as the result itself (instead of O(s^-1/2) with an O(s^-3/2)
result for large s), so the quadrature's relative error control is
meaningful across the whole range s in [1e-6, 1e6].
"""

import math

import numpy as np
from scipy.integrate import quad


def _quad(fn, points=None):
    val, _err = quad(
        fn,
        0.0,
        math.pi,
        epsabs=1e-300,
        epsrel=5e-13,
        limit=800,
        points=points,
        full_output=False,
    )
    return val


def kernel_F_quadrature(s):
    """F(s) by adaptive quadrature of the defining integral."""
    s = float(s)
    c0 = 1.0 / math.sqrt(2.0 + s)

    def integrand(theta):
        w = 2.0 * (1.0 - math.cos(theta)) + s
        return math.cos(theta) * (1.0 / math.sqrt(w) - c0)

    # the integrand peaks at theta = 0 with width ~ sqrt(s) for small s
    pts = [min(4.0 * math.sqrt(s), math.pi / 2)] if s < 1.0 else None
    return _quad(integrand, points=pts)


def kernel_F_prime_quadrature(s):
    """F'(s) by adaptive quadrature of the differentiated integrand."""
    s = float(s)
    c0 = (2.0 + s) ** -1.5

    def integrand(theta):
        w = 2.0 * (1.0 - math.cos(theta)) + s
        return math.cos(theta) * (w**-1.5 - c0)

    pts = [min(4.0 * math.sqrt(s), math.pi / 2)] if s < 1.0 else None
    return -0.5 * _quad(integrand, points=pts)


def elliptic_K_quadrature(m):
    """K(m) from its defining theta-integral."""
    val, _ = quad(
        lambda t: 1.0 / math.sqrt(1.0 - m * math.sin(t) ** 2),
        0.0,
        math.pi / 2,
        epsabs=1e-300,
        epsrel=5e-13,
        limit=400,
    )
    return val


def elliptic_E_quadrature(m):
    """E(m) from its defining theta-integral."""
    val, _ = quad(
        lambda t: math.sqrt(1.0 - m * math.sin(t) ** 2),
        0.0,
        math.pi / 2,
        epsabs=1e-300,
        epsrel=5e-13,
        limit=400,
    )
    return val


def central_difference(fn, x, h):
    """Centered first derivative of a scalar function."""
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def log_spaced(lo, hi, n):
    """n log-spaced samples in [lo, hi]."""
    return np.logspace(math.log10(lo), math.log10(hi), n)
