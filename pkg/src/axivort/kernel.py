"""Stream-function kernel of a circular vortex filament.

The kernel is

    F(s) = integral_0^pi cos(theta) * (2(1 - cos theta) + s)^(-1/2) dtheta,
    s > 0,

together with its derivative

    F'(s) = -1/2 * integral_0^pi cos(theta) * (2(1 - cos theta) + s)^(-3/2) dtheta.

Both reduce in closed form to complete elliptic integrals.  Substituting
2(1 - cos theta) = 4 sin^2(theta/2) and the modulus k = 2/sqrt(s+4) gives

    F(s)  = ((2 - k^2) K(k) - 2 E(k)) / k,
    F'(s) = (k/8) * (2 K(k) - (2 - k^2) E(k) / (1 - k^2)),

where K, E take the parameter m = k^2 internally (see elliptic.py for the
k-vs-m convention).  The reduction is validated against direct adaptive
quadrature of the defining integrals in the test suite and by the
`verify-kernel` command.

Numerical notes
---------------
* m and its complement are formed without cancellation: m = 4/(s+4),
  1 - m = s/(s+4).
* For m <= 1/4 (s >= 12) the closed form loses digits to cancellation
  (F ~ (pi/2) s^(-3/2) is the small difference of O(1) terms), so both
  values switch to the equivalent positive-term Maclaurin series in k,

      F(s)  = (pi/2) k  * sum_{j>=1} c_j *       j/(j+1)   * k^(2j),
      F'(s) = -(pi/16) k^3 * sum_{j>=1} c_j * j(2j+1)/(j+1) * k^(2j),

  with c_j = ((2j-1)!!/(2j)!!)^2, obtained by expanding K and E and
  collecting terms.  The two branches agree to ~1e-13 relative at the
  switch point.
* Useful asymptotics (checked in tests):
      F(s)  -> (1/2) log(1/s) + log 8 - 2      as s -> 0+
      F(s)  -> (pi/2)  s^(-3/2)                as s -> +inf
      -F'(s) -> 1/(2s)                         as s -> 0+
      -F'(s) -> (3pi/4) s^(-5/2)               as s -> +inf

The desingularized similarity variable used by the blob method is

    D_delta(x, xbar) = ((r - rbar)^2 + (z - zbar)^2 + delta^2) / (r rbar),

which coincides with the exact similarity variable at delta = 0.
"""

from dataclasses import dataclass
import math

import numpy as np
from numba import njit

from .elliptic import _agm_ke
from .errors import DomainError

# Closed form vs. series switch: m = 4/(s+4) <= 1/4, i.e. s >= 12.
_SERIES_M_MAX = 0.25


@dataclass(frozen=True)
class KernelEval:
    """F and F' at one similarity-variable value."""

    s: float
    f: float
    fp: float


@njit(cache=True, inline="always")
def _f_fp(s):
    """(F(s), F'(s)) for scalar s > 0; (inf, -inf) at s = 0 (log divergence)."""
    if s <= 0.0:
        return np.inf, -np.inf
    m = 4.0 / (s + 4.0)
    k = math.sqrt(m)
    if m <= _SERIES_M_MAX:
        # positive-term series in k^2; converges geometrically (ratio <= 1/4)
        q = m
        t = 0.25 * q  # c_1 * q
        sf = 0.0
        sfp = 0.0
        j = 1.0
        while True:
            sf += t * (j / (j + 1.0))
            sfp += t * (j * (2.0 * j + 1.0) / (j + 1.0))
            if t < 1e-18 * sf:
                break
            r = (2.0 * j + 1.0) / (2.0 * j + 2.0)
            t *= q * r * r
            j += 1.0
        f = 0.5 * math.pi * k * sf
        fp = -math.pi / 16.0 * k * m * sfp
        return f, fp
    mc = s / (s + 4.0)
    bigK, bigE = _agm_ke(m, mc)
    f = ((2.0 - m) * bigK - 2.0 * bigE) / k
    fp = 0.125 * k * (2.0 * bigK - (2.0 - m) * bigE / mc)
    return f, fp


@njit(cache=True)
def _f_fp_arrays(s, out_f, out_fp):
    for i in range(s.size):
        out_f[i], out_fp[i] = _f_fp(s[i])


def _check_s(s):
    arr = np.asarray(s, dtype=np.float64)
    if arr.size and not np.all(arr > 0.0):
        raise DomainError("similarity variable s must be > 0")
    return arr


def kernel_eval(s):
    """F(s) and F'(s) as a KernelEval, for scalar s > 0."""
    s = float(s)
    if not s > 0.0:
        raise DomainError(f"similarity variable s={s!r} must be > 0")
    f, fp = _f_fp(s)
    return KernelEval(s=s, f=f, fp=fp)


def kernel_F(s):
    """F(s) for scalar or array s > 0."""
    if np.isscalar(s):
        return kernel_eval(s).f
    arr = _check_s(s)
    f = np.empty_like(arr)
    fp = np.empty_like(arr)
    _f_fp_arrays(arr.ravel(), f.ravel(), fp.ravel())
    return f


def kernel_F_prime(s):
    """F'(s) for scalar or array s > 0."""
    if np.isscalar(s):
        return kernel_eval(s).fp
    arr = _check_s(s)
    f = np.empty_like(arr)
    fp = np.empty_like(arr)
    _f_fp_arrays(arr.ravel(), f.ravel(), fp.ravel())
    return fp


def desing_D(r, z, rbar, zbar, delta=0.0):
    """Desingularized similarity variable of a point pair.

    ((r-rbar)^2 + (z-zbar)^2 + delta^2) / (r rbar); symmetric under swapping
    the two points; equals the exact similarity variable when delta = 0.
    """
    r = np.asarray(r, dtype=np.float64)
    rbar = np.asarray(rbar, dtype=np.float64)
    if np.any(r <= 0.0) or np.any(rbar <= 0.0):
        raise DomainError("desing_D requires r > 0 and rbar > 0")
    if delta < 0.0:
        raise DomainError("desing_D requires delta >= 0")
    d = ((r - rbar) ** 2 + (np.asarray(z) - np.asarray(zbar)) ** 2 + delta**2) / (
        r * rbar
    )
    return float(d) if d.ndim == 0 else d
