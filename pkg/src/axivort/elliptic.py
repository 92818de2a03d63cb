"""Complete elliptic integrals K(m), E(m) by the arithmetic-geometric mean.

Conventions
-----------
The *parameter* m = k^2 is the canonical argument everywhere in this package
(same convention as scipy.special.ellipk/ellipe).  Conversions from the
modulus k happen explicitly at call sites; this is the classic k-vs-m trap,
so keep it visible.

The AGM recursion (a_0, b_0, c_0) = (1, sqrt(1-m), sqrt(m)),

    a_{n+1} = (a_n + b_n)/2,   b_{n+1} = sqrt(a_n b_n),   c_{n+1} = (a_n - b_n)/2,

converges quadratically and yields

    K(m) = pi / (2 a_N),       E(m) = K(m) * (1 - sum_n 2^{n-1} c_n^2).

Twelve iterations are enough for full double precision for every
m <= 1 - 1e-15.
"""

from dataclasses import dataclass
import math

from numba import njit

from .errors import DomainError

_MAX_ITER = 12


@dataclass(frozen=True)
class EllipticPair:
    """K and E evaluated at one parameter value m."""

    m: float
    bigK: float
    bigE: float


@njit(cache=True, inline="always")
def _agm_ke(m, mc):
    """K(m), E(m) from the AGM, with the complement mc = 1-m supplied exactly.

    Passing mc separately matters: callers that know mc without forming 1-m
    (e.g. mc = s/(s+4)) avoid cancellation for m near 1.
    """
    a = 1.0
    b = math.sqrt(mc)
    # E-sum: 2^{n-1} c_n^2 with c_0^2 = m; c_n from iteration n carries 2^{n-1}
    csum = 0.5 * m
    pow2 = 1.0
    for _ in range(_MAX_ITER):
        c = 0.5 * (a - b)
        t = math.sqrt(a * b)
        a, b = 0.5 * (a + b), t
        csum += pow2 * c * c
        pow2 *= 2.0
        if c <= 1e-17 * a:
            break
    bigK = math.pi / (2.0 * a)
    bigE = bigK * (1.0 - csum)
    return bigK, bigE


@njit(cache=True)
def _agm_ke_counted(m, mc):
    """Same as _agm_ke but also reports the iteration count (for tests)."""
    a = 1.0
    b = math.sqrt(mc)
    csum = 0.5 * m
    pow2 = 1.0
    n = 0
    for _ in range(_MAX_ITER):
        c = 0.5 * (a - b)
        t = math.sqrt(a * b)
        a, b = 0.5 * (a + b), t
        csum += pow2 * c * c
        pow2 *= 2.0
        n += 1
        if c <= 1e-17 * a:
            break
    bigK = math.pi / (2.0 * a)
    bigE = bigK * (1.0 - csum)
    return bigK, bigE, n


def elliptic_ke(m):
    """Complete elliptic integrals (K(m), E(m)) for parameter m in [0, 1).

    Returns an EllipticPair.  Raises DomainError outside [0, 1).
    """
    m = float(m)
    if not 0.0 <= m < 1.0:
        raise DomainError(f"elliptic parameter m={m!r} outside [0, 1)")
    bigK, bigE = _agm_ke(m, 1.0 - m)
    return EllipticPair(m=m, bigK=bigK, bigE=bigE)
