#!/usr/bin/env python3
"""Walk through the ring kernel: values, asymptotes, oracle agreement.

The stream-function kernel F and its derivative drive every velocity
evaluation in the package.  This script sweeps them across twelve decades,
prints how fast the closed-form evaluation approaches the known limiting
forms, and spot-checks it against direct quadrature of the defining
integral.
"""

import math

import numpy as np

from axivort.kernel import kernel_F, kernel_F_prime
from axivort.oracles import kernel_F_quadrature, log_spaced

print("s, F(s), F'(s), and the relative gap to the nearest asymptote")
print(f"{'s':>10} {'F':>13} {'Fprime':>13} {'asymptote gap':>14}")
for s in log_spaced(1e-6, 1e6, 13):
    f = kernel_F(s)
    fp = kernel_F_prime(s)
    if s < 1.0:
        ref = 0.5 * math.log(1.0 / s) + math.log(8.0) - 2.0
    else:
        ref = 0.5 * math.pi * s**-1.5
    print(f"{s:10.1e} {f:13.6e} {fp:13.6e} {abs(f - ref) / f:14.2e}")

print("\nclosed form vs quadrature of the defining integral:")
for s in (1e-5, 0.37, 4.0, 120.0, 3e4):
    q = kernel_F_quadrature(s)
    print(f"  s={s:<8g} rel diff = {abs(kernel_F(s) - q) / q:.2e}")

print("\nlarge-s coefficient check: F(s) * s^(3/2) -> pi/2 =", math.pi / 2)
for s in (1e2, 1e4, 1e6):
    print(f"  s={s:g}: {kernel_F(s) * s**1.5:.10f}")
