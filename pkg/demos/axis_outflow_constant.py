#!/usr/bin/env python3
"""Empirical sweep of the axis-outflow constant.

For fields whose mass sits mostly in the wedge {r >= sqrt(3) z} inside
{r <= R}, the outflow integral along the symmetry plane satisfies

    int_0^R u_r(r, 0) dr  >=  c1 * (mass in the wedge)

for some universal constant c1.  No sharp value is known, so this is an
experiment, not a test: sweep a family of wedge-heavy fixtures and report
the smallest observed ratio.  The minimum over the sweep is an empirical
lower estimate of c1.
"""

import numpy as np
from numpy.polynomial.legendre import leggauss

from axivort.field import axis_radial_velocity
from axivort.particles import seed_gaussian_dipole, seed_patch


def outflow_ratio(system, R):
    w = system.weights()
    wedge = (system.r >= np.sqrt(3.0) * system.z) & (system.r <= R)
    wedge_mass = float(np.sum(w[wedge]))
    if wedge_mass < 0.5 * system.total_mass():
        return None  # fixture out of the regime the bound addresses
    x, gw = leggauss(240)
    nodes = 0.5 * R * (x + 1.0)
    weights = 0.5 * R * gw
    integral = float(weights @ axis_radial_velocity(nodes, system, fast=True))
    return integral / wedge_mass


fixtures = [
    ("flat ring pair z0=0.2", seed_gaussian_dipole(z0=0.2, sigma=0.1, h=0.01), 2.0),
    ("flat ring pair z0=0.3", seed_gaussian_dipole(z0=0.3, sigma=0.15, h=0.012), 2.0),
    ("wide ring r0=2",        seed_gaussian_dipole(r0=2.0, z0=0.4, sigma=0.2, h=0.015), 4.0),
    ("patch near plane",      seed_patch(1.0, 0.35, 0.3, h=0.012), 2.0),
    ("patch wide",            seed_patch(2.0, 0.5, 0.45, h=0.018), 4.0),
]

print(f"{'fixture':28} {'N':>6} {'ratio':>10}")
ratios = []
for name, system, R in fixtures:
    ratio = outflow_ratio(system, R)
    shown = f"{ratio:10.4f}" if ratio else "   skipped"
    print(f"{name:28} {system.n:6d} {shown}")
    if ratio:
        ratios.append(ratio)

print(f"\nempirical lower estimate of the constant: {min(ratios):.4f} "
      f"(over {len(ratios)} fixtures)")
