"""Vortex-blob simulation of axisymmetric, swirl-free ideal flow.

The package models the transported quantity zeta = omega/r by Lagrangian
particles on the upper quadrant of the rz-plane (odd-in-z fields via mirror
images), evaluates the induced velocity through the elliptic-integral ring
kernel, advances particles with classical RK4, and monitors the moments,
masses, energy and exact identities of the flow.
"""

from .elliptic import EllipticPair, elliptic_ke
from .errors import (
    ConfigError,
    DomainError,
    QuadratureError,
    SingularEvaluationError,
    StepRejectedError,
)
from .field import (
    FieldRequest,
    VelocitySample,
    axis_radial_velocity,
    axis_vertical_velocity,
    induced_velocity,
    stream_function,
)
from .kernel import KernelEval, desing_D, kernel_F, kernel_F_prime, kernel_eval
from .particles import (
    Particle,
    ParticleSystem,
    load_snapshot,
    save_snapshot,
    seed_gaussian_dipole,
    seed_grid,
    seed_patch,
)

__version__ = "0.1.0"

__all__ = [
    "EllipticPair",
    "elliptic_ke",
    "KernelEval",
    "kernel_eval",
    "kernel_F",
    "kernel_F_prime",
    "desing_D",
    "FieldRequest",
    "VelocitySample",
    "induced_velocity",
    "axis_radial_velocity",
    "axis_vertical_velocity",
    "stream_function",
    "Particle",
    "ParticleSystem",
    "seed_grid",
    "seed_gaussian_dipole",
    "seed_patch",
    "save_snapshot",
    "load_snapshot",
    "DomainError",
    "ConfigError",
    "SingularEvaluationError",
    "StepRejectedError",
    "QuadratureError",
    "__version__",
]
