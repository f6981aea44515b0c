"""Construction, verification, equivalence, defect and numerical search for complex Hadamard matrices."""
from .linalg import Tolerance, DimensionMismatch
from .catalog import (
    DomainError,
    c6_cyclic,
    butson_h,
    check,
    dephase,
    family_point,
    fourier,
    h_theta,
    h_theta_prime,
    tensor,
    theta_domain_contains,
)

__all__ = [
    "Tolerance",
    "DimensionMismatch",
    "DomainError",
    "c6_cyclic",
    "butson_h",
    "check",
    "dephase",
    "family_point",
    "fourier",
    "h_theta",
    "h_theta_prime",
    "tensor",
    "theta_domain_contains",
]
