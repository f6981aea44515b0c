"""Generators for the named complex Hadamard matrices and the Hadamard predicate.

The centrepiece is the self-adjoint order-6 family ``h_theta``.  Its entries
are built from

    y = exp(i theta)
    z = (1 + 2y - y^2) / (y (-1 + 2y + y^2))
    x = (1 + 2y + y^2 - sqrt(2) sqrt(1 + 2y + 2y^3 + y^4)) / (1 + 2y - y^2)
    t = (same numerator) / (-1 + 2y + y^2)

with the principal square root.  On the unit circle the radicand equals
``2 y^2 r`` with ``r = cos 2theta + 2 cos theta``, and for ``r <= 0`` its
principal root is ``-/+ i sqrt(-2r) y`` (sign by the half-plane of theta).
We evaluate that closed form instead of the polynomial so that the r = 0
boundary and theta = pi (radicand on the branch cut) are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import Tolerance, as_matrix

COS_THETA_MAX = (math.sqrt(3.0) - 1.0) / 2.0
THETA_MIN = math.acos(COS_THETA_MAX)  # ~1.19606
# r is computed in floating point; points within this of r = 0 count as boundary.
DOMAIN_SLACK = 1e-13

DOMAIN_DESCRIPTION = (
    f"theta in [-pi, -{THETA_MIN:.15g}] U [{THETA_MIN:.15g}, pi] "
    "(i.e. cos 2theta + 2 cos theta <= 0)"
)


class DomainError(ValueError):
    pass


class NonSquare(ValueError):
    pass


class Unavailable(NotImplementedError):
    pass


@dataclass(frozen=True)
class FamilyPoint:
    theta: float
    y: complex
    delta: complex
    x: complex
    t: complex
    z: complex
    r: float


@dataclass(frozen=True)
class HadamardCheckReport:
    unimodularity_residual: float
    unitarity_residual: float
    is_hadamard: bool
    is_self_adjoint: bool
    is_dephased: bool

    def lines(self) -> list[str]:
        return [
            f"unimodularity_residual={self.unimodularity_residual!r}",
            f"unitarity_residual={self.unitarity_residual!r}",
            f"is_hadamard={str(self.is_hadamard).lower()}",
            f"is_self_adjoint={str(self.is_self_adjoint).lower()}",
            f"is_dephased={str(self.is_dephased).lower()}",
        ]


def wrap_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    w = math.remainder(float(theta), 2.0 * math.pi)
    return math.pi if w <= -math.pi else w


def domain_r(theta: float) -> float:
    return math.cos(2.0 * theta) + 2.0 * math.cos(theta)


def theta_domain_contains(theta: float) -> bool:
    if not math.isfinite(theta):
        return False
    return domain_r(wrap_angle(theta)) <= DOMAIN_SLACK


def _require_domain(theta: float) -> float:
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite; valid set: {DOMAIN_DESCRIPTION}")
    th = wrap_angle(theta)
    if domain_r(th) > DOMAIN_SLACK:
        raise DomainError(f"theta={theta!r} is outside the family domain; valid set: {DOMAIN_DESCRIPTION}")
    return th


def _unit(theta: float) -> complex:
    return complex(math.cos(theta), math.sin(theta))


def family_point(theta: float, branch: int = -1) -> FamilyPoint:
    """Parameters of the family member at ``theta``.

    ``branch=-1`` is the ``- sqrt(2) sqrt(...)`` root used by ``h_theta``;
    ``branch=+1`` gives the companion family ``h_theta_prime``.
    """
    if branch not in (-1, 1):
        raise ValueError("branch must be -1 or +1")
    th = _require_domain(theta)
    y = _unit(th)
    r = domain_r(th)
    if abs(r) <= DOMAIN_SLACK:
        r = 0.0
    sign = -1.0 if th >= 0.0 else 1.0
    # sqrt(2) * principal sqrt(1 + 2y + 2y^3 + y^4) == 2 * sign * i * sqrt(-r) * y
    root2 = 2.0 * sign * 1j * math.sqrt(max(-r, 0.0)) * y
    num = 1 + 2 * y + y * y + branch * root2
    a = 1 + 2 * y - y * y
    b = -1 + 2 * y + y * y
    return FamilyPoint(
        theta=th,
        y=y,
        delta=4.0 * y * y * r,
        x=num / a,
        t=num / b,
        z=a / (y * b),
        r=r,
    )


def family_parameters_unconstrained(theta: float, branch: int = -1) -> tuple[complex, complex, complex, complex]:
    """(x, y, z, t) from the raw formulas with numpy's principal sqrt, no domain check.

    Outside the domain |x| leaves the unit circle; this is how that is observed.
    """
    y = complex(np.exp(1j * theta))
    root = np.sqrt(2.0 + 0j) * np.sqrt(1 + 2 * y + 2 * y**3 + y**4 + 0j)
    num = 1 + 2 * y + y * y + branch * root
    x = num / (1 + 2 * y - y * y)
    t = num / (-1 + 2 * y + y * y)
    z = (1 + 2 * y - y * y) / (y * (-1 + 2 * y + y * y))
    return complex(x), y, complex(z), complex(t)


def family_matrix(x: complex, y: complex, z: complex, t: complex) -> np.ndarray:
    c = np.conj
    return np.array(
        [
            [1, 1, 1, 1, 1, 1],
            [1, -1, c(x), -y, -c(x), y],
            [1, x, -1, t, -t, -x],
            [1, -c(y), c(t), -1, c(y), -c(t)],
            [1, -x, -c(t), y, 1, c(z)],
            [1, c(y), -c(x), -t, z, 1],
        ],
        dtype=complex,
    )


def h_theta(theta: float) -> np.ndarray:
    p = family_point(theta, -1)
    return family_matrix(p.x, p.y, p.z, p.t)


def h_theta_prime(theta: float) -> np.ndarray:
    p = family_point(theta, +1)
    return family_matrix(p.x, p.y, p.z, p.t)


def c6_parameter() -> complex:
    return complex((1.0 - math.sqrt(3.0)) / 2.0, math.sqrt(math.sqrt(3.0) / 2.0))


def c6_theta() -> float:
    """The family parameter wrap(2 Arg d) at which h_theta meets the cyclic 6-roots matrix."""
    return wrap_angle(2.0 * math.atan2(c6_parameter().imag, c6_parameter().real))


def c6_cyclic() -> np.ndarray:
    d = c6_parameter()
    d2, d3 = d * d, d * d * d
    c = np.conj
    return np.array(
        [
            [1, 1, 1, 1, 1, 1],
            [1, -1, -d, -d2, d2, d],
            [1, -c(d), 1, d2, -d3, d2],
            [1, -c(d2), c(d2), -1, d2, -d2],
            [1, c(d2), -c(d3), c(d2), 1, -d],
            [1, c(d), c(d2), -c(d2), -c(d), -1],
        ],
        dtype=complex,
    )


_i = 1j
_BUTSON = {
    1: [
        [1, 1, 1, 1, 1, 1],
        [1, -1, -_i, 1, _i, -1],
        [1, _i, -1, _i, -_i, -_i],
        [1, 1, -_i, -1, -1, _i],
        [1, -_i, _i, -1, 1, -1],
        [1, -1, _i, -_i, -1, 1],
    ],
    2: [
        [1, 1, 1, 1, 1, 1],
        [1, -1, _i, 1, -_i, -1],
        [1, -_i, -1, -_i, _i, _i],
        [1, 1, _i, -1, -1, -_i],
        [1, _i, -_i, -1, 1, -1],
        [1, -1, -_i, _i, -1, 1],
    ],
    3: [
        [1, 1, 1, 1, 1, 1],
        [1, -1, -_i, -_i, _i, _i],
        [1, _i, -1, 1, -_i, -1],
        [1, _i, 1, -1, -1, -_i],
        [1, -_i, _i, -1, 1, -1],
        [1, -_i, -1, _i, -1, 1],
    ],
    4: [
        [1, 1, 1, 1, 1, 1],
        [1, -1, _i, _i, -_i, -_i],
        [1, -_i, -1, 1, _i, -1],
        [1, -_i, 1, -1, -1, _i],
        [1, _i, -_i, -1, 1, -1],
        [1, _i, -1, -_i, -1, 1],
    ],
}


def butson_h(k: int) -> np.ndarray:
    """The four order-6 Butson matrices over the fourth roots of unity, k = 1..4."""
    if k not in _BUTSON:
        raise IndexError(f"butson_h index must be 1..4, got {k!r}")
    return np.array(_BUTSON[k], dtype=complex)


def root_of_unity(m: int, n: int) -> complex:
    """exp(2 pi i m / n) with exact values at multiples of a quarter turn."""
    m %= n
    if (4 * m) % n == 0:
        return (1, 1j, -1, -1j)[(4 * m) // n]
    a = 2.0 * math.pi * m / n
    return complex(math.cos(a), math.sin(a))


def fourier(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("order must be positive")
    return np.array([[root_of_unity(j * k, n) for k in range(n)] for j in range(n)], dtype=complex)


def tensor(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def dephase(H) -> np.ndarray:
    """Normal form with first row and column exactly 1.

    Entry (k, l) becomes h_kl conj(h_k1) conj(h_1l) h_11; for a hermitian
    input with h_11 = -1 this equals negating H first and then dephasing,
    and the result stays hermitian.
    """
    H = as_matrix(H)
    out = H * np.conj(H[:, :1]) * np.conj(H[:1, :]) * H[0, 0]
    out[0, :] = 1.0
    out[:, 0] = 1.0
    return out


def dephasing_factors(H) -> tuple[np.ndarray, np.ndarray]:
    """Diagonals (u, v) with dephase(H) == diag(u) @ H @ diag(v) (up to the exact-1 rewrite)."""
    H = as_matrix(H)
    return np.conj(H[:, 0]), np.conj(H[0, :]) * H[0, 0]


def is_hermitian(H, tol: "float | Tolerance | None" = None) -> bool:
    H = as_matrix(H)
    return float(np.linalg.norm(H - H.conj().T)) <= Tolerance.of(tol).eps * H.shape[0]


def check(H, tol: "float | Tolerance | None" = None) -> HadamardCheckReport:
    H = as_matrix(H)
    n, m = H.shape
    if n != m:
        raise NonSquare(f"matrix is {n}x{m}")
    eps = Tolerance.of(tol).eps
    uni = float(np.max(np.abs(np.abs(H) - 1.0)))
    unit = float(np.linalg.norm(H @ H.conj().T - n * np.eye(n)))
    ones_err = max(float(np.max(np.abs(H[0, :] - 1.0))), float(np.max(np.abs(H[:, 0] - 1.0))))
    return HadamardCheckReport(
        unimodularity_residual=uni,
        unitarity_residual=unit,
        is_hadamard=uni <= eps * n and unit <= eps * n,
        is_self_adjoint=is_hermitian(H, eps),
        is_dephased=ones_err <= eps,
    )


# Higher-order examples whose entries are not recoverable; only their scalar
# parameters are known.
H9_PARAMETER = complex(0.25, -math.sqrt(15.0) / 4.0)
BN9_PARAMETER = root_of_unity(1, 10)
BN10_PARAMETER = complex(-0.25, math.sqrt(15.0) / 4.0)
N11_PARAMETER = complex(0.75, -math.sqrt(7.0) / 4.0)


def _unavailable(name: str):
    def gen():
        raise Unavailable(f"{name}: entries are not available; use the search module to look for such matrices")

    gen.__name__ = name
    return gen


h9 = _unavailable("h9")
bn9 = _unavailable("bn9")
bn10 = _unavailable("bn10")
n11 = _unavailable("n11")
