"""Equivalences printed alongside the order-6 family, as replayable certificates.

Each helper returns the printed matrices turned into gather-form
``EquivalenceCertificate`` objects, so they can be checked with
``verify_certificate`` like any computed certificate.
"""
from __future__ import annotations

import numpy as np

from . import catalog
from .equivalence import EquivalenceCertificate

# P with P H(theta0) P^-1 = C6 (rows 3, 5, 6 cycled)
C6_PERMUTATION = np.array(
    [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
    ]
)

# P1 D1 H(theta) D2 P2 = H'(theta)
PRIME_P1 = np.array(
    [
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
    ]
)
PRIME_P2 = np.array(
    [
        [0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ]
)

# P1 D H3 P2, printed as a route from the Butson matrix H3 to H(pi/2)
BUTSON_D = np.diag([1, 1j, -1, 1, -1j, -1])
BUTSON_P1 = np.array(
    [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
    ]
)
BUTSON_P2 = np.array(
    [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 0],
    ]
)


def c6_certificate() -> EquivalenceCertificate:
    """Maps h_theta(c6_theta()) onto c6_cyclic(); D1 = D2 = I, P2 = P^-1."""
    P = C6_PERMUTATION
    return EquivalenceCertificate.from_matrices(P, np.eye(6), np.eye(6), P.T)


def prime_diagonals(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """The printed D1, D2 for the H -> H' equivalence at theta."""
    p = catalog.family_point(theta, -1)
    y = p.y
    num = 1 + 2 * y + y * y - 2j * (-1.0 if p.theta >= 0 else 1.0) * np.sqrt(max(-p.r, 0.0)) * y
    m = -1 - 2 * y + y * y
    d1 = np.array([1, -1, -m / num, -y, m / num, y])
    d2 = np.array([-1, 1, num / m, np.conj(y), -num / m, -np.conj(y)])
    return np.diag(d1), np.diag(d2)


def prime_certificate(theta: float) -> EquivalenceCertificate:
    """Maps h_theta(theta) onto h_theta_prime(theta)."""
    D1, D2 = prime_diagonals(theta)
    return EquivalenceCertificate.from_matrices(PRIME_P1, D1, D2, PRIME_P2)


def butson_certificate() -> EquivalenceCertificate:
    """The printed P1 D (.) P2 acting on butson_h(3).

    Replayed literally it lands on h_theta_prime(pi/2), not h_theta(pi/2);
    compose with ``prime_certificate(pi/2).inverse()`` to reach the latter.
    """
    return EquivalenceCertificate.from_matrices(BUTSON_P1, BUTSON_D, np.eye(6), BUTSON_P2)


def butson_to_family_certificate() -> EquivalenceCertificate:
    """butson_h(3) -> h_theta(pi/2), via the printed route and the H' equivalence."""
    return butson_certificate().then(prime_certificate(np.pi / 2).inverse())
