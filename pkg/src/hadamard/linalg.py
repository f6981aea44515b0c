"""Small dense complex linear algebra helpers.

Matrices are plain numpy arrays (complex128 for matrices of phases, float64
for the real linear systems built by :mod:`hadamard.defect`).  Everything
here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Tolerance:
    eps: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError(f"tolerance must lie in (0, 1), got {self.eps!r}")

    @classmethod
    def of(cls, tol: "float | Tolerance | None") -> "Tolerance":
        if tol is None:
            return cls()
        if isinstance(tol, Tolerance):
            return tol
        return cls(float(tol))


def as_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {A.shape}")
    return A


def conj_transpose(M) -> np.ndarray:
    return as_matrix(M).conj().T


def mat_mul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def frobenius_dist(A, B) -> float:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    return float(np.linalg.norm(A - B))


def _singular_values(M: np.ndarray) -> np.ndarray:
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def _pivot_magnitudes(M: np.ndarray) -> np.ndarray:
    if M.size == 0:
        return np.zeros(0)
    R = scipy.linalg.qr(M, pivoting=True, mode="r")[0]
    return np.abs(np.diag(R))


def numerical_rank(M, tol: "float | Tolerance | None" = None, method: str = "svd") -> int:
    """Count singular values (or QR pivots) above ``tol.eps`` times the largest.

    ``method`` is ``"svd"`` or ``"qr"`` (column-pivoted QR, used as the
    cross-check).
    """
    eps = Tolerance.of(tol).eps
    M = np.asarray(M)
    if method == "svd":
        s = _singular_values(M)
    elif method == "qr":
        s = _pivot_magnitudes(M)
    else:
        raise ValueError(f"unknown rank method {method!r}")
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > eps * s[0]))


def null_space(M, tol: "float | Tolerance | None" = None) -> np.ndarray:
    """Orthonormal kernel basis as columns, consistent with ``numerical_rank``."""
    M = np.asarray(M)
    n_cols = M.shape[1]
    if M.size == 0:
        return np.eye(n_cols)
    _, _, vh = np.linalg.svd(M)
    rank = numerical_rank(M, tol, method="svd")
    return vh[rank:].conj().T
