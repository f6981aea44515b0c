"""Defect of a Hadamard matrix: first-order deformations modulo enphasings.

Perturb every entry by a phase, H_jk -> H_jk exp(i R_jk).  To first order,
orthogonality of rows i < j is preserved iff

    sum_k H_ik conj(H_jk) (R_ik - R_jk) = 0,

a complex equation, i.e. two real ones.  The kernel always contains the
enphasing directions R_jk = a_j + b_k (dimension 2n - 1); the defect is the
kernel dimension beyond those.  Zero defect is the span condition and
certifies isolation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import catalog
from .linalg import Tolerance, as_matrix, null_space, numerical_rank


class NotHadamard(ValueError):
    pass


class RankAmbiguous(ArithmeticError):
    pass


@dataclass(frozen=True)
class DefectReport:
    n: int
    system_rows: int
    system_cols: int
    nullity: int
    defect: int
    satisfies_span_condition: bool
    tol_used: Tolerance

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"system_rows={self.system_rows}",
            f"system_cols={self.system_cols}",
            f"nullity={self.nullity}",
            f"defect={self.defect}",
            f"satisfies_span_condition={str(self.satisfies_span_condition).lower()}",
            f"tol={self.tol_used.eps!r}",
        ]


def tangent_coefficients(H) -> np.ndarray:
    """Complex coefficient matrix: one row per pair i < j, one column per R_jk (row-major)."""
    H = as_matrix(H)
    n = H.shape[0]
    pairs = list(itertools.combinations(range(n), 2))
    A = np.zeros((len(pairs), n * n), dtype=complex)
    for row, (i, j) in enumerate(pairs):
        c = H[i] * np.conj(H[j])
        A[row, i * n : (i + 1) * n] += c
        A[row, j * n : (j + 1) * n] -= c
    return A


def assemble_defect_system(H, tol: "float | Tolerance | None" = None) -> np.ndarray:
    """Real n(n-1) x n^2 system: real/imag parts of each pair equation, interleaved."""
    H = as_matrix(H)
    rep = catalog.check(H, tol)
    if not rep.is_hadamard:
        raise NotHadamard(
            f"defect needs a Hadamard matrix (unimodularity {rep.unimodularity_residual:.3g}, "
            f"unitarity {rep.unitarity_residual:.3g})"
        )
    A = tangent_coefficients(H)
    S = np.empty((2 * A.shape[0], A.shape[1]))
    S[0::2] = A.real
    S[1::2] = A.imag
    return S


def enphasing_directions(n: int) -> np.ndarray:
    """Basis (columns) of the trivial directions R_jk = a_j + b_k, dimension 2n - 1."""
    cols = []
    for j in range(n):
        R = np.zeros((n, n))
        R[j, :] = 1.0
        cols.append(R.reshape(-1))
    for k in range(1, n):
        R = np.zeros((n, n))
        R[:, k] = 1.0
        cols.append(R.reshape(-1))
    return np.array(cols).T


def defect(H, tol: "float | Tolerance | None" = None) -> DefectReport:
    tol = Tolerance.of(tol)
    H = as_matrix(H)
    n = H.shape[0]
    S = assemble_defect_system(H, tol)
    rank_svd = numerical_rank(S, tol, method="svd")
    rank_qr = numerical_rank(S, tol, method="qr")
    if rank_svd != rank_qr:
        raise RankAmbiguous(f"rank estimates disagree (svd {rank_svd}, pivoted qr {rank_qr}) at tol={tol.eps}")
    nullity = S.shape[1] - rank_svd
    d = nullity - (2 * n - 1)
    if d < 0:
        raise RankAmbiguous(f"nullity {nullity} is below the enphasing dimension {2 * n - 1}")
    return DefectReport(
        n=n,
        system_rows=S.shape[0],
        system_cols=S.shape[1],
        nullity=nullity,
        defect=d,
        satisfies_span_condition=d == 0,
        tol_used=tol,
    )


def is_isolated_sufficient(H, tol: "float | Tolerance | None" = None) -> bool:
    """True certifies isolation; False is inconclusive."""
    return defect(H, tol).satisfies_span_condition


def tangent_kernel(H, tol: "float | Tolerance | None" = None) -> np.ndarray:
    return null_space(assemble_defect_system(H, tol), tol)


def kernel_distance(H, R, tol: "float | Tolerance | None" = None) -> float:
    """Relative distance of the direction R (n x n phases) from the computed kernel."""
    K = tangent_kernel(H, tol)
    r = np.asarray(R, dtype=float).reshape(-1)
    return float(np.linalg.norm(r - K @ (K.T @ r)) / np.linalg.norm(r))
