"""Hadamard equivalence: certificates, an invariant prefilter and exhaustive search.

Two matrices are equivalent when ``H2 = P1 D1 H1 D2 P2`` with permutation
matrices P1, P2 and unimodular diagonals D1, D2.  Certificates store the
permutations as index arrays in gather form, so that

    (P1 D1 H D2 P2)[i, j] == d1[p1[i]] * H[p1[i], p2[j]] * d2[p2[j]]

i.e. ``P1 = I[p1]`` (rows) and ``P2 = I[:, p2]`` (columns).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import catalog
from .linalg import DimensionMismatch, Tolerance, as_matrix, frobenius_dist


class OrderTooLarge(ValueError):
    pass


class NotHermitian(ValueError):
    pass


@dataclass(frozen=True)
class EquivalenceCertificate:
    p1: tuple[int, ...]
    d1: tuple[complex, ...]
    d2: tuple[complex, ...]
    p2: tuple[int, ...]

    def __post_init__(self):
        n = len(self.p1)
        if not (len(self.p2) == len(self.d1) == len(self.d2) == n):
            raise DimensionMismatch("certificate components have different lengths")
        for p in (self.p1, self.p2):
            if sorted(p) != list(range(n)):
                raise ValueError(f"{p!r} is not a permutation of 0..{n - 1}")
        for d in (self.d1, self.d2):
            if np.max(np.abs(np.abs(np.asarray(d)) - 1.0), initial=0.0) > 1e-12:
                raise ValueError("diagonal entries must be unimodular")

    @property
    def n(self) -> int:
        return len(self.p1)

    @classmethod
    def build(cls, p1, d1=None, d2=None, p2=None) -> "EquivalenceCertificate":
        n = len(p1)
        ones = (1.0 + 0j,) * n
        return cls(
            tuple(int(k) for k in p1),
            ones if d1 is None else tuple(complex(v) for v in d1),
            ones if d2 is None else tuple(complex(v) for v in d2),
            tuple(range(n)) if p2 is None else tuple(int(k) for k in p2),
        )

    @classmethod
    def identity(cls, n: int) -> "EquivalenceCertificate":
        return cls.build(range(n))

    @classmethod
    def from_matrices(cls, P1, D1, D2, P2) -> "EquivalenceCertificate":
        """From explicit 0/1 permutation matrices and diagonal matrices."""
        P1, P2 = np.asarray(P1), np.asarray(P2)
        for P in (P1, P2):
            if not (np.all((P == 0) | (P == 1)) and np.all(P.sum(0) == 1) and np.all(P.sum(1) == 1)):
                raise ValueError("not a permutation matrix")
        p1 = np.argmax(P1, axis=1)
        p2 = np.argmax(P2, axis=0)
        return cls.build(p1, np.diag(np.asarray(D1)), np.diag(np.asarray(D2)), p2)

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        eye = np.eye(self.n)
        return eye[list(self.p1)], np.diag(self.d1), np.diag(self.d2), eye[:, list(self.p2)]

    def inverse(self) -> "EquivalenceCertificate":
        d1 = np.conj(np.asarray(self.d1))[list(self.p1)]
        d2 = np.conj(np.asarray(self.d2))[list(self.p2)]
        return EquivalenceCertificate.build(np.argsort(self.p1), d1, d2, np.argsort(self.p2))

    def then(self, other: "EquivalenceCertificate") -> "EquivalenceCertificate":
        """Certificate for applying ``self`` first and ``other`` second."""
        p1, p2 = np.asarray(self.p1), np.asarray(self.p2)
        d1 = np.asarray(self.d1) * np.asarray(other.d1)[np.argsort(p1)]
        d2 = np.asarray(self.d2) * np.asarray(other.d2)[np.argsort(p2)]
        return EquivalenceCertificate.build(p1[list(other.p1)], d1, d2, p2[list(other.p2)])

    def to_json(self) -> dict:
        turns = lambda d: [math.atan2(v.imag, v.real) / (2 * math.pi) for v in d]
        return {"p1": list(self.p1), "p2": list(self.p2), "d1_turns": turns(self.d1), "d2_turns": turns(self.d2)}

    @classmethod
    def from_json(cls, data: dict) -> "EquivalenceCertificate":
        phase = lambda ts: [np.exp(2j * np.pi * float(t)) for t in ts]
        return cls.build(data["p1"], phase(data["d1_turns"]), phase(data["d2_turns"]), data["p2"])


def apply_certificate(c: EquivalenceCertificate, H) -> np.ndarray:
    H = as_matrix(H)
    if H.shape != (c.n, c.n):
        raise DimensionMismatch(f"certificate of order {c.n} applied to a {H.shape} matrix")
    p1, p2 = list(c.p1), list(c.p2)
    d1, d2 = np.asarray(c.d1), np.asarray(c.d2)
    return d1[p1][:, None] * H[np.ix_(p1, p2)] * d2[p2][None, :]


def verify_certificate(c: EquivalenceCertificate, H1, H2, tol: "float | Tolerance | None" = None) -> bool:
    H2 = as_matrix(H2)
    return frobenius_dist(apply_certificate(c, H1), H2) <= Tolerance.of(tol).eps * H2.shape[0]


def certificate_residual(c: EquivalenceCertificate, H1, H2) -> float:
    return frobenius_dist(apply_certificate(c, H1), H2)


# --------------------------------------------------------------------------
# fingerprint

FINGERPRINT_GRID = 1e-7


@dataclass(frozen=True)
class Fingerprint:
    n: int
    values: tuple[tuple[float, float], ...]
    raw: tuple[complex, ...]

    def __eq__(self, other):
        return isinstance(other, Fingerprint) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, self.values))

    def matches(self, other: "Fingerprint", atol: float = 1e-6) -> bool:
        """Tolerant multiset comparison; never rejects because of grid-boundary rounding."""
        if self.n != other.n or len(self.raw) != len(other.raw):
            return False
        a, b = np.asarray(self.raw), np.asarray(other.raw)
        return bool(
            np.allclose(np.sort(a.real), np.sort(b.real), atol=atol, rtol=0)
            and np.allclose(np.sort(a.imag), np.sort(b.imag), atol=atol, rtol=0)
        )

    def lines(self) -> list[str]:
        return [f"{re!r} {im!r}" for re, im in self.values]


def quadruple_products(H) -> np.ndarray:
    """h_ij h_kl conj(h_il) conj(h_kj) over i < k, j < l, folded to Im >= 0."""
    H = as_matrix(H)
    n = H.shape[0]
    pairs = np.array(list(itertools.combinations(range(n), 2)), dtype=int).reshape(-1, 2)
    i, k = pairs[:, 0], pairs[:, 1]
    A = H[i] * np.conj(H[k])  # A[a, c] = h_ic conj(h_kc) for row pair a = (i, k)
    Q = A[:, i] * np.conj(A[:, k])  # column pair (j, l) reuses the same pair list
    q = Q.reshape(-1)
    # Swapping i<->k (or j<->l) conjugates the product; fold so permutations only reorder.
    return q.real + 1j * np.abs(q.imag)


def _quantize(v: float) -> float:
    q = round(v / FINGERPRINT_GRID) * FINGERPRINT_GRID
    return float(f"{q:.7f}") + 0.0


def fingerprint(H) -> Fingerprint:
    q = quadruple_products(H)
    q = q[np.lexsort((q.imag, q.real))]
    vals = sorted((_quantize(v.real), _quantize(v.imag)) for v in q)
    return Fingerprint(n=as_matrix(H).shape[0], values=tuple(vals), raw=tuple(complex(v) for v in q))


# --------------------------------------------------------------------------
# exhaustive search

MAX_BRUTE_FORCE_ORDER = 8


def _pivot_dephase(H: np.ndarray, r: int, c: int) -> np.ndarray:
    """Dephase H using row r and column c as the normalising row/column."""
    return H * np.conj(H[:, c : c + 1]) * np.conj(H[r : r + 1, :]) * H[r, c]


def _certificate_from_match(H1: np.ndarray, H2: np.ndarray, sigma, tau) -> EquivalenceCertificate:
    """Diagonals making H2 == diag(a) H1[sigma][:, tau] diag(b), global phase fixed by d1[0] = 1."""
    sigma, tau = list(sigma), list(tau)
    B = H1[np.ix_(sigma, tau)]
    uA, vA = catalog.dephasing_factors(H2)
    uB, vB = catalog.dephasing_factors(B)
    a, b = uB / uA, vB / vA
    d1 = np.empty(len(sigma), complex)
    d2 = np.empty(len(tau), complex)
    d1[sigma] = a
    d2[tau] = b
    g = d1[0]
    d1, d2 = d1 / g, d2 * g
    d1 /= np.abs(d1)
    d2 /= np.abs(d2)
    return EquivalenceCertificate.build(sigma, d1, d2, tau)


def _permutation_matches(H1: np.ndarray, T: np.ndarray, tol: float):
    """All (sigma, tau) with dephase(H1[sigma][:, tau]) == T entrywise within tol (T dephased)."""
    n = H1.shape[0]
    hits = []
    T = np.asarray(T)
    for r in range(n):
        for c in range(n):
            K = _pivot_dephase(H1, r, c)
            rest = [j for j in range(n) if j != c]
            taus = np.array([(c, *p) for p in itertools.permutations(rest)], dtype=int)
            Kt = K[:, taus].transpose(1, 0, 2)  # (tau, row of K, col)
            # dist[t, i, k] = max_col |K_t[k] - T[i]|
            dist = np.abs(Kt[:, None, :, :] - T[None, :, None, :]).max(axis=3)
            close = dist <= tol
            # target row 0 must come from the pivot row r
            ok = close[:, 0, r] & np.all(close.any(axis=2), axis=1)
            for t_idx in np.nonzero(ok)[0]:
                sigma = _assign_rows(close[t_idx], r)
                if sigma is not None:
                    hits.append((tuple(sigma), tuple(int(v) for v in taus[t_idx])))
    return hits


def _assign_rows(close: np.ndarray, r: int):
    """Injective choice sigma with close[i, sigma[i]] and sigma[0] == r (small backtracking)."""
    n = close.shape[0]
    sigma = [r]
    used = {r}

    def extend(i):
        if i == n:
            return True
        for k in np.nonzero(close[i])[0]:
            k = int(k)
            if k not in used:
                used.add(k)
                sigma.append(k)
                if extend(i + 1):
                    return True
                sigma.pop()
                used.discard(k)
        return False

    return sigma if extend(1) else None


def brute_force_equivalent(H1, H2, tol: "float | Tolerance | None" = None, match_tol: float = 1e-6):
    """Search all row/column permutations for a certificate with H2 = cert(H1).

    Returns the certificate for the lexicographically smallest (sigma, tau)
    or None.  Fingerprints are compared first.
    """
    H1, H2 = as_matrix(H1), as_matrix(H2)
    if H1.shape != H2.shape or H1.shape[0] != H1.shape[1]:
        raise DimensionMismatch(f"shapes {H1.shape} and {H2.shape}")
    n = H1.shape[0]
    if n > MAX_BRUTE_FORCE_ORDER:
        raise OrderTooLarge(f"brute force is limited to n <= {MAX_BRUTE_FORCE_ORDER}, got {n}")
    if not fingerprint(H1).matches(fingerprint(H2)):
        return None
    for sigma, tau in sorted(_permutation_matches(H1, catalog.dephase(H2), match_tol)):
        cert = _certificate_from_match(H1, H2, sigma, tau)
        if verify_certificate(cert, H1, H2, tol):
            return cert
    return None


# --------------------------------------------------------------------------
# classification against the self-adjoint order-6 family


@dataclass(frozen=True)
class ThetaFit:
    theta: float
    certificate: EquivalenceCertificate  # maps h_theta(theta) onto the input
    residual: float


def _theta_candidates(K: np.ndarray, tol: float):
    """Values y read from rows shaped like (1, -1, a, -y, -a, y), the second row of h_theta."""
    for row in K[1:]:
        if abs(row[1] + 1) <= tol and abs(row[4] + row[2]) <= tol and abs(row[5] + row[3]) <= tol:
            yield row[5]


def certificate_complexity(c: EquivalenceCertificate, atol: float = 1e-9) -> int:
    """Non-trivial diagonal entries plus points moved by either permutation."""
    d = np.r_[np.asarray(c.d1), np.asarray(c.d2)]
    moved = sum(a != b for a, b in enumerate(c.p1)) + sum(a != b for a, b in enumerate(c.p2))
    return int(np.count_nonzero(np.abs(d - 1) > atol)) + moved


def fit_theta(H, tol: "float | Tolerance | None" = None, match_tol: float = 1e-6):
    """Find theta and a certificate with cert(h_theta(theta)) == H, or None.

    Every dephased arrangement of H is scanned for the template of the second
    row of h_theta; each candidate theta is then confirmed by an explicit row
    matching against h_theta(theta).

    Each family member is equivalent to several others (theta -> -theta and an
    order-3 orbit), so several fits usually exist.  The one with the simplest
    certificate wins (see ``certificate_complexity``), then the most negative
    r = cos 2theta + 2 cos theta (entries depend on sqrt(-r), so this is the
    best-conditioned representative), then the negative sign.  A family
    member is thus recovered at its own theta with the identity certificate.
    """
    eps = Tolerance.of(tol).eps
    H = as_matrix(H)
    if H.shape != (6, 6):
        raise DimensionMismatch(f"fit_theta needs a 6x6 matrix, got {H.shape}")
    if not catalog.is_hermitian(H, eps):
        raise NotHermitian("fit_theta needs a self-adjoint matrix")
    if not catalog.check(H, eps).is_hadamard:
        return None
    n = 6
    thetas: dict[float, float] = {}
    for r in range(n):
        for c in range(n):
            K = _pivot_dephase(H, r, c)
            rest = [j for j in range(n) if j != c]
            for p in itertools.permutations(rest):
                for y in _theta_candidates(K[:, (c, *p)], match_tol):
                    th = catalog.wrap_angle(math.atan2(y.imag, y.real))
                    if catalog.domain_r(th) <= 10 * match_tol:
                        thetas.setdefault(round(th, 9), th)
    best = None
    target = catalog.dephase(H)
    for th in thetas.values():
        th = _clip_to_domain(th)
        T = catalog.h_theta(th)
        for sigma, tau in _permutation_matches(T, target, match_tol):
            cert = _certificate_from_match(T, H, sigma, tau)
            res = certificate_residual(cert, T, H)
            if res > eps * n:
                continue
            key = (certificate_complexity(cert), round(catalog.domain_r(th), 9), th, sigma, tau)
            if best is None or key < best[0]:
                best = (key, ThetaFit(th, cert, res))
    return None if best is None else best[1]


def _clip_to_domain(th: float) -> float:
    """Snap a theta that rounding pushed just outside the domain back onto its boundary."""
    if catalog.theta_domain_contains(th):
        return th
    return math.copysign(catalog.THETA_MIN, th)
