"""Exact rank over the cyclotomic field Q(zeta_m).

Only used as an independent oracle for the floating-point defect of
root-of-unity matrices.  Field elements are tuples of Fractions: coefficients
in the power basis 1, zeta, ..., zeta^(phi(m) - 1).
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # coefficient lists, lowest degree first
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        q[shift] = f
        for i, c in enumerate(den):
            num[shift + i] -= f * c
        num.pop()
        _trim(num)
    return q, num


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def cyclotomic_polynomial(m: int) -> list[Fraction]:
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not _trim(rem)
    return _trim(num)


class CyclotomicField:
    def __init__(self, m: int):
        self.m = m
        self.modulus = cyclotomic_polynomial(m)
        self.degree = len(self.modulus) - 1
        self.zero = (Fraction(0),) * self.degree

    def reduce(self, p) -> tuple[Fraction, ...]:
        p = _trim([Fraction(c) for c in p])
        if len(p) > self.degree:
            _, p = _poly_divmod(p, self.modulus)
        p = list(p) + [Fraction(0)] * (self.degree - len(p))
        return tuple(p)

    def root(self, k: int) -> tuple[Fraction, ...]:
        """zeta^k."""
        e = k % self.m
        return self.reduce([0] * e + [1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self.reduce(out)

    def inv(self, a):
        # extended Euclid in Q[x]: s*a + t*modulus = 1
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        c = r1[0]
        return self.reduce([x / c for x in s1])

    def is_zero(self, a) -> bool:
        return not any(a)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def exact_rank(F: CyclotomicField, rows: list[list[tuple]]) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    n_cols = len(M[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, len(M)) if not F.is_zero(M[i][col])), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = F.inv(M[rank][col])
        M[rank] = [F.mul(inv, v) for v in M[rank]]
        for i in range(len(M)):
            if i != rank and not F.is_zero(M[i][col]):
                f = M[i][col]
                M[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(M[i], M[rank])]
        rank += 1
    return rank


def root_exponents(H, m: int, atol: float = 1e-9) -> np.ndarray:
    """Integer k with H_ab == exp(2 pi i k / m); raises if an entry is not such a root."""
    H = np.asarray(H, dtype=complex)
    k = np.rint(np.angle(H) * m / (2 * np.pi)).astype(int) % m
    if np.max(np.abs(np.exp(2j * np.pi * k / m) - H)) > atol:
        raise ValueError(f"matrix entries are not {m}-th roots of unity")
    return k


def exact_defect(H, m: int) -> int:
    """Defect of a matrix of m-th roots of unity, computed over Q(zeta_m).

    The real tangent system S has the same rank as the complex system
    [A; conj(A)] (an invertible recombination of its real and imaginary
    rows), whose entries lie in Q(zeta_m).
    """
    E = root_exponents(H, m)
    n = E.shape[0]
    F = CyclotomicField(m)
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        for s in (1, -1):  # the equation and its conjugate
            row = [F.zero] * (n * n)
            for k in range(n):
                c = F.root(s * (E[i, k] - E[j, k]))
                row[i * n + k] = F.add(row[i * n + k], c)
                row[j * n + k] = F.sub(row[j * n + k], c)
            rows.append(row)
    return n * n - exact_rank(F, rows) - (2 * n - 1)
