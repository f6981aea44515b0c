"""Multistart local minimisation of the Hadamard penalty over entry phases.

Entries are parametrised as exp(i phase), so unimodularity holds by
construction and the penalty is only the unitarity residual

    f(H) = || H H* - n I ||_F^2 ,

which vanishes exactly on Hadamard matrices.  Symmetry constraints (self-
adjointness, a fixed +-1 diagonal, dephased first row/column) are encoded
in the phase layout.  Restarts are run as one vectorised batch; each restart
draws its start from a counter-based generator keyed by (seed, restart), so
batching never changes a restart's result.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import catalog, equivalence
from .linalg import Tolerance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepControls:
    initial_step: float = 1e-2
    armijo_c: float = 1e-4
    shrink: float = 0.5
    grow: float = 2.0
    max_step: float = 1.0
    min_step: float = 1e-16


@dataclass(frozen=True)
class SearchProblem:
    n: int
    hermitian: bool = False
    diag_pattern: Optional[tuple[int, ...]] = None
    dephased: bool = False
    restarts: int = 1
    seed: int = 0
    max_iters: int = 5000
    f_success: float = 1e-16
    f_fail_floor: float = 1e-12
    step_controls: StepControls = field(default_factory=StepControls)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be positive")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.f_success < self.f_fail_floor:
            raise ValueError("f_success must be below f_fail_floor")
        if self.diag_pattern is not None:
            d = tuple(int(v) for v in self.diag_pattern)
            object.__setattr__(self, "diag_pattern", d)
            if not self.hermitian:
                raise ValueError("a fixed diagonal requires the hermitian constraint")
            if len(d) != self.n or any(v not in (1, -1) for v in d):
                raise ValueError(f"diag_pattern must be {self.n} values in {{+1, -1}}")
            if self.dephased and d[0] != 1:
                raise ValueError("a dephased matrix has h_11 = 1")


class PhaseLayout:
    """Map from free phases to the n x n phase matrix.

    ``index[a, b]`` is the parameter driving entry (a, b) or -1 when the entry
    is fixed to ``base[a, b]``; ``sign[a, b]`` is -1 on the mirrored half of a
    hermitian layout.
    """

    def __init__(self, n: int, hermitian: bool = False, diag: Optional[Sequence[int]] = None, dephased: bool = False):
        self.n, self.hermitian, self.dephased = n, hermitian, dephased
        self.diag = None if diag is None else tuple(int(v) for v in diag)
        if hermitian and self.diag is None:
            raise ValueError("a hermitian layout needs its +-1 diagonal")
        index = -np.ones((n, n), dtype=int)
        sign = np.ones((n, n))
        base = np.zeros((n, n))
        p = 0
        for a in range(n):
            for b in range(n):
                if dephased and (a == 0 or b == 0):
                    continue
                if hermitian:
                    if a == b:
                        base[a, a] = 0.0 if self.diag[a] == 1 else np.pi
                        continue
                    if a > b:
                        continue
                    index[a, b] = index[b, a] = p
                    sign[b, a] = -1.0
                else:
                    index[a, b] = p
                p += 1
        self.index, self.sign, self.base = index, sign, base
        self.size = p
        self._flat_index = np.where(index.reshape(-1) >= 0, index.reshape(-1), p)
        self._flat_sign = np.where(index.reshape(-1) >= 0, sign.reshape(-1), 0.0)
        # chain rule as a gather: each parameter drives at most two entries
        owners = [[] for _ in range(p)]
        for e, (k, sg) in enumerate(zip(index.reshape(-1), sign.reshape(-1))):
            if k >= 0:
                owners[k].append((e, sg))
        width = max((len(o) for o in owners), default=1)
        self._owner_entry = np.zeros((p, width), dtype=int)
        self._owner_sign = np.zeros((p, width))
        for k, o in enumerate(owners):
            for j, (e, sg) in enumerate(o):
                self._owner_entry[k, j], self._owner_sign[k, j] = e, sg

    def phases(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        ext = np.concatenate([params, np.zeros(params.shape[:-1] + (1,))], axis=-1)
        flat = self.base.reshape(-1) + ext[..., self._flat_index] * self._flat_sign
        return flat.reshape(params.shape[:-1] + (self.n, self.n))

    def matrix(self, params) -> np.ndarray:
        H = np.exp(1j * self.phases(params))
        if self.dephased:
            H[..., 0, :] = 1.0
            H[..., :, 0] = 1.0
        return H

    def params_from_matrix(self, H) -> np.ndarray:
        ang = np.angle(np.asarray(H, dtype=complex))
        out = np.zeros(self.size)
        for a in range(self.n):
            for b in range(self.n):
                k = self.index[a, b]
                if k >= 0 and self.sign[a, b] > 0:
                    out[k] = ang[a, b]
        return out

    def value_and_grad(self, params) -> tuple[np.ndarray, np.ndarray]:
        """Penalty and its gradient; params may carry leading batch dimensions."""
        H = np.exp(1j * self.phases(params))
        E = _rowwise_product(H, np.conj(H)) - self.n * np.eye(self.n)
        sq = (E.real**2 + E.imag**2).reshape(E.shape[:-2] + (-1,))
        f = sq[..., 0]
        for k in range(1, sq.shape[-1]):
            f = f + sq[..., k]
        # d f / d phase_ab = 4 Im(conj(H_ab) (E H)_ab)
        EH = _rowwise_product(E, np.swapaxes(H, -1, -2))
        d_entry = (4.0 * np.imag(np.conj(H) * EH)).reshape(H.shape[:-2] + (self.n * self.n,))
        terms = d_entry[..., self._owner_entry] * self._owner_sign
        g = terms[..., 0]
        for j in range(1, terms.shape[-1]):
            g = g + terms[..., j]
        return f, g

    def residual_jacobian(self, params) -> tuple[np.ndarray, np.ndarray]:
        """Stacked (re, im) residual of H H* - n I and its Jacobian in the free phases."""
        n = self.n
        H = np.exp(1j * self.phases(params))
        E = H @ H.conj().T - n * np.eye(n)
        J = np.zeros((n, n, self.size), dtype=complex)
        for a in range(n):
            for b in range(n):
                k = self.index[a, b]
                if k < 0:
                    continue
                s = self.sign[a, b]
                # dH = i H_ab e_a e_b^T; dE = dH H* + H dH*
                row = 1j * H[a, b] * np.conj(H[:, b])
                J[a, :, k] += s * row
                J[:, a, k] += s * np.conj(row)
        r = np.concatenate([E.real.reshape(-1), E.imag.reshape(-1)])
        Jr = np.concatenate([J.real.reshape(n * n, -1), J.imag.reshape(n * n, -1)])
        return r, Jr


def _rowwise_product(A, B) -> np.ndarray:
    """A @ B.T by explicit summation, so every batch row is computed identically
    (BLAS picks kernels by batch size, which perturbs the last bits)."""
    out = A[..., :, None, 0] * B[..., None, :, 0]
    for k in range(1, A.shape[-1]):
        out = out + A[..., :, None, k] * B[..., None, :, k]
    return out


@dataclass(frozen=True)
class PhaseParametrization:
    layout: PhaseLayout
    free_phases: np.ndarray

    def matrix(self) -> np.ndarray:
        return self.layout.matrix(self.free_phases)


def objective(p: PhaseParametrization) -> float:
    return float(p.layout.value_and_grad(p.free_phases)[0])


def gradient(p: PhaseParametrization) -> np.ndarray:
    return p.layout.value_and_grad(p.free_phases)[1]


@dataclass(frozen=True, eq=False)
class SearchOutcome:
    restart: int
    params: np.ndarray
    f_final: float
    iters: int
    converged: bool
    stop_reason: str
    layout: PhaseLayout

    def matrix(self) -> np.ndarray:
        return self.layout.matrix(self.params)


def restart_generator(seed: int, restart: int) -> np.random.Generator:
    """Counter-based stream for one restart; draw order indexes the parameters."""
    return np.random.Generator(np.random.Philox(key=np.array([seed, restart], dtype=np.uint64)))


def _uniform_phases(gen: np.random.Generator, size: int) -> np.ndarray:
    # uniform on (-pi, pi]
    return np.pi - 2.0 * np.pi * gen.random(size)


def _restart_start(problem: SearchProblem, restart: int) -> tuple[tuple[int, ...] | None, np.ndarray]:
    gen = restart_generator(problem.seed, restart)
    diag = problem.diag_pattern
    if problem.hermitian and diag is None:
        signs = np.where(gen.random(problem.n) < 0.5, 1, -1)
        if problem.dephased:
            signs[0] = 1
        diag = tuple(int(v) for v in signs)
    layout = _layout_for(problem, diag)
    return diag, _uniform_phases(gen, layout.size)


_LAYOUTS: dict = {}


def _layout_for(problem: SearchProblem, diag) -> PhaseLayout:
    key = (problem.n, problem.hermitian, diag, problem.dephased)
    if key not in _LAYOUTS:
        _LAYOUTS[key] = PhaseLayout(problem.n, problem.hermitian, diag, problem.dephased)
    return _LAYOUTS[key]


def descend(layout: PhaseLayout, x0: np.ndarray, problem: SearchProblem):
    """Batched gradient descent with Armijo backtracking.

    Returns (x, f, iters, reasons) for the batch of starting points ``x0``.
    Every restart keeps its own step length, so each row evolves exactly as
    it would alone.
    """
    sc = problem.step_controls
    x = np.array(x0, dtype=float, copy=True)
    B = x.shape[0]
    f, g = layout.value_and_grad(x)
    step = np.full(B, sc.initial_step)
    iters = np.zeros(B, dtype=int)
    reason = np.array([""] * B, dtype=object)
    reason[f < problem.f_success] = "converged"
    active = f >= problem.f_success
    for _ in range(problem.max_iters):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        xa, fa, ga = x[idx], f[idx], g[idx]
        gg = np.sum(ga * ga, axis=1)
        flat = gg == 0.0
        s = np.minimum(step[idx] * sc.grow, sc.max_step)
        pending = ~flat
        x_new, f_new, g_new = xa.copy(), fa.copy(), ga.copy()
        collapsed = np.zeros(idx.size, dtype=bool)
        while pending.any():
            p = np.nonzero(pending)[0]
            trial = xa[p] - s[p, None] * ga[p]
            ft, gt = layout.value_and_grad(trial)
            ok = ft <= fa[p] - sc.armijo_c * s[p] * gg[p]
            acc = p[ok]
            x_new[acc], f_new[acc], g_new[acc] = trial[ok], ft[ok], gt[ok]
            pending[acc] = False
            rej = p[~ok]
            s[rej] *= sc.shrink
            dead = rej[s[rej] < sc.min_step]
            collapsed[dead] = True
            pending[dead] = False
        moved = ~(flat | collapsed)
        x[idx], f[idx], g[idx] = x_new, f_new, g_new
        step[idx[moved]] = s[moved]
        iters[idx[moved]] += 1
        done_ok = moved & (f_new < problem.f_success)
        reason[idx[done_ok]] = "converged"
        reason[idx[flat]] = "stationary"
        reason[idx[collapsed]] = "step collapse"
        active[idx[done_ok | flat | collapsed]] = False
    reason[active] = "max iterations"
    return x, f, iters, reason


def minimize(problem: SearchProblem, restart_indices: Optional[Sequence[int]] = None) -> list[SearchOutcome]:
    """Run the restarts (all of them, or just ``restart_indices``) and return outcomes by restart index."""
    indices = sorted(range(problem.restarts) if restart_indices is None else restart_indices)
    starts: dict = {}
    for k in indices:
        diag, x0 = _restart_start(problem, k)
        starts.setdefault(diag, []).append((k, x0))
    outcomes = []
    for diag, group in starts.items():
        layout = _layout_for(problem, diag)
        ks = [k for k, _ in group]
        x, f, iters, reason = descend(layout, np.array([x0 for _, x0 in group]).reshape(len(group), layout.size), problem)
        for j, k in enumerate(ks):
            outcomes.append(
                SearchOutcome(
                    restart=k,
                    params=x[j].copy(),
                    f_final=float(f[j]),
                    iters=int(iters[j]),
                    converged=bool(f[j] < problem.f_success),
                    stop_reason=str(reason[j]),
                    layout=layout,
                )
            )
    outcomes.sort(key=lambda o: o.restart)
    log.info("%d/%d restarts converged", sum(o.converged for o in outcomes), len(outcomes))
    return outcomes


def warm_start(problem: SearchProblem, H, perturbation: float = 0.0, restart: int = 0) -> SearchOutcome:
    """Descend from the phases of H (optionally perturbed by the restart's stream)."""
    layout = _layout_for(problem, problem.diag_pattern)
    x0 = layout.params_from_matrix(H)
    if perturbation:
        x0 = x0 + perturbation * _uniform_phases(restart_generator(problem.seed, restart), layout.size) / np.pi
    x, f, iters, reason = descend(layout, x0[None, :], problem)
    return SearchOutcome(restart, x[0], float(f[0]), int(iters[0]), bool(f[0] < problem.f_success), str(reason[0]), layout)


def polish(layout: PhaseLayout, params, iters: int = 10) -> np.ndarray:
    """Gauss-Newton refinement of a near-solution (minimum-norm steps)."""
    x = np.array(params, dtype=float, copy=True)
    f = float(layout.value_and_grad(x)[0])
    for _ in range(iters):
        r, J = layout.residual_jacobian(x)
        dx = np.linalg.lstsq(J, -r, rcond=None)[0]
        x_new = x + dx
        f_new = float(layout.value_and_grad(x_new)[0])
        if not f_new < f:
            break
        x, f = x_new, f_new
    return x


@dataclass(frozen=True, eq=False)
class Classification:
    restart: int
    theta: Optional[float]
    certificate: Optional[equivalence.EquivalenceCertificate] = None
    residual: Optional[float] = None
    reason: str = ""
    matrix: Optional[np.ndarray] = None  # the polished outcome

    @property
    def classified(self) -> bool:
        return self.theta is not None


def classify_outcome(outcome: SearchOutcome, tol: "float | Tolerance | None" = None) -> Classification:
    if not outcome.converged:
        return Classification(outcome.restart, None, reason="not converged")
    if outcome.layout.n != 6:
        return Classification(outcome.restart, None, reason="order is not 6")
    params = polish(outcome.layout, outcome.params)
    H = outcome.layout.matrix(params)
    try:
        fit = equivalence.fit_theta(H, tol)
    except equivalence.NotHermitian:
        return Classification(outcome.restart, None, reason="NotHermitian", matrix=H)
    if fit is None:
        return Classification(outcome.restart, None, reason="no family embedding", matrix=H)
    return Classification(outcome.restart, fit.theta, fit.certificate, fit.residual, matrix=H)


def classify_outcomes(outcomes: Sequence[SearchOutcome], tol: "float | Tolerance | None" = None) -> list[Classification]:
    return [classify_outcome(o, tol) for o in outcomes]


def summary_line(outcome: SearchOutcome, cls: Optional[Classification] = None) -> str:
    theta = "unclassified" if cls is None or cls.theta is None else repr(cls.theta)
    return f"restart={outcome.restart} converged={str(outcome.converged).lower()} f={outcome.f_final!r} theta={theta}"


def hadamard_check(outcome: SearchOutcome, polished: bool = True) -> catalog.HadamardCheckReport:
    params = polish(outcome.layout, outcome.params) if polished else outcome.params
    return catalog.check(outcome.layout.matrix(params), 1e-7)
