"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import itertools
import math
import time

import numpy as np
import pytest

from hadamard import catalog, certificates, defect, equivalence, search
from hadamard.cyclotomic import exact_defect

import oracles

FAMILY_DIAG = (1, -1, -1, -1, 1, 1)
EXCLUDED_DIAGS = [
    (1, 1, 1, 1, 1, 1),
    (1, -1, 1, 1, 1, 1),
    (1, -1, -1, 1, 1, 1),
    (1, -1, -1, -1, -1, 1),
    (1, -1, -1, -1, -1, -1),
]

# first-run summaries, compared against reruns by the determinism criterion
_RUNS: dict = {}


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return emit


def test_family_validity(report):
    t0 = time.perf_counter()
    unit = herm = mod = 0.0
    for th in oracles.valid_thetas(1000):
        H = catalog.h_theta(th)
        p = catalog.family_point(th)
        unit = max(unit, catalog.check(H).unitarity_residual)
        herm = max(herm, float(np.max(np.abs(H - H.conj().T))))
        mod = max(mod, *(abs(abs(v) - 1) for v in (p.x, p.t, p.z)))
    dt = time.perf_counter() - t0
    ok = unit < 1e-10 and herm < 1e-12 and mod < 1e-10 and dt < 5
    report("1 family validity", ok, f"unitarity {unit:.2e}, hermitian {herm:.2e}, modulus {mod:.2e}, {dt:.2f}s")


def test_domain_boundary(report):
    passes = all(catalog.check(catalog.h_theta(s * catalog.THETA_MIN)).is_hadamard for s in (1, -1))
    r0 = [catalog.family_point(s * catalog.THETA_MIN).r for s in (1, -1)]
    try:
        catalog.h_theta(0.0)
        rejected = False
    except catalog.DomainError:
        rejected = True
    x0 = abs(catalog.family_parameters_unconstrained(0.0)[0])
    ok = passes and r0 == [0.0, 0.0] and rejected and abs(x0 - 0.268) < 1e-3
    report("2 domain boundary", ok, f"boundary checks {passes}, r {r0}, theta=0 rejected {rejected}, |x(0)| {x0:.6f}")


def test_certificate_replay_c6(report):
    t0 = time.perf_counter()
    P = certificates.C6_PERMUTATION
    H0 = catalog.h_theta(catalog.c6_theta())
    res = float(np.linalg.norm(P @ H0 @ np.linalg.inv(P) - catalog.c6_cyclic()))
    dt = time.perf_counter() - t0
    report("3a P H(theta0) P^-1 = C6", res < 1e-9 and dt < 1, f"residual {res:.2e}, {dt:.3f}s")


def test_certificate_replay_prime(report):
    t0 = time.perf_counter()
    worst = 0.0
    for th in (2.0, 2.5, 3.0):
        D1, D2 = certificates.prime_diagonals(th)
        lhs = certificates.PRIME_P1 @ D1 @ catalog.h_theta(th) @ D2 @ certificates.PRIME_P2
        worst = max(worst, float(np.linalg.norm(lhs - catalog.h_theta_prime(th))))
    dt = time.perf_counter() - t0
    report("3b P1 D1 H(theta) D2 P2 = H'(theta)", worst < 1e-9 and dt < 1, f"max residual {worst:.2e}, {dt:.3f}s")


def test_certificate_replay_butson(report):
    # Literal replay of the printed equation.  The printed product equals H'(pi/2)
    # (the other branch), not H(pi/2); the corrected route is reported alongside.
    t0 = time.perf_counter()
    lhs = certificates.BUTSON_P1 @ certificates.BUTSON_D @ catalog.butson_h(3) @ certificates.BUTSON_P2
    res = float(np.linalg.norm(lhs - catalog.h_theta(math.pi / 2)))
    res_prime = float(np.linalg.norm(lhs - catalog.h_theta_prime(math.pi / 2)))
    routed = equivalence.certificate_residual(
        certificates.butson_to_family_certificate(), catalog.butson_h(3), catalog.h_theta(math.pi / 2)
    )
    dt = time.perf_counter() - t0
    report(
        "3c H(pi/2) = P1 D H3 P2",
        res < 1e-9 and dt < 1,
        f"literal residual {res:.3g}; printed product vs H'(pi/2) {res_prime:.2e}; "
        f"via the H' certificate {routed:.2e}",
    )


def test_unimodular_sum_identities(report):
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    r = (
        oracles.three_vectors_residual(rng),
        oracles.four_vectors_residual(rng),
        oracles.haagerup_residual(rng),
    )
    dt = time.perf_counter() - t0
    report("4 unimodular sum identities", max(r) < 1e-12 and dt < 2, f"residuals {r[0]:.2e} {r[1]:.2e} {r[2]:.2e}, {dt:.2f}s")


def test_defect(report):
    t0 = time.perf_counter()
    f6_float, f6_exact = defect.defect(catalog.fourier(6)).defect, exact_defect(catalog.fourier(6), 6)
    c6 = defect.defect(catalog.c6_cyclic()).defect
    fam = []
    for th in (1.5, 2.0, 2.5, 3.0, -2.2):
        H = catalog.h_theta(th)
        fam.append((defect.defect(H).defect, defect.kernel_distance(H, oracles.family_direction(th))))
    f5 = defect.defect(catalog.fourier(5)).defect
    dt = time.perf_counter() - t0
    ok = (
        f6_float == f6_exact == 4
        and c6 >= 1
        and all(d >= 1 and k < 1e-6 for d, k in fam)
        and f5 == 0
        and dt < 10
    )
    worst = max(k for _, k in fam)
    report(
        "5 defect",
        ok,
        f"F6 {f6_float}/{f6_exact} (float/exact), C6 {c6}, family {[d for d, _ in fam]} "
        f"kernel residual {worst:.2e}, F5 {f5}, {dt:.2f}s",
    )


def test_equivalence_engine(report):
    mats = [catalog.butson_h(k) for k in range(1, 5)] + [catalog.h_theta(math.pi / 2)]
    slowest, found = 0.0, 0
    for A, B in itertools.combinations(mats, 2):
        t0 = time.perf_counter()
        c = equivalence.brute_force_equivalent(A, B)
        slowest = max(slowest, time.perf_counter() - t0)
        found += c is not None and equivalence.verify_certificate(c, A, B)
    t0 = time.perf_counter()
    none = equivalence.brute_force_equivalent(catalog.fourier(6), catalog.c6_cyclic()) is None
    slowest = max(slowest, time.perf_counter() - t0)
    report("6 equivalence engine", found == 10 and none and slowest < 60,
           f"{found}/10 pairs equivalent, F6 vs C6 inequivalent {none}, slowest {slowest:.2f}s")


def rediscovery():
    problem = search.SearchProblem(6, hermitian=True, diag_pattern=FAMILY_DIAG, dephased=True, restarts=50, seed=42)
    outcomes = search.minimize(problem)
    classes = search.classify_outcomes(outcomes)
    return outcomes, classes


def test_classification_rediscovery(report):
    t0 = time.perf_counter()
    outcomes, classes = rediscovery()
    dt = time.perf_counter() - t0
    conv = [(o, c) for o, c in zip(outcomes, classes) if o.converged]
    classified = [c for _, c in conv if c.classified and catalog.theta_domain_contains(c.theta) and c.residual < 1e-6]
    _RUNS["rediscovery"] = [(o.restart, o.converged, None if c.theta is None else round(c.theta, 9))
                            for o, c in zip(outcomes, classes)]
    worst = max((c.residual for c in classified), default=float("nan"))
    ok = len(conv) >= 5 and len(classified) == len(conv) and dt < 300
    report("7 classification rediscovery", ok,
           f"{len(conv)}/50 converged, {len(classified)} classified, max certificate residual {worst:.2e}, {dt:.1f}s")


def exclusion_runs():
    out = {}
    for d in EXCLUDED_DIAGS:
        problem = search.SearchProblem(6, hermitian=True, diag_pattern=d, dephased=True, restarts=100, seed=42)
        out[d] = [(o.restart, o.f_final < problem.f_fail_floor, o.f_final) for o in search.minimize(problem)]
    return out


def test_excluded_diagonals(report):
    t0 = time.perf_counter()
    runs = exclusion_runs()
    dt = time.perf_counter() - t0
    _RUNS["exclusion"] = runs
    hits = {d: sum(h for _, h, _ in r) for d, r in runs.items()}
    floors = {d: min(f for _, _, f in r) for d, r in runs.items()}
    ok = all(v == 0 for v in hits.values()) and dt < 600
    detail = ", ".join(f"{''.join('+' if v > 0 else '-' for v in d)} min f {floors[d]:.2f}" for d in EXCLUDED_DIAGS)
    report("8 excluded diagonals", ok, f"{sum(hits.values())} hits; {detail}; {dt:.1f}s")


def test_gradient_correctness(report):
    rng = np.random.default_rng(9)
    L = search.PhaseLayout(6)
    h, worst = 1e-6, 0.0
    for _ in range(100):
        p = rng.uniform(-np.pi, np.pi, L.size)
        g = L.value_and_grad(p)[1]
        eye = np.eye(L.size) * h
        fp = L.value_and_grad(p + eye)[0]
        fm = L.value_and_grad(p - eye)[0]
        worst = max(worst, float(np.max(np.abs(g - (fp - fm) / (2 * h)))))
    report("9 gradient correctness", worst < 1e-5, f"max component error {worst:.2e}")


def test_determinism(report):
    first_r = _RUNS.get("rediscovery")
    first_e = _RUNS.get("exclusion")
    if first_r is None:
        outcomes, classes = rediscovery()
        first_r = [(o.restart, o.converged, None if c.theta is None else round(c.theta, 9))
                   for o, c in zip(outcomes, classes)]
    if first_e is None:
        first_e = exclusion_runs()
    outcomes, classes = rediscovery()
    again_r = [(o.restart, o.converged, None if c.theta is None else round(c.theta, 9))
               for o, c in zip(outcomes, classes)]
    again_e = exclusion_runs()
    same_r = again_r == first_r
    same_e = all([x[:2] for x in again_e[d]] == [x[:2] for x in first_e[d]] for d in EXCLUDED_DIAGS)
    drift = max(abs(a[2] - b[2]) for d in EXCLUDED_DIAGS for a, b in zip(again_e[d], first_e[d]))
    report("10 determinism", same_r and same_e and drift <= 1e-12,
           f"rediscovery summary identical {same_r}, exclusion summary identical {same_e}, max f drift {drift:.1e}")
