"""Multistart evidence that the excluded diagonal patterns admit no self-adjoint Hadamard matrix."""
import argparse

from hadamard import search

PATTERNS = {
    "excluded": [
        (1, 1, 1, 1, 1, 1),
        (1, -1, 1, 1, 1, 1),
        (1, -1, -1, 1, 1, 1),
        (1, -1, -1, -1, -1, 1),
        (1, -1, -1, -1, -1, -1),
    ],
    "allowed": [(1, -1, -1, -1, 1, 1)],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=100)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    print("kind      diagonal               converged  min f_final   median iters")
    for kind, diags in PATTERNS.items():
        for d in diags:
            problem = search.SearchProblem(6, hermitian=True, diag_pattern=d, dephased=True,
                                           restarts=args.restarts, seed=args.seed)
            out = search.minimize(problem)
            iters = sorted(o.iters for o in out)
            conv = sum(o.f_final < problem.f_fail_floor for o in out)
            label = ",".join(f"{v:+d}" for v in d)
            print(f"{kind:9} {label:22} {conv:9d}  {min(o.f_final for o in out):11.4g}   {iters[len(iters) // 2]}")


if __name__ == "__main__":
    main()
