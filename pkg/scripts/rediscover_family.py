"""Search for self-adjoint order-6 Hadamard matrices and classify each hit by theta."""
import argparse
import logging

from hadamard import catalog, search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=50)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--diag", default="1,-1,-1,-1,1,1")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    diag = tuple(int(v) for v in args.diag.split(","))
    problem = search.SearchProblem(6, hermitian=True, diag_pattern=diag, dephased=True,
                                   restarts=args.restarts, seed=args.seed)
    outcomes = search.minimize(problem)
    classes = search.classify_outcomes(outcomes)
    for o, c in zip(outcomes, classes):
        print(search.summary_line(o, c) + (f" reason={c.reason}" if c.reason else ""))
    thetas = sorted(c.theta for c in classes if c.classified)
    print(f"converged {sum(o.converged for o in outcomes)}/{len(outcomes)}, classified {len(thetas)}")
    if thetas:
        boundary = sum(abs(abs(t) - catalog.THETA_MIN) < 1e-6 for t in thetas)
        print(f"theta range [{thetas[0]:.4f}, {thetas[-1]:.4f}], {boundary} on the domain boundary")


if __name__ == "__main__":
    main()
