"""Command-line front end.

Exit codes: 0 success / positive verdict, 1 malformed input, 2 domain
violation, 3 numerical ambiguity, 4 negative verdict (not Hadamard, not
equivalent, not classified).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import catalog, defect, equivalence, search
from .linalg import Tolerance

EXIT_OK, EXIT_MALFORMED, EXIT_DOMAIN, EXIT_AMBIGUOUS, EXIT_NEGATIVE = 0, 1, 2, 3, 4
FORMAT_VERSION = 1


class MalformedInput(ValueError):
    pass


# --------------------------------------------------------------------------
# matrix files


def matrix_to_json(H, metadata: dict | None = None) -> dict:
    H = np.asarray(H, dtype=complex)
    doc = {
        "format_version": FORMAT_VERSION,
        "n": int(H.shape[0]),
        # json writes floats with repr, the shortest string that round-trips
        "entries": [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in H],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def _entry(e) -> complex:
    if isinstance(e, dict) and "turns" in e:
        t = float(e["turns"])
        # exact at multiples of a quarter turn
        if (4 * t).is_integer():
            return (1, 1j, -1, -1j)[int(4 * t) % 4]
        return complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
    if isinstance(e, dict) and "re" in e and "im" in e:
        return complex(float(e["re"]), float(e["im"]))
    raise MalformedInput(f"entry {e!r} is neither {{re, im}} nor {{turns}}")


def matrix_from_json(doc) -> np.ndarray:
    try:
        if doc.get("format_version") != FORMAT_VERSION:
            raise MalformedInput(f"unsupported format_version {doc.get('format_version')!r}")
        n = int(doc["n"])
        rows = doc["entries"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise MalformedInput(f"entries must be {n}x{n}")
        return np.array([[_entry(e) for e in r] for r in rows], dtype=complex)
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"malformed matrix file: {exc}") from exc


def read_matrix(path: str) -> np.ndarray:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    return matrix_from_json(doc)


def write_json(doc: dict, path: str | None, out) -> None:
    text = json.dumps(doc, indent=1) + "\n"
    if path is None:
        out.write(text)
    else:
        Path(path).write_text(text)


# --------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _tol(args) -> Tolerance:
    raw = args.tol if getattr(args, "tol", None) is not None else os.environ.get("HADAMARD_TOL")
    try:
        return Tolerance.of(None if raw is None else float(raw))
    except ValueError as exc:
        raise MalformedInput(f"bad tolerance {raw!r}: {exc}") from exc


def _seed(args) -> int:
    raw = args.seed if args.seed is not None else os.environ.get("HADAMARD_SEED")
    if raw is None:
        raise MalformedInput("--seed (or HADAMARD_SEED) is required")
    try:
        return int(raw)
    except ValueError as exc:
        raise MalformedInput(f"bad seed {raw!r}") from exc


def _angle(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise MalformedInput(f"theta must be a number in radians, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hadamard", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a catalog matrix")
    g.add_argument("kind", choices=["fourier", "tensor", "h-theta", "h-theta-prime", "c6", "butson"])
    g.add_argument("args", nargs="*")
    g.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="Hadamard check report")
    v.add_argument("file")
    v.add_argument("--tol")

    d = sub.add_parser("defect", help="defect report")
    d.add_argument("file")
    d.add_argument("--tol")

    e = sub.add_parser("equiv", help="decide or verify equivalence")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--brute-force", action="store_true")
    e.add_argument("--cert")
    e.add_argument("--tol")

    f = sub.add_parser("fit-theta", help="classify against the order-6 family")
    f.add_argument("file")
    f.add_argument("--tol")

    s = sub.add_parser("search", help="multistart phase search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--hermitian", action="store_true")
    s.add_argument("--diag")
    s.add_argument("--dephased", action="store_true")
    s.add_argument("--restarts", type=int, required=True)
    s.add_argument("--seed")
    s.add_argument("--max-iters", type=int, default=5000)
    s.add_argument("--out")
    s.add_argument("--tol")

    fp = sub.add_parser("fingerprint", help="quantized quadruple-product multiset")
    fp.add_argument("file")
    return p


# --------------------------------------------------------------------------
# subcommands


def _gen(args, out) -> int:
    kind, rest = args.kind, args.args
    want = {"fourier": 1, "tensor": 2, "h-theta": 1, "h-theta-prime": 1, "c6": 0, "butson": 1}[kind]
    if len(rest) != want:
        raise MalformedInput(f"gen {kind} takes {want} argument(s), got {len(rest)}")
    meta = {"name": kind, "source": "gen " + " ".join([kind, *rest])}
    if kind == "fourier":
        H = catalog.fourier(_int(rest[0]))
    elif kind == "tensor":
        H = catalog.tensor(read_matrix(rest[0]), read_matrix(rest[1]))
    elif kind in ("h-theta", "h-theta-prime"):
        th = _angle(rest[0])
        H = catalog.h_theta(th) if kind == "h-theta" else catalog.h_theta_prime(th)
        meta["theta"] = catalog.wrap_angle(th)
    elif kind == "c6":
        H = catalog.c6_cyclic()
    else:
        try:
            H = catalog.butson_h(_int(rest[0]))
        except IndexError as exc:
            raise MalformedInput(str(exc)) from exc
    write_json(matrix_to_json(H, meta), args.output, out)
    return EXIT_OK


def _int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise MalformedInput(f"expected an integer, got {text!r}") from exc
    if v < 1:
        raise MalformedInput(f"expected a positive integer, got {v}")
    return v


def _verify(args, out) -> int:
    rep = catalog.check(read_matrix(args.file), _tol(args))
    out.write("\n".join(rep.lines()) + "\n")
    return EXIT_OK if rep.is_hadamard else EXIT_NEGATIVE


def _defect(args, out) -> int:
    rep = defect.defect(read_matrix(args.file), _tol(args))
    out.write("\n".join(rep.lines()) + "\n")
    return EXIT_OK


def _equiv(args, out) -> int:
    A, B = read_matrix(args.a), read_matrix(args.b)
    tol = _tol(args)
    if args.cert:
        try:
            cert = equivalence.EquivalenceCertificate.from_json(json.loads(Path(args.cert).read_text()))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad certificate file: {exc}") from exc
        ok = equivalence.verify_certificate(cert, A, B, tol)
        out.write(f"equivalent={str(ok).lower()}\n")
        out.write(f"residual={equivalence.certificate_residual(cert, A, B)!r}\n")
        return EXIT_OK if ok else EXIT_NEGATIVE
    if args.brute_force:
        cert = equivalence.brute_force_equivalent(A, B, tol)
        if cert is None:
            out.write("equivalent=false\n")
            return EXIT_NEGATIVE
        out.write(json.dumps(cert.to_json()) + "\n")
        return EXIT_OK
    # fingerprints alone can only refute
    if not equivalence.fingerprint(A).matches(equivalence.fingerprint(B)):
        out.write("equivalent=false\n")
        return EXIT_NEGATIVE
    out.write("equivalent=unknown (fingerprints agree; use --brute-force or --cert)\n")
    return EXIT_NEGATIVE


def _fit_theta(args, out, err) -> int:
    try:
        fit = equivalence.fit_theta(read_matrix(args.file), _tol(args))
    except equivalence.NotHermitian as exc:
        err.write(f"{exc}\n")
        fit = None
    if fit is None:
        out.write("theta=unclassified\n")
        return EXIT_NEGATIVE
    out.write(f"theta={fit.theta!r}\n")
    out.write(json.dumps(fit.certificate.to_json()) + "\n")
    return EXIT_OK


def _search(args, out) -> int:
    diag = None
    if args.diag:
        try:
            diag = tuple(int(v) for v in args.diag.split(","))
        except ValueError as exc:
            raise MalformedInput(f"bad --diag {args.diag!r}") from exc
    seed = _seed(args)
    try:
        problem = search.SearchProblem(
            n=args.n,
            hermitian=args.hermitian,
            diag_pattern=diag,
            dephased=args.dephased,
            restarts=args.restarts,
            seed=seed,
            max_iters=args.max_iters,
        )
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    tol = _tol(args) if args.tol is not None or "HADAMARD_TOL" in os.environ else None
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    for o in search.minimize(problem):
        cls = search.classify_outcome(o, tol) if o.converged and args.hermitian and args.n == 6 else None
        out.write(search.summary_line(o, cls) + "\n")
        if args.out and o.converged:
            H = cls.matrix if cls is not None and cls.matrix is not None else o.matrix()
            meta = {"name": f"restart-{o.restart}", "source": f"search seed={seed} restart={o.restart}"}
            if cls is not None and cls.theta is not None:
                meta["theta"] = cls.theta
            write_json(matrix_to_json(H, meta), str(Path(args.out) / f"restart_{o.restart:04d}.json"), out)
    return EXIT_OK


def _fingerprint(args, out) -> int:
    fp = equivalence.fingerprint(read_matrix(args.file))
    out.write("\n".join(fp.lines()) + "\n")
    return EXIT_OK


_COMMANDS = {
    "gen": _gen,
    "verify": _verify,
    "defect": _defect,
    "equiv": _equiv,
    "fit-theta": _fit_theta,
    "search": _search,
    "fingerprint": _fingerprint,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "fit-theta":
            return _fit_theta(args, out, err)
        return _COMMANDS[args.command](args, out)
    except MalformedInput as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except catalog.DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except defect.RankAmbiguous as exc:
        err.write(f"error: {exc}\n")
        return EXIT_AMBIGUOUS
    except (catalog.NonSquare, defect.NotHadamard, equivalence.NotHermitian, equivalence.OrderTooLarge) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except equivalence.DimensionMismatch as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
