import io
import json
import math

import numpy as np
import pytest

from hadamard import catalog, cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def gen(name, *args):
        path = tmp_path / f"{name}.json"
        code, _, err = run("gen", *args, "-o", path)
        assert code == 0, err
        return path

    return gen


def test_gen_and_verify(files):
    h = files("h", "h-theta", math.pi / 2)
    code, out, _ = run("verify", h)
    assert code == 0 and "is_hadamard=true" in out
    doc = json.loads(h.read_text())
    assert doc["format_version"] == 1 and doc["n"] == 6
    assert doc["metadata"]["theta"] == math.pi / 2


def test_out_of_domain_theta():
    code, _, err = run("gen", "h-theta", "0.0")
    assert code == 2 and "valid set" in err and "1.19606" in err


def test_negative_theta_argument(files):
    h = files("h0", "h-theta", catalog.c6_theta())
    assert json.loads(h.read_text())["metadata"]["theta"] == catalog.c6_theta()


def test_round_trip_is_lossless(tmp_path):
    for H in (catalog.c6_cyclic(), catalog.h_theta(2.345), catalog.fourier(7)):
        path = tmp_path / "m.json"
        cli.write_json(cli.matrix_to_json(H), str(path), None)
        assert np.array_equal(cli.read_matrix(str(path)), H)


def test_turns_encoding(tmp_path):
    B = catalog.butson_h(2)
    turns = np.rint(np.angle(B) / (2 * np.pi) * 4) / 4
    doc = {"format_version": 1, "n": 6, "entries": [[{"turns": float(t)} for t in row] for row in turns]}
    path = tmp_path / "b.json"
    path.write_text(json.dumps(doc))
    assert np.array_equal(cli.read_matrix(str(path)), B)


@pytest.mark.parametrize(
    "text",
    ["{", '{"format_version": 2, "n": 1, "entries": [[{"re": 1, "im": 0}]]}',
     '{"format_version": 1, "n": 2, "entries": [[{"re": 1, "im": 0}]]}',
     '{"format_version": 1, "n": 1, "entries": [[{"x": 1}]]}'],
)
def test_malformed_files(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = run("verify", path)
    assert code == 1 and err.startswith("error:")


def test_malformed_arguments():
    assert run("gen", "fourier", "x")[0] == 1
    assert run("gen", "bogus")[0] == 1
    assert run("gen", "butson", "7")[0] == 1
    assert run("search", "--n", "6", "--restarts", "1")[0] == 1  # no seed


def test_verify_negative(tmp_path):
    H = catalog.fourier(6)
    H[0, 0] = 0.5
    path = tmp_path / "m.json"
    cli.write_json(cli.matrix_to_json(H), str(path), None)
    code, out, _ = run("verify", path)
    assert code == 4 and "is_hadamard=false" in out


def test_verify_tolerance_from_env(tmp_path, monkeypatch, files):
    H = catalog.fourier(6) * np.exp(1j * 1e-6)
    H[0, 0] *= 1 + 1e-6
    path = tmp_path / "m.json"
    cli.write_json(cli.matrix_to_json(H), str(path), None)
    assert run("verify", path)[0] == 4
    monkeypatch.setenv("HADAMARD_TOL", "1e-4")
    assert run("verify", path)[0] == 0
    assert run("verify", path, "--tol", "1e-9")[0] == 4  # flag wins


def test_defect(files):
    code, out, _ = run("defect", files("f", "fourier", 6))
    assert code == 0 and "defect=4" in out
    code, out, _ = run("defect", files("f5", "fourier", 5))
    assert code == 0 and "satisfies_span_condition=true" in out


def test_equiv_brute_force_permutation_only(files):
    c, h = files("c", "c6"), files("h", "h-theta", catalog.c6_theta())
    code, out, _ = run("equiv", h, c, "--brute-force")
    assert code == 0
    cert = json.loads(out)
    assert cert["d1_turns"] == [0.0] * 6 and cert["d2_turns"] == [0.0] * 6


def test_equiv_with_certificate(files, tmp_path):
    a, b = files("b1", "butson", 1), files("b3", "butson", 3)
    code, out, _ = run("equiv", a, b, "--brute-force")
    assert code == 0
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out, _ = run("equiv", a, b, "--cert", cert)
    assert code == 0 and "equivalent=true" in out
    code, out, _ = run("equiv", b, a, "--cert", cert)
    assert code == 4


def test_equiv_negative(files):
    f, c = files("f", "fourier", 6), files("c", "c6")
    assert run("equiv", f, c, "--brute-force")[0] == 4
    assert run("equiv", f, c)[0] == 4


def test_fit_theta(files):
    code, out, _ = run("fit-theta", files("c", "c6"))
    assert code == 0 and out.startswith(f"theta={catalog.c6_theta()!r}")
    code, out, _ = run("fit-theta", files("f", "fourier", 6))
    assert code == 4 and "unclassified" in out


def test_fingerprint_stable(files):
    h = files("h", "h-theta", 2.5)
    a, b = run("fingerprint", h), run("fingerprint", h)
    assert a == b and a[0] == 0
    assert len(a[1].splitlines()) == 225


def test_gen_is_byte_stable(files, tmp_path):
    a = files("a", "h-theta", 2.5).read_bytes()
    b = files("b", "h-theta", 2.5).read_bytes()
    assert a == b


def test_tensor(files):
    code, out, _ = run("gen", "tensor", files("f2", "fourier", 2), files("f3", "fourier", 3))
    assert code == 0 and json.loads(out)["n"] == 6


def test_search(tmp_path, monkeypatch):
    monkeypatch.setenv("HADAMARD_SEED", "3")
    out_dir = tmp_path / "out"
    code, out, _ = run("search", "--n", 6, "--hermitian", "--diag", "1,-1,-1,-1,1,1", "--dephased",
                       "--restarts", 3, "--out", out_dir)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3 and lines[0].startswith("restart=0 converged=")
    written = sorted(out_dir.iterdir())
    assert len(written) == sum("converged=true" in l for l in lines)
    for path in written:
        assert catalog.check(cli.read_matrix(str(path))).is_hadamard
    assert run("search", "--n", 6, "--hermitian", "--diag", "1,-1,-1,-1,1,1", "--dephased",
               "--restarts", 3, "--seed", 3)[1] == out


def test_search_bad_diag():
    assert run("search", "--n", 6, "--diag", "1,-1", "--restarts", 1, "--seed", 0)[0] == 1
