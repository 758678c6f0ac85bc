import json
import subprocess
import sys
from fractions import Fraction as Fr

import pytest

from gpsconv import cli
from gpsconv.exponents import GaussQ as G

from conftest import CONVERGENT, problem_path


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_check_exit_codes(capsys, tmp_path):
    assert run(capsys, "check", problem_path("euler_integer"))[0] == 0
    code, out = run(capsys, "check", problem_path("no_top_slot"))
    assert code == 3 and out["error"] == "NonVanishingUndecidable"
    bad = tmp_path / "bad.json"
    bad.write_text('{"equation": [1,\n 2')
    code, out = run(capsys, "check", bad)
    assert code == 64 and "line 2" in out["message"]


def test_check_unsatisfied_exits_2(capsys, tmp_path):
    # x y_1 - y_0 at y = x: order inequality fails
    data = {"format": 1, "equation": {"order": 1, "monomials": [
        {"coef": "1", "xexp": "1", "powers": [0, 1]},
        {"coef": "-1", "xexp": "0", "powers": [1, 0]}]},
        "prefix": [{"exp": "1", "coef": "1"}], "frontier": "2"}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(data))
    code, out = run(capsys, "check", path)
    assert code == 2 and out["report"]["satisfied"] is False


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        cli.main(["certify", "x.json", "--max-degree", "many"])
    assert info.value.code == 64
    assert run(capsys, "check", "/nonexistent/file.json")[0] == 64


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    text = capsys.readouterr().out
    for code in ("0 ", "2 ", "3 ", "64"):
        assert code in text
    assert "GPS_CERTIFY_THREADS" in text


def test_reduce(capsys):
    code, out = run(capsys, "reduce", problem_path("euler_integer"))
    assert code == 0 and out["reduced"]["mu"] == 1


def test_expand_six_coefficients(capsys):
    code, out = run(capsys, "expand", problem_path("euler_integer"), "--order", 6)
    assert code == 0
    terms = [(G.from_json(t["exp"]), G.from_json(t["coef"])) for t in out["series"]["terms"]]
    # y = sum_k x^k / (k + 2): head x, x^2 and six tail coefficients
    assert terms == [(G(k), G(Fr(1, k + 2))) for k in range(1, 9)]


def test_expand_order_zero_is_prefix(capsys):
    code, out = run(capsys, "expand", problem_path("euler_integer"), "--order", 0)
    assert code == 0 and len(out["series"]["terms"]) == 4
    assert G.from_json(out["series"]["frontier"]) == 5


def test_expand_euler_root(capsys):
    code, out = run(capsys, "expand", problem_path("euler_root"))
    assert code == 2
    assert out["error"] == "EulerRootOnLattice" and out["stage"] == "lattice_recursion"


def test_certify_inconsistent(capsys):
    code, out = run(capsys, "certify", problem_path("inconsistent_prefix"))
    assert code == 2 and out["error"] == "InconsistentPrefix" and out["stage"] == "reduction"


@pytest.mark.parametrize("name", CONVERGENT)
def test_certify_verify_round_trip(capsys, tmp_path, name):
    cert = tmp_path / "c.json"
    assert run(capsys, "certify", problem_path(name), "--output", cert)[0] == 0
    data = json.loads(cert.read_text())
    assert Fr(data["sigma"]) > 0 and data["domination_verified_to"] == data["max_degree"] > 0
    code, out = run(capsys, "verify", cert, problem_path(name))
    assert code == 0 and out == {"format": 1, "ok": True, "failures": []}


def test_certify_is_byte_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "certify", problem_path("two_generators"), "-o", a)
    run(capsys, "certify", problem_path("two_generators"), "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_verify_catches_tampered_C(capsys, tmp_path):
    cert = tmp_path / "c.json"
    run(capsys, "certify", problem_path("riccati"), "-o", cert)
    data = json.loads(cert.read_text())
    point = data["points"][3]
    c = Fr(point["C"])
    point["C"] = str(Fr(c.numerator ^ 1, c.denominator))
    cert.write_text(json.dumps(data))
    code, out = run(capsys, "verify", cert, problem_path("riccati"))
    assert code != 0 and not out["ok"]
    assert any("C = A / |xi|^n" in f for f in out["failures"])


def test_verify_degree_mismatch(capsys, tmp_path):
    cert = tmp_path / "c.json"
    run(capsys, "certify", problem_path("riccati"), "-o", cert, "--max-degree", 6)
    code, out = run(capsys, "verify", cert, problem_path("riccati"), "--max-degree", 10)
    assert code == 2 and out["error"] == "CertificateError" and "degree" in out["message"]
    data = json.loads(cert.read_text())
    data["max_degree"] = 7
    cert.write_text(json.dumps(data))
    code, out = run(capsys, "verify", cert, problem_path("riccati"))
    assert code == 2 and out["error"] == "CertificateError"


def test_eval_single_point(capsys):
    code, out = run(capsys, "eval", problem_path("euler_integer"), "--x", "0.01,0")
    assert code == 0
    re, im = out["values"][0]["y"]
    exact = sum(0.01 ** k / (k + 2) for k in range(1, 40))
    assert abs(re - exact) < 1e-15 and im == 0


def test_eval_outside_sector(capsys):
    code, out = run(capsys, "eval", problem_path("euler_integer"), "--x=-0.01,0")
    assert code == 2 and out["error"] == "OutsideSector"
    code, out = run(capsys, "eval", problem_path("euler_integer"), "--x", "0.5,0")
    assert code == 2 and out["error"] == "OutsideSector"


def test_eval_batch_preserves_order(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("GPS_CERTIFY_THREADS", "4")
    pts = [[0.001 + 0.04 * k / 1000, 0.01 * ((k % 7) - 3) / 3] for k in range(1000)]
    path = tmp_path / "pts.json"
    path.write_text(json.dumps(pts))
    code, out = run(capsys, "eval", problem_path("euler_gaussian"), "--samples", path)
    assert code == 0 and len(out["values"]) == 1000
    assert [v["x"] for v in out["values"]] == pts


def test_bad_thread_count(capsys, monkeypatch):
    monkeypatch.setenv("GPS_CERTIFY_THREADS", "zero")
    assert run(capsys, "eval", problem_path("euler_integer"), "--x", "0.01")[0] == 64


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gpsconv", "check",
                           str(problem_path("riccati"))], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["report"]["satisfied"]
