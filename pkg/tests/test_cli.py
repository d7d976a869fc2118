"""Command-line behavior: output, exit codes, determinism, certificates."""

import json

from tame2.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compose_inverse_pair(capsys):
    code, out, _ = run_cli(
        capsys, "compose", "--ring", "QQ", "(X + Y^2, Y)", "(X - Y^2, Y)"
    )
    assert code == 0
    assert out.strip() == "(X, Y)"


def test_invert_square_zero(capsys):
    code, out, _ = run_cli(
        capsys, "invert", "--ring", "GF(2)[t]/(t^2)", "(X + t*X^2*Y, Y + t*X*Y^2)"
    )
    assert code == 0
    assert "t*X^2*Y + X" in out


def test_invert_failure_exit_code(capsys):
    code, out, err = run_cli(capsys, "invert", "--ring", "QQ", "(X^2, Y)")
    assert code == 1
    assert "error" in err


def test_jacobian(capsys):
    code, out, _ = run_cli(capsys, "jacobian", "--ring", "QQ", "(2*X, Y)")
    assert code == 0
    assert out.strip() == "2"


def test_is_automorphism_yes_no(capsys):
    code, out, _ = run_cli(capsys, "is-automorphism", "--ring", "QQ", "(X + Y^3, Y)")
    assert code == 0 and out.strip() == "yes"
    code, out, _ = run_cli(capsys, "is-automorphism", "--ring", "QQ", "(X, X)")
    assert code == 2 and out.strip() == "no"


def test_is_automorphism_undecidable_ring_is_an_error(capsys):
    # over ZZ there is no general decision procedure; that is an error, not
    # a "no"
    code, out, err = run_cli(
        capsys, "is-automorphism", "--ring", "ZZ", "(X + 2*Y^2, Y + X^2)"
    )
    assert code == 1
    assert "error" in err


def test_charp_check_rejects_composite_modulus(capsys):
    code, out, err = run_cli(capsys, "charp-check", "--p", "6", "(X, Y)")
    assert code == 1
    assert "not prime" in err


def test_decompose_json_schema(capsys):
    code, out, _ = run_cli(
        capsys, "decompose", "--ring", "GF(5)", "(Y, 4*X)", "--json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "tame"
    assert obj["ring"] == "GF(5)"
    assert all(f["kind"] in ("elemX", "elemY", "linear", "shift") for f in obj["factors"])


def test_decompose_unit_jacobian_truncated(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "decompose", "--ring", "QQ[t]/(t^2)", "--json",
        "(3*X + t*Y^2, Y + t*X)",
    )
    assert code == 0
    path = tmp_path / "unit.json"
    path.write_text(out)
    code, _, _ = run_cli(capsys, "verify-cert", str(path))
    assert code == 0


def test_decompose_output_passes_verify_cert(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "decompose", "--ring", "QQ[t]/(t^2)", "--json",
        "(X + t*X^2*Y, Y - t*X*Y^2)",
    )
    assert code == 0
    path = tmp_path / "decomp.json"
    path.write_text(out)
    code, _, _ = run_cli(capsys, "verify-cert", str(path))
    assert code == 0


def test_charp_check_not_tame(capsys):
    code, out, _ = run_cli(
        capsys, "charp-check", "--p", "3", "--json", "(X + t*X^3*Y^2, Y)"
    )
    assert code == 2
    obj = json.loads(out)
    assert obj["verdict"] == "not_tame"
    assert obj["witness"]["monomial"] == [3, 3]
    assert obj["witness"]["modulus"] == 3
    # both congruences in the single unknown: e = 1 from u, e = 0 from v
    assert obj["witness"]["congruences"] == [[1, 1], [1, 0]]


def test_env_bounds_malformed(capsys, monkeypatch):
    monkeypatch.setenv("TAME2_SEARCH_BOUNDS", "not json")
    code, out, err = run_cli(capsys, "charp-check", "--p", "2", "(X, Y)")
    assert code == 1
    assert "TAME2_SEARCH_BOUNDS" in err


def test_charp_check_tame_and_verify(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "charp-check", "--p", "2", "--json", "(X + t*X^2*Y, Y - t*X*Y^2)"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "tame"
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, out, _ = run_cli(capsys, "verify-cert", str(path))
    assert code == 0


def test_charp_check_inconclusive_exit(capsys):
    code, out, _ = run_cli(
        capsys,
        "charp-check", "--p", "2", "--max-power", "24", "--coeff-range", "1",
        "--aux-degree", "12", "--json", "(X + t*X^3*Y^2, Y + t*X^2*Y^3)",
    )
    assert code == 3
    assert json.loads(out)["verdict"] == "inconclusive"


def test_verify_cert_rejects_tampering(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "charp-check", "--p", "2", "--json", "(X + t*X^2*Y, Y - t*X*Y^2)"
    )
    obj = json.loads(out)
    # perturb one factor (mod 2 a sign flip would be a no-op)
    for fac in obj["factors"]:
        if fac["kind"] == "elemX":
            fac["data"] = fac["data"] + " + t*Y^9"
            break
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run_cli(capsys, "verify-cert", str(path))
    assert code == 1


def test_verify_cert_witness_recheck(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "charp-check", "--p", "5", "--json", "(X + t*X^5*Y^4, Y)"
    )
    assert code == 2
    path = tmp_path / "witness.json"
    path.write_text(out)
    code, out, _ = run_cli(capsys, "verify-cert", str(path))
    assert code == 0
    # a solvable congruence pair must be rejected
    obj = json.loads(path.read_text())
    obj["witness"]["congruences"] = [[1, 1], [1, 1]]
    path.write_text(json.dumps(obj))
    code, out, _ = run_cli(capsys, "verify-cert", str(path))
    assert code == 1


def test_verify_cert_malformed_file(capsys, tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "verify-cert", str(path))
    assert code == 1 and "malformed" in err
    path.write_text(json.dumps({"verdict": "not_tame", "witness": {"modulus": 3}}))
    code, _, err = run_cli(capsys, "verify-cert", str(path))
    assert code == 1 and "malformed" in err


def test_deterministic_output(capsys):
    argv = ["charp-check", "--p", "2", "--json", "(X + t*X^2*Y, Y - t*X*Y^2)"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_env_bounds_override(capsys, monkeypatch):
    monkeypatch.setenv(
        "TAME2_SEARCH_BOUNDS",
        '{"max_power": 24, "coeff_range": 1, "max_aux_degree": 12}',
    )
    code, out, _ = run_cli(
        capsys, "charp-check", "--p", "3", "--json", "(X + t*X^3*Y^2, Y + 2*t*X^2*Y^3)"
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "tame"


def test_parse_error_reports_position(capsys):
    code, out, err = run_cli(capsys, "jacobian", "--ring", "QQ", "(X + , Y)")
    assert code == 1
    assert "column" in err


def test_paper_examples_pass(capsys):
    code, out, _ = run_cli(capsys, "paper-examples", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["all_pass"]
    assert len(obj["checks"]) == 7
