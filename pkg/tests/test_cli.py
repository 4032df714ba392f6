import json

import pytest

from skewsmooth.cli import main

REFERENCE3 = """\
name: reference3
kind: skew
field: Q
n: 3
x1*x2 - 5*x2*x1 = 0
x1*x3 - 1/3*x3*x1 = 0
x2*x3 - 2*x3*x2 = 0
"""

CLASS_5A = """\
name: class5a
kind: skew
field: Q
n: 3
x2*x3 - x3*x2 = x1
x1*x3 - x3*x1 = -x2
x1*x2 - x2*x1 = x3
"""

CLASS_5E = """\
name: class5e
kind: skew
field: Q
n: 3
x2*x3 - x3*x2 = x3
x1*x3 - x3*x1 = -x1
x1*x2 - x2*x1 = 0
"""

DIFF_D = """\
name: classD
kind: diffusion1
field: Q
n: 3
lambda 1 2 = 2
lambda 2 1 = 1
lambda 1 3 = 3
lambda 3 1 = 5
lambda 2 3 = 4
lambda 3 2 = 1
"""


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [("reference3", REFERENCE3), ("class5a", CLASS_5A),
                       ("class5e", CLASS_5E), ("diffD", DIFF_D)]:
        p = tmp_path / f"{name}.alg"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_smooth_sufficient(files, capsys):
    code, out, _ = run(capsys, "smooth", files["reference3"], "--gkdim", "3")
    assert code == 0
    assert "SMOOTH_SUFFICIENT" in out


def test_smooth_not_smooth_still_exit_zero(files, capsys):
    code, out, err = run(capsys, "smooth", files["class5a"])
    assert code == 0
    assert "NOT_SMOOTH" in out
    assert "defaulting to n = 3" in err


def test_smooth_json_payload(files, capsys):
    code, out, _ = run(capsys, "smooth", files["reference3"], "--gkdim", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "SMOOTH_SUFFICIENT"
    assert payload["gkdim"] == 3 and payload["gkdim_defaulted"] is False
    assert len(payload["witness"]) == 3


def test_classify3d(files, capsys):
    code, out, _ = run(capsys, "classify3d", files["class5a"])
    assert code == 0
    assert "5a" in out


def test_classify3d_json(files, capsys):
    code, out, _ = run(capsys, "classify3d", files["class5e"], "--json")
    payload = json.loads(out)
    assert payload["label"] == "5e"
    assert payload["parameters"]["a"] == "1"


def test_pbw_check(files, capsys):
    code, out, _ = run(capsys, "pbw-check", files["diffD"], "--json")
    payload = json.loads(out)
    assert payload["all_pass"] is True
    assert payload["triples"][0]["status"] == "PASS"


def test_calculus_report(files, capsys):
    code, out, _ = run(capsys, "calculus", files["reference3"], "--max-degree", "3",
                       "--verify-integrability", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    calculus = payload["calculus"]
    assert calculus["d_squared_zero"] is True
    assert calculus["connected_at_bound"] is True
    assert calculus["kernel_dimension"] == 1
    assert calculus["integral_form_normalization"] is True
    assert calculus["integrability"]["pass"] is True


def test_calculus_without_witness(files, capsys):
    code, out, _ = run(capsys, "calculus", files["class5a"], "--max-degree", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "NOT_SMOOTH"
    assert payload["calculus"] is None


def test_diffusion_classify(files, capsys):
    code, out, _ = run(capsys, "diffusion-classify", files["diffD"], "--json")
    payload = json.loads(out)
    assert payload["labels"] == ["D"]
    assert payload["crosswalk"] == {"D": "1"}


def test_verify_identities_json(capsys):
    code, out, _ = run(capsys, "verify-identities", "--n-max", "3", "--samples", "4",
                       "--seed", "42", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pq_recurrences"]["pass"] is True
    assert all(rep["status"] == "PASS" for rep in payload["right_commutation"])
    assert all(rep["status"] == "DISCREPANT" for rep in payload["left_commutation"])
    assert payload["left_commutation"][0]["minimal_failing_n"] == 1
    assert payload["determinant_identities"]["pass"] is True


def test_verify_identities_deterministic(capsys):
    args = ["verify-identities", "--n-max", "3", "--samples", "5", "--seed", "42", "--json"]
    code1 = main(args)
    out1 = capsys.readouterr().out
    code2 = main(args)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1.encode() == out2.encode()


def test_calculus_deterministic_without_seed_flag(files, capsys):
    args = ["calculus", files["reference3"], "--max-degree", "3",
            "--verify-integrability", "2", "--json"]
    main(list(args))
    out1 = capsys.readouterr().out
    main(list(args))
    out2 = capsys.readouterr().out
    assert out1.encode() == out2.encode()


def test_kind_mismatch_is_an_error(files, capsys):
    code, _, err = run(capsys, "smooth", files["diffD"])
    assert code == 1
    assert "kind" in err


def test_missing_file_is_an_error(capsys):
    code, _, err = run(capsys, "smooth", "/nonexistent/path.alg")
    assert code == 1
    assert "error:" in err


def test_unknown_flag_exits_nonzero(files):
    with pytest.raises(SystemExit) as exc:
        main(["smooth", files["reference3"], "--frobnicate"])
    assert exc.value.code == 2


def test_parse_error_has_position(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("kind: skew\nn: 2\nx1*x2 - 1/0*x2*x1 = 0\n")
    code, _, err = run(capsys, "smooth", str(bad))
    assert code == 1
    assert "line 3" in err
