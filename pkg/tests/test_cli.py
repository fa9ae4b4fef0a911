import json

import numpy as np
import pytest

from hessgeo.cli import (
    GEOMETRY_NAMES,
    eval_tensor,
    main,
    run_check,
)


def test_list_command(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in GEOMETRY_NAMES:
        assert name in out
    assert "cmap" in out


def test_check_pass_exit_code(capsys):
    code = main(["check", "orthant2", "--suite", "cone", "--samples", "10"])
    out = capsys.readouterr().out
    assert code == 0
    assert "overall: PASS" in out
    assert "[PASS]" in out


def test_check_fail_exit_code(capsys):
    code = main(
        ["check", "noncone_counterexample", "--suite", "rmap", "--samples", "10"]
    )
    out = capsys.readouterr().out
    assert code == 1
    assert "[FAIL] kahler_closed" in out
    assert "[PASS] noncone_exterior_value" in out


def test_unknown_geometry_exit_code(capsys):
    assert main(["check", "nope"]) == 2
    assert "error:" in capsys.readouterr().err


def test_inapplicable_suite_exit_code(capsys):
    assert main(["check", "sk_flat", "--suite", "cone"]) == 2


def test_json_report_shape(capsys):
    code = main(
        ["check", "orthant2", "--suite", "selfsimilar", "--samples", "10", "--json"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["geometry"] == "orthant2"
    assert payload["pass"] is True
    ids = [e["check_id"] for e in payload["entries"]]
    assert ids == sorted(ids)
    for entry in payload["entries"]:
        assert set(entry) == {
            "check_id", "claim", "residual", "tolerance", "samples", "status", "pass",
        }


def test_report_bytes_deterministic():
    a = run_check("spd2", ["selfsimilar", "cone"], 10, 42).to_json()
    b = run_check("spd2", ["selfsimilar", "cone"], 10, 42).to_json()
    assert a.encode() == b.encode()


def test_seed_changes_samples_not_verdict():
    a = run_check("orthant2", ["cone"], 10, 1)
    b = run_check("orthant2", ["cone"], 10, 2)
    assert a.passed and b.passed
    assert a.to_json() != b.to_json()


def test_tol_override_can_force_failure():
    report = run_check(
        "orthant2", ["cone"], 10, 42, tol_overrides={"radiant_law": 1e-300}
    )
    assert not report.passed


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(
        [
            "check", "orthant2", "--suite", "cone", "--samples", "10",
            "--out", str(target),
        ]
    )
    assert code == 0
    capsys.readouterr()
    payload = json.loads(target.read_text())
    assert payload["geometry"] == "orthant2"


def test_config_file_geometry(tmp_path):
    config = {
        "name": "orthant_conical",
        "dim": 2,
        "potential": "1/(x1*x2)",
        "domain": ["x1", "x2"],
        "box": [[0.5, 2.0], [0.5, 2.0]],
        "field_affine": {"A": [[-1.0, 0.0], [0.0, -1.0]], "b": [0.0, 0.0]},
    }
    path = tmp_path / "geom.json"
    path.write_text(json.dumps(config))
    report = run_check(str(path), ["all"], 10, 42)
    assert report.passed
    ids = {e.check_id for e in report.entries}
    assert "selfsimilar_metric" in ids
    assert "conformal_omega_ck_flow" in ids


def test_eval_canonical_metric():
    M = eval_tensor("orthant2", "g", [1.0, 1.0])
    assert M == pytest.approx(np.eye(2))
    M = eval_tensor("orthant2", "gcon", [1.0, 1.0])
    assert M == pytest.approx(np.array([[2.0, 1.0], [1.0, 2.0]]))


def test_eval_lifted_tensors():
    w = eval_tensor("orthant2", "omega", [2.0, 1.0])
    assert w[:2, 2:] == pytest.approx(np.diag([0.25, 1.0]))
    I1 = eval_tensor("sk_flat", "I1", [0.2, 0.1])
    assert I1 @ I1 == pytest.approx(-np.eye(4))


def test_eval_cli_output(capsys):
    code = main(["eval", "orthant2", "g", "--at", "1,1", "--json"])
    assert code == 0
    assert json.loads(capsys.readouterr().out) == [[1.0, 0.0], [0.0, 1.0]]


def test_eval_bad_point(capsys):
    assert main(["eval", "orthant2", "g", "--at", "1,zz"]) == 2
    assert main(["eval", "orthant2", "g", "--at", "1,1,1,1,1"]) == 2


def test_fd_check_entries():
    report = run_check("orthant2", ["selfsimilar"], 8, 42, fd_check=True)
    ids = {e.check_id for e in report.entries}
    assert "selfsimilar_metric__fd_delta" in ids
    assert report.passed
