import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from haarvol import cli
from haarvol.linalg import conj_transpose


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def doc(*argv):
    code, out, _ = call(*argv)
    return code, json.loads(out)


def test_volume_unitary():
    code, d = doc("volume", "--group", "unitary", "--n", "2")
    assert code == 0 and d["status"] == "ok" and d["schema"] == 1
    assert d["result"]["linear"] == pytest.approx(4 * math.pi**3, rel=1e-12)
    assert d["command"] == "volume" and d["paper_ref"]


@pytest.mark.parametrize("group", sorted(cli._VOLUME_FORMULAS))
def test_every_group(group):
    code, d = doc("volume", "--group", group, "--n", "3", "--p", "2", "--m", "1")
    assert code == 0 and d["result"]["sign"] == 1


def test_selberg_default_and_variants():
    assert doc("selberg", "--N", "2", "--alpha", "1", "--beta", "1", "--gamma", "1")[1]["result"][
        "linear"
    ] == pytest.approx(1 / 6)
    cases = [
        (["--variant", "aomoto", "--K", "2"], 1 / 6),
        (["--variant", "laguerre"], 2.0),
        (["--variant", "hermite", "--lambda", "1"], math.pi),
        (["--variant", "simplex"], 1 / 2),
        (["--variant", "fixed-trace"], 1 / 2),
    ]
    for extra, expected in cases:
        code, d = doc("selberg", "--N", "2", "--alpha", "1", "--beta", "1", "--gamma", "1", *extra)
        assert code == 0 and d["result"]["linear"] == pytest.approx(expected, rel=1e-12)


def test_ball_volume_quadrature():
    code, d = doc("ball-volume", "--n", "1", "--eps", "1.4142135", "--method", "quadrature")
    assert code == 0 and abs(d["result"]["value"] - 0.5) < 1e-6


def test_ball_volume_mc_echoes_default_seed():
    code, d = doc("ball-volume", "--n", "2", "--eps", "1", "--method", "mc", "--samples", "5000")
    assert code == 0 and d["result"]["seed"] == 0x5EEDC0DE == d["parameters"]["seed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        [],
        ["volume", "--group", "unitary"],
        ["volume", "--group", "stiefel", "--n", "3"],
        ["selberg", "--N", "2", "--alpha", "1", "--beta", "1", "--gamma", "1", "--variant", "aomoto"],
        ["estimate", "--target", "ball", "--n", "2", "--samples", "2000", "--seed", "1"],
        ["sample", "--kind", "haar-unitary", "--n", "2", "--count", "1", "--seed", "-5"],
    ],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and json.loads(out)["status"] == "usage_error"
    assert "haarvol volume --group" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["volume", "--group", "unitary", "--n", "0"],
        ["ball-volume", "--n", "2", "--eps", "9"],
        ["selberg", "--N", "2", "--alpha", "-1", "--beta", "1", "--gamma", "1"],
    ],
)
def test_domain_errors(argv):
    code, out, _ = call(*argv)
    assert code == 1 and json.loads(out)["status"] == "domain_error"


def test_convergence_error_exit_code():
    code, out, _ = call("ball-volume", "--n", "1", "--eps", "0.3")
    d = json.loads(out)
    assert code == 2 and d["status"] == "convergence_error"
    assert d["result"]["partial_value"] is not None


def _sample(fmt, count=3, extra=()):
    return call("sample", "--kind", "haar-unitary", "--n", "3", "--count", str(count), "--seed", "9", "--format", fmt, *extra)


def test_sample_json_and_csv_agree():
    _, out_json, _ = _sample("json")
    payload = json.dumps(json.loads(out_json)["result"]["matrices"])
    a, kind_a = cli.read_matrices(payload, "json")
    _, out_csv, _ = _sample("csv")
    b, kind_b = cli.read_matrices(out_csv, "csv")
    assert kind_a == kind_b == "complex"
    assert np.array_equal(a, b) and a.shape == (3, 3, 3)
    assert np.allclose(conj_transpose(a) @ a, np.eye(3), atol=1e-12)


def test_sample_single_matrix_is_an_object():
    _, out, _ = _sample("json", count=1)
    m = json.loads(out)["result"]["matrices"]
    assert set(m) == {"n", "kind", "data"} and len(m["data"]) == 9


def test_sample_to_file(tmp_path):
    path = tmp_path / "m.csv"
    code, out, _ = _sample("csv", extra=("--out", str(path)))
    d = json.loads(out)
    assert code == 0 and d["result"]["path"] == str(path)
    stack, kind = cli.read_matrices(path.read_text(), "csv")
    assert stack.shape == (3, 3, 3)


def test_real_samples_roundtrip():
    text = cli.write_matrices(np.arange(8.0).reshape(2, 2, 2), "real", "csv")
    stack, kind = cli.read_matrices(text, "csv")
    assert kind == "real" and stack.dtype == float and np.array_equal(stack, np.arange(8.0).reshape(2, 2, 2))


def test_seeded_output_is_deterministic():
    argv = ("estimate", "--target", "det", "--n", "3", "--samples", "20000", "--seed", "4")
    assert call(*argv)[1] == call(*argv)[1]


def test_workers_do_not_change_output(monkeypatch):
    argv = ["estimate", "--target", "trace-square", "--n", "3", "--samples", "20000", "--seed", "4"]
    one = call(*argv, "--workers", "1")[1]
    monkeypatch.setenv("HAARVOL_WORKERS", "6")
    assert call(*argv)[1] == one
    monkeypatch.setenv("HAARVOL_WORKERS", "many")
    assert call(*argv)[0] == 1


def test_estimate_targets():
    base = ("--n", "2", "--samples", "20000", "--seed", "3")
    _, d = doc("estimate", "--target", "det", *base, "--ensemble", "hs-density")
    assert abs(d["result"]["mean"] - 0.1) < 5 * d["result"]["std_error"]
    _, d = doc("estimate", "--target", "ball", "--eps", "1.4142135623730951", *base)
    assert 0.05 < d["result"]["mean"] < 0.3
    _, d = doc("estimate", "--target", "eigenangle-hist", *base)
    assert sum(d["result"]["counts"]) == 20000


def test_histogram_csv_matches_json():
    base = ("estimate", "--target", "eigenangle-hist", "--n", "3", "--samples", "5000", "--seed", "2")
    counts = doc(*base)[1]["result"]["counts"]
    _, out, _ = call(*base, "--format", "csv")
    rows = out.strip().splitlines()
    assert rows[0] == "left,right,count"
    assert [int(r.split(",")[2]) for r in rows[1:]] == counts


def test_verify_single_suite():
    code, d = doc("verify", "--suite", "selberg", "--seed", "7", "--samples", "20000")
    assert code == 0 and d["result"]["all_passed"] and d["result"]["n_failed"] == 0


def test_verify_failure_exit_code(monkeypatch):
    from haarvol import verify

    bad = lambda *a, **k: [verify.Check("forced", False, 1.0, 0.0, "abs 0")]
    monkeypatch.setattr(verify, "run_suite", bad)
    code, d = doc("verify", "--suite", "ball")
    assert code == 3 and not d["result"]["all_passed"]


def test_non_finite_values_become_null():
    assert cli._clean({"a": float("inf"), "b": [np.float64("nan"), np.int64(3)]}) == {"a": None, "b": [None, 3]}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "haarvol", "volume", "--group", "sphere", "--n", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["result"]["linear"] == pytest.approx(2 * math.pi)
