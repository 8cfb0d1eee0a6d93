"""Tests for the command-line interface.

Each subcommand is driven through ``main(argv)``; outputs are parsed
back from captured stdout and written files.  Exit codes follow the
contract: 0 success, 1 campaign failure, 2 input or solver error.
"""

import json

import pytest

from expansion_lab.cli import main
from expansion_lab.exactla import IntMatrix, parse_matrix
from expansion_lab.harness import CampaignReport


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return write


def run_json(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, json.loads(out)


# ---------------------------------------------------------------------------
# span-check
# ---------------------------------------------------------------------------


def test_span_check_spanned(files, capsys):
    matrix = files("g.mat", "2 2\n1 0\n0 1\n")
    rc, data = run_json(capsys, ["span-check", matrix])
    assert rc == 0
    assert data["spanned"] is True
    assert data["witness_subset"] is None
    assert data["witness_vector"] is None
    assert data["subsets_checked"] == 3


def test_span_check_unspanned_reports_witness(files, capsys):
    matrix = files("g.mat", "1 2\n2 1\n")
    rc, data = run_json(capsys, ["span-check", matrix])
    assert rc == 0
    assert data["spanned"] is False
    assert data["witness_subset"] == [1]
    assert data["witness_vector"] == [1]


def test_span_check_max_ambient_flag(files, capsys):
    matrix = files("g.mat", "1 2\n2 1\n")
    rc = main(["span-check", matrix, "--max-ambient", "1"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "cap" in err or "ambient" in err


# ---------------------------------------------------------------------------
# xi / xi-global / xi-zq
# ---------------------------------------------------------------------------


def test_xi_rational(files, capsys):
    matrix = files("a.mat", "1 2\n1 2\n")
    target = files("t.vec", "1\n")
    rc, data = run_json(capsys, ["xi", matrix, "--ring", "q", "--target", target])
    assert rc == 0
    assert data == {
        "value": "1/2",
        "target": ["1"],
        "witness": ["0", "1/2"],
        "ring": "Q",
        "solver": "lp",
        "exact": True,
    }


def test_xi_face_oracle_solver_flag(files, capsys):
    matrix = files("a.mat", "1 2\n1 2\n")
    target = files("t.vec", "1\n")
    rc, data = run_json(
        capsys,
        ["xi", matrix, "--ring", "q", "--solver", "face-oracle", "--target", target],
    )
    assert rc == 0
    assert data["value"] == "1/2"
    assert data["solver"] == "face_oracle"


def test_xi_integer(files, capsys):
    matrix = files("a.mat", "1 2\n1 2\n")
    target = files("t.vec", "1\n")
    rc, data = run_json(capsys, ["xi", matrix, "--ring", "z", "--target", target])
    assert rc == 0
    assert data["value"] == "1"
    assert data["witness"] == ["1", "0"]
    assert data["ring"] == "Z"


def test_xi_mod_q(files, capsys):
    matrix = files("a.mat", "1 2\n1 1\n")
    target = files("t.vec", "1\n")
    rc, data = run_json(
        capsys, ["xi", matrix, "--ring", "zq", "--modulus", "2", "--target", target]
    )
    assert rc == 0
    assert data["value"] == "1"
    assert data["ring"] == "Zq(2)"
    assert data["solver"] == "coset_bruteforce"


def test_xi_zq_without_modulus_is_an_input_error(files, capsys):
    matrix = files("a.mat", "1 2\n1 1\n")
    target = files("t.vec", "1\n")
    rc = main(["xi", matrix, "--ring", "zq", "--target", target])
    assert rc == 2
    assert "modulus" in capsys.readouterr().err


def test_xi_global_rational(files, capsys):
    matrix = files("a.mat", "1 2\n1 -1\n")
    rc, data = run_json(capsys, ["xi-global", matrix, "--ring", "q"])
    assert rc == 0
    assert data["value"] == "1"
    assert data["exact"] is True


def test_xi_global_integer_unspanned_is_inexact(files, capsys):
    matrix = files("a.mat", "1 2\n1 2\n")
    rc, data = run_json(capsys, ["xi-global", matrix, "--ring", "z"])
    assert rc == 0
    assert data["ring"] == "Z"
    assert data["exact"] is False


def test_xi_zq_global(files, capsys):
    matrix = files("a.mat", "1 2\n1 -1\n")
    rc, data = run_json(capsys, ["xi-zq", matrix, "--modulus", "2"])
    assert rc == 0
    assert data == {
        "value": "1",
        "attaining_target": ["1"],
        "ring": "Zq(2)",
        "exact": True,
    }


def test_xi_out_flag_writes_file(files, capsys, tmp_path):
    matrix = files("a.mat", "1 2\n1 2\n")
    target = files("t.vec", "1\n")
    out = tmp_path / "result.json"
    rc = main(["xi", matrix, "--target", target, "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["value"] == "1/2"


# ---------------------------------------------------------------------------
# build-complex
# ---------------------------------------------------------------------------


def test_build_complex_from_graph(files, tmp_path, capsys):
    graph = files("g.graph", "3 2\n1 2\n2 3\n")
    out_dir = tmp_path / "out"
    rc = main(["build-complex", "--graph", graph, "--out-dir", str(out_dir)])
    assert rc == 0
    d0 = parse_matrix((out_dir / "d0.mat").read_text())
    assert d0 == IntMatrix.from_rows([[1, -1, 0], [0, 1, -1]])
    d1 = parse_matrix((out_dir / "d1.mat").read_text())
    assert d1.rows == 0 and d1.cols == 2
    labels = json.loads((out_dir / "labels.json").read_text())
    assert labels["vertices"] == ["v1", "v2", "v3"]
    assert labels["faces"] == []


def test_build_complex_from_presentation(files, tmp_path, capsys):
    pres = files("p.pres", "gens: a b; rel: a b a^-1 b^-1\n")
    out_dir = tmp_path / "out"
    rc = main(["build-complex", "--presentation", pres, "--out-dir", str(out_dir)])
    assert rc == 0
    d1 = parse_matrix((out_dir / "d1.mat").read_text())
    assert d1 == IntMatrix.from_rows([[0, 0]])
    labels = json.loads((out_dir / "labels.json").read_text())
    assert labels["edges"] == ["a", "b"]
    assert labels["faces"] == ["r1"]


def test_build_complex_bad_presentation_is_an_input_error(files, capsys):
    pres = files("p.pres", "gens: a; rel: a c\n")
    rc = main(["build-complex", "--presentation", pres, "--out-dir", "."])
    assert rc == 2
    assert "c" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_equality_json_report(capsys):
    rc = main(["verify", "equality", "--seed", "5", "--count", "2"])
    captured = capsys.readouterr()
    assert rc == 0
    report = json.loads(captured.out)
    assert report["campaign"] == "equality"
    assert report["ok"] is True
    assert "pass" in captured.err


def test_verify_cw_ignores_count(capsys):
    rc = main(["verify", "cw"])
    captured = capsys.readouterr()
    assert rc == 0
    report = json.loads(captured.out)
    assert report["totals"]["skipped"] == 2


def test_verify_modq_primes_flag(capsys):
    rc = main(["verify", "modq", "--count", "1", "--primes", "2"])
    captured = capsys.readouterr()
    assert rc == 0
    report = json.loads(captured.out)
    assert all(e["instance"].get("q", 2) == 2 for e in report["entries"])


def test_verify_presentations_n_range_flag(capsys):
    rc = main(["verify", "presentations", "--n-range", "3:4"])
    captured = capsys.readouterr()
    assert rc == 0
    report = json.loads(captured.out)
    kinds = {e["instance"]["kind"] for e in report["entries"]}
    assert kinds == {"braid n=3", "steinberg n=3"}


def test_verify_lemma_oracle_runs(capsys):
    rc = main(["verify", "lemma-oracle", "--count", "3"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["totals"]["fail"] == 0


def test_verify_csv_out_file(tmp_path, capsys):
    out = tmp_path / "report.csv"
    rc = main(
        ["verify", "equality", "--count", "1", "--format", "csv", "--out", str(out)]
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("campaign,index,verdict")
    assert len(lines) >= 5


def test_verify_failing_campaign_exits_one(monkeypatch, capsys):
    def fake_campaign(seed, count):
        report = CampaignReport("equality", seed, {"count": count})
        report.add({"kind": "forced"}, "fail", "forced failure", {})
        return report

    monkeypatch.setattr("expansion_lab.cli.campaign_equality", fake_campaign)
    rc = main(["verify", "equality", "--count", "1"])
    assert rc == 1
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is False


def test_verify_skips_alone_do_not_fail_the_run(monkeypatch, capsys):
    def fake_campaign(seed, count):
        report = CampaignReport("equality", seed, {"count": count})
        report.add({"kind": "capped"}, "skipped", "cap hit", {})
        return report

    monkeypatch.setattr("expansion_lab.cli.campaign_equality", fake_campaign)
    rc = main(["verify", "equality", "--count", "1"])
    assert rc == 0


# ---------------------------------------------------------------------------
# Error paths.
# ---------------------------------------------------------------------------


def test_missing_file_is_an_input_error(capsys):
    rc = main(["xi-global", "/nonexistent/matrix.mat"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_malformed_matrix_is_an_input_error(files, capsys):
    matrix = files("bad.mat", "2 2\n1 x\n0 1\n")
    rc = main(["span-check", matrix])
    assert rc == 2


def test_zero_target_is_a_solver_error(files, capsys):
    matrix = files("a.mat", "1 2\n1 2\n")
    target = files("t.vec", "0\n")
    rc = main(["xi", matrix, "--target", target])
    assert rc == 2
    assert "zero target" in capsys.readouterr().err


def test_non_prime_modulus_is_an_input_error(files, capsys):
    matrix = files("a.mat", "1 2\n1 1\n")
    target = files("t.vec", "1\n")
    rc = main(["xi", matrix, "--ring", "zq", "--modulus", "4", "--target", target])
    assert rc == 2
    assert "prime" in capsys.readouterr().err
