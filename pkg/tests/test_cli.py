import json

import pytest

from diophiq.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_search_single_ring_expect_empty(capsys):
    code, rep = run_json(
        capsys, "search", "--d", "-3", "--bound", "16", "--size", "5", "--expect-empty"
    )
    assert code == 0
    assert rep["outcome"] == "ok"
    assert rep["schema"] == 1
    assert rep["constants"]["K"] == "4728"
    assert rep["payload"]["count"] == "0"


def test_search_reports_triples(capsys):
    code, rep = run_json(capsys, "search", "--d", "-1", "--bound", "8", "--size", "3")
    assert code == 0
    tuples = rep["payload"]["tuples"]
    assert any(t["elems"] == "1,0;3,0;8,0" for t in tuples)
    # round-trip: every printed tuple is accepted by verify
    for t in tuples:
        vcode, vrep = run_json(capsys, "verify", "--d", t["d"], "--elems", t["elems"])
        assert vcode == 0
        assert vrep["outcome"] == "ok"


def test_search_expect_empty_violated(capsys):
    code, rep = run_json(
        capsys, "search", "--d", "-1", "--bound", "4", "--size", "3", "--expect-empty"
    )
    assert code == 1
    assert rep["outcome"] == "violation"


def test_search_deterministic_output(capsys):
    code1, out1 = run_cli(capsys, "search", "--d", "-3", "--bound", "6", "--size", "3", "--format", "json")
    code2, out2 = run_cli(capsys, "search", "--d", "-3", "--bound", "6", "--size", "3", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_classical_quadruple(capsys):
    code, rep = run_json(capsys, "verify", "--d", "-1", "--elems", "1,0;3,0;8,0;120,0")
    assert code == 0
    assert rep["outcome"] == "ok"
    assert len(rep["payload"]["witnesses"]) == 6


def test_verify_violation_pair(capsys):
    code, rep = run_json(capsys, "verify", "--d", "-3", "--elems", "-2,0;2,0;2,4;-2,-4")
    assert code == 1
    assert rep["outcome"] == "violation"
    assert rep["payload"]["failing_pair"] == "2,3"


def test_verify_malformed_elems_is_usage_error(capsys):
    code = main(["verify", "--d", "-1", "--elems", "1,0;3,0"])
    assert code == 0
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--d", "-1", "--elems", "1;3"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_zero_element_usage(capsys):
    code, rep = run_json(capsys, "verify", "--d", "-1", "--elems", "0,0;3,0")
    assert code == 2
    assert rep["outcome"] == "error"


def test_chain_43_and_42(capsys):
    code, rep = run_json(capsys, "chain", "--m", "43")
    assert code == 0
    assert rep["outcome"] == "ok"
    assert rep["payload"]["contradiction_at"] == "43"
    assert rep["payload"]["lower_bounds_abs_sq"]["25"] == str(2**134)

    code42, rep42 = run_json(capsys, "chain", "--m", "42")
    assert code42 == 1
    assert rep42["outcome"] == "inapplicable"
    assert rep42["payload"]["contradiction_at"] == "none"


def test_gap_inapplicable_lists_failures(capsys):
    code, rep = run_json(capsys, "gap", "--d", "-1", "--elems", "1,0;2,0;3,0")
    assert code == 1
    assert rep["outcome"] == "inapplicable"
    failures = rep["payload"]["failing_hypotheses"]
    assert "|b| > 5" in failures
    assert "|c| > |b|^15" in failures


def test_extend_finds_120(capsys):
    code, rep = run_json(
        capsys, "extend", "--d", "-1", "--elems", "1,0;3,0;8,0", "--bound", "1000"
    )
    assert code == 0
    assert "120,0" in rep["payload"]["extensions"]
    assert rep["payload"]["regular_candidates"]["verified"] == ["120,0"]


def test_text_format_default(capsys):
    code, out = run_cli(capsys, "chain", "--m", "43")
    assert code == 0
    assert out.startswith("chain: ok")


def test_sweep_small_bound(capsys):
    code, rep = run_json(
        capsys, "search", "--sweep", "--bound", "1", "--size", "2", "--threads", "2"
    )
    # unit pairs exist ({-1, 1} and friends), so a size-2 sweep finds tuples
    assert code == 0
    assert int(rep["payload"]["rings_checked"]) > 600
    assert len(rep["payload"]["tuples"]) > 0


def test_cache_dir_flag(capsys, tmp_path):
    code, _ = run_json(
        capsys, "search", "--d", "-1", "--bound", "4", "--size", "3",
        "--cache-dir", str(tmp_path),
    )
    assert code == 0
    assert list(tmp_path.iterdir())
