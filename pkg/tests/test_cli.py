"""Command-line contract: golden outputs, exit codes, determinism."""

import json

import pytest

from nilbch.cli import dispatch
from nilbch.series import SERIES_SCHEMA
from nilbch.weilcheck import REPORT_SCHEMA


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bch_text_golden(capsys):
    code, out, err = run(capsys, "bch", "--order", "2", "--source", "classical")
    assert code == 0
    assert out == "deg1: X + Y\ndeg2: 1/2*[X,Y]\n"
    assert err == ""


def test_logderiv_text_golden(capsys):
    code, out, _ = run(capsys, "logderiv", "--side", "left", "--order", "3")
    assert code == 0
    assert out == "p=0: 1\np=1: -1/2\np=2: 1/6\np=3: -1/24\n"


def test_compare_third_order_agrees(capsys):
    code, out, _ = run(
        capsys, "compare", "--what", "bch", "--order", "3",
        "--a", "paper7", "--b", "classical",
    )
    assert code == 0
    assert out == "0\n"


def test_compare_fourth_order_diverges(capsys):
    code, out, _ = run(
        capsys, "compare", "--what", "bch", "--order", "4",
        "--a", "paper7", "--b", "classical",
    )
    assert code == 0
    assert out == (
        "-1/48*[X,[X,[X,Y]]] + 1/24*[X,[[X,Y],Y]] - 1/48*[[[X,Y],Y],Y]\n"
    )


def test_zassenhaus_text(capsys):
    code, out, _ = run(
        capsys, "zassenhaus", "--order", "3", "--source", "paper", "--form", "a"
    )
    assert code == 0
    assert out == "C2: -1/2*[X,Y]\nC3: 1/6*[X,[X,Y]] - 1/3*[[X,Y],Y]\n"


def test_hall_text(capsys):
    code, out, _ = run(capsys, "hall", "--gens", "2", "--degree", "4")
    assert code == 0
    assert out == "[X,[X,[X,Y]]]\n[X,[[X,Y],Y]]\n[[[X,Y],Y],Y]\n"


def test_check_single_identity_passes(capsys):
    code, out, _ = run(capsys, "check", "--id", "thm-7.1")
    assert code == 0
    assert "thm-7.1" in out and "PASS" in out
    assert out.endswith("passed 1/1\n")


def test_check_all_reports_failures(capsys):
    code, out, _ = run(capsys, "check", "--all")
    assert code == 1
    assert "thm-6.3b" in out and "FAIL" in out
    assert out.rstrip().endswith("passed 24/29")


def test_check_exit_codes_for_input_errors(capsys):
    code, _, err = run(capsys, "check", "--id", "no-such-*")
    assert code == 2 and "no identity matches" in err

    code, _, err = run(capsys, "check", "--id", "thm-7.4a", "--trunc", "3")
    assert code == 2 and "InsufficientModel" in err

    code, _, err = run(capsys, "check")
    assert code == 2 and "--id" in err


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "bch", "--order", "2", "--source", "wrong")[0] == 2
    assert run(capsys, "unknown-command")[0] == 2
    assert run(capsys, "bch", "--order", "nope", "--source", "classical")[0] == 2


def test_oracle_degree_cap_is_an_input_error(capsys):
    code, _, err = run(capsys, "bch", "--order", "9", "--source", "classical")
    assert code == 2
    assert "outside" in err


def test_paper_order_cap_is_an_input_error(capsys):
    code, _, err = run(capsys, "bch", "--order", "5", "--source", "paper7")
    assert code == 2


def test_json_outputs_validate(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    code, out, _ = run(
        capsys, "bch", "--order", "3", "--source", "paper8", "--format", "json"
    )
    assert code == 0
    jsonschema.validate(json.loads(out), SERIES_SCHEMA)

    code, out, _ = run(
        capsys, "zassenhaus", "--order", "4", "--source", "classical",
        "--format", "json",
    )
    assert code == 0
    jsonschema.validate(json.loads(out), SERIES_SCHEMA)

    code, out, _ = run(capsys, "check", "--all", "--format", "json")
    assert code == 1
    for report in json.loads(out):
        jsonschema.validate(report, REPORT_SCHEMA)


def test_json_reports_omit_elapsed_unless_asked(capsys):
    _, out, _ = run(capsys, "check", "--id", "thm-7.1", "--format", "json")
    assert "elapsed_ms" not in out
    _, out, _ = run(
        capsys, "check", "--id", "thm-7.1", "--format", "json", "--timings"
    )
    assert "elapsed_ms" in out


def test_output_determinism(capsys):
    argv = ("check", "--all", "--model", "matrix", "--format", "json")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_output_file(tmp_path, capsys):
    target = tmp_path / "series.json"
    code, out, _ = run(
        capsys, "bch", "--order", "2", "--source", "classical",
        "--format", "json", "--output", str(target),
    )
    assert code == 0 and out == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["kind"] == "bch"


def test_compare_zassenhaus_sources(capsys):
    code, out, _ = run(
        capsys, "compare", "--what", "zassenhaus", "--order", "3",
        "--a", "paper-b", "--b", "classical",
    )
    assert code == 0
    assert out == "-1/12*[X,[X,Y]] + 1/6*[[X,Y],Y]\n"
