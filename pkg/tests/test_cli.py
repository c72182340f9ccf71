import json
from pathlib import Path

import pytest

from ntbounds.cli import (
    EXIT_DOMAIN,
    EXIT_PARSE,
    EXIT_RESOURCE,
    main,
    parse_height_expr,
)
from ntbounds.rounding import Direction, eval_const

GOLDEN = Path(__file__).parent / "golden"


def run_to_bytes(tmp_path, args, name="out.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    assert code == 0, args
    return out.read_bytes()


# -- height expression parser -------------------------------------------------


def test_parse_height_expressions():
    import math
    cases = {
        "0": 0.0,
        "1/3": 1 / 3,
        "1/3log2": math.log(2) / 3,
        "1/3*log(2)": math.log(2) / 3,
        "log(2)/3": math.log(2) / 3,
        "log 2": math.log(2),
        "log(9/8)": math.log(9 / 8),
        "1/2 + 2log(3)": 0.5 + 2 * math.log(3),
    }
    for text, want in cases.items():
        got = float(eval_const(parse_height_expr(text), Direction.NEAREST, 64).exact())
        assert abs(got - want) < 1e-12, text


def test_parse_height_rejects_garbage():
    from ntbounds.cli import InputParseError
    for bad in ("0.5", "log(-2)x", "ln(2)", "", "log"):
        with pytest.raises(Exception):
            parse_height_expr(bad)


# -- golden files --------------------------------------------------------------


GOLDEN_COMMANDS = {
    "constants_d.json": ["constants", "--d", "--hw", "1/3log2"],
    "family_audit_f2.json": ["family-audit", "--family", "f2", "--n-range", "1:3",
                             "--digits", "30"],
    "search_f1_n1.json": ["search", "--family", "f1", "--n", "1", "--curve", "f1",
                          "--height-bound", "25", "--tol", "1e-10"],
    "census_z_2_1.json": ["census", "--ring", "z", "--N", "2", "--r", "1",
                          "--max-degree", "40", "--torsion", "10"],
    "exponents_point_count.json": ["exponents", "--theorem", "point-count",
                                   "--case", "weak-transverse-rank1", "--N", "3"],
    "bound_square.json": ["bound", "--branch", "square", "--deg-c", "18",
                          "--h-c", "log(18)", "--hw", "1/3log2"],
    "bound_power.json": ["bound", "--branch", "power", "--N", "3", "--deg-c", "2",
                         "--h-c", "1/2", "--hw", "0"],
}


@pytest.mark.parametrize("golden_name", sorted(GOLDEN_COMMANDS))
def test_cli_matches_golden(tmp_path, capsys, golden_name):
    blob = run_to_bytes(tmp_path, GOLDEN_COMMANDS[golden_name])
    assert blob == (GOLDEN / golden_name).read_bytes()
    payload = json.loads(blob)
    assert payload["schema_version"] == 1


@pytest.mark.parametrize("golden_name", sorted(GOLDEN_COMMANDS))
def test_cli_reports_reproduce_byte_exactly(tmp_path, capsys, golden_name):
    args = GOLDEN_COMMANDS[golden_name]
    first = run_to_bytes(tmp_path, args, "a.json")
    second = run_to_bytes(tmp_path, args, "b.json")
    assert first == second


def test_search_report_identical_across_shard_counts(tmp_path, capsys):
    base = ["search", "--family", "f1", "--n", "1", "--curve", "f1",
            "--height-bound", "25", "--tol", "1e-10"]
    one = run_to_bytes(tmp_path, [*base, "--shards", "1"], "s1.json")
    eight = run_to_bytes(tmp_path, [*base, "--shards", "8"], "s8.json")
    assert one == eight
    assert one == (GOLDEN / "search_f1_n1.json").read_bytes()


def test_search_metrics_out_is_separate(tmp_path, capsys):
    out = tmp_path / "rep.json"
    metrics = tmp_path / "metrics.json"
    code = main(["search", "--family", "f2", "--n", "1", "--curve", "f2",
                 "--height-bound", "4", "--tol", "1e-10",
                 "--out", str(out), "--metrics-out", str(metrics)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert "wall_clock" not in out.read_text()
    assert "shards" not in payload
    stats = json.loads(metrics.read_text())
    assert set(stats) == {"wall_clock_seconds", "pairs_per_second", "shards"}


def test_search_accepts_curve_file(tmp_path, capsys):
    from ntbounds.presets import preset_curve_json
    curve_file = tmp_path / "curve.json"
    curve_file.write_text(preset_curve_json("f1"))
    blob = run_to_bytes(tmp_path, ["search", "--family", "f1", "--n", "1",
                                   "--curve", str(curve_file),
                                   "--height-bound", "25", "--tol", "1e-10"])
    assert blob == (GOLDEN / "search_f1_n1.json").read_bytes()


# -- exit codes -----------------------------------------------------------------


def test_exit_code_parse_error_missing_curve(tmp_path, capsys):
    code = main(["search", "--family", "f1", "--n", "1", "--curve",
                 str(tmp_path / "nope.json"), "--height-bound", "1"])
    assert code == EXIT_PARSE


def test_exit_code_parse_error_malformed_curve(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{this is not json")
    code = main(["search", "--family", "f1", "--n", "1", "--curve", str(bad),
                 "--height-bound", "1"])
    assert code == EXIT_PARSE
    bad.write_text('{"a": "1"}')
    assert main(["search", "--family", "f1", "--n", "1", "--curve", str(bad),
                 "--height-bound", "1"]) == EXIT_PARSE


def test_exit_code_domain_error_singular_curve(tmp_path, capsys):
    bad = tmp_path / "singular.json"
    bad.write_text('{"a": "0", "b": "0", "generator": ["1", "1"]}')
    code = main(["search", "--family", "f1", "--n", "1", "--curve", str(bad),
                 "--height-bound", "1"])
    assert code in (EXIT_PARSE, EXIT_DOMAIN)
    code = main(["exponents", "--theorem", "census-structure", "--N", "4", "--r", "2"])
    assert code == EXIT_DOMAIN


def test_exit_code_resource_guard(capsys):
    code = main(["census", "--ring", "z", "--N", "3", "--r", "2",
                 "--max-degree", "50", "--torsion", "2", "--ceiling", "10"])
    assert code == EXIT_RESOURCE


def test_precision_env_variable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NTBOUNDS_PRECISION", "128")
    blob = run_to_bytes(tmp_path, ["constants", "--d", "--hw", "0"])
    payload = json.loads(blob)
    assert payload["precision_bits"] == 128
    assert payload["values"]["d1"]["precision_bits"] == 128
    monkeypatch.setenv("NTBOUNDS_PRECISION", "nope")
    assert main(["constants", "--d", "--hw", "0"]) == EXIT_PARSE


def test_constants_from_curve_preset(tmp_path, capsys):
    via_expr = run_to_bytes(tmp_path, ["constants", "--d", "--hw", "1/3log2"], "e.json")
    via_curve = run_to_bytes(tmp_path, ["constants", "--d", "--curve", "f2"], "c.json")
    assert via_expr == via_curve


def test_family_audit_f1_closed_form_only(tmp_path, capsys):
    blob = run_to_bytes(tmp_path, ["family-audit", "--family", "f1", "--n", "4"])
    payload = json.loads(blob)
    entry = payload["entries"][0]
    assert entry["closed_form_coefficient"] == "8.253e38"
    assert entry["verdict"] == "closed-form-only"
    assert entry["degree_upper"] == 45
