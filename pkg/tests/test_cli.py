import json
from fractions import Fraction

import pytest

from chronoscale import cli, example_suite
from chronoscale.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VIOLATION,
    ConfigError,
    ReportRow,
    parse_report,
    render_report,
    run_examples,
    run_sweep,
    run_verify,
)

IDENTITY = {"scale": [{"integers": [0, 10]}], "function": "identity", "checks": ["young"]}


def write(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_verify_identity_exhaustive():
    status, rows = run_verify(IDENTITY)
    assert status == EXIT_OK and len(rows) == 121
    for r in rows:
        a, b = (int(kv.split("=")[1]) for kv in r.inputs.split(";"))
        assert r.middle == Fraction((a - b) * (a - b - 1), 2)
        assert (r.equality != "none") == (b in (a - 1, a))


def test_perturbed_middle_is_a_violation(monkeypatch):
    monkeypatch.setattr(cli, "_MIDDLE_PERTURBATION", -1)
    status, rows = run_verify(IDENTITY)
    assert status == EXIT_VIOLATION
    assert any(not r.holds for r in rows)


def test_off_grid_value_is_an_input_error(tmp_path, capsys):
    doc = dict(IDENTITY, checks=[{"type": "young", "a": [3], "b": ["1/2"]}])
    status, rows = run_verify(doc)
    assert status == EXIT_INPUT and rows[0].is_error
    assert cli.main(["verify", "--config", write(tmp_path, doc)]) == EXIT_INPUT
    assert "off grid" in capsys.readouterr().err


@pytest.mark.parametrize(
    "doc",
    [
        {"function": "identity"},
        dict(IDENTITY, checks=["nonsense"]),
        dict(IDENTITY, function="cosh 2"),
        dict(IDENTITY, format="xml"),
        dict(IDENTITY, function="power 2", scale=[{"integers": [-2, 2]}]),
    ],
)
def test_malformed_configs_exit_2(tmp_path, doc):
    with pytest.raises(ConfigError):
        run_verify(doc)
    assert cli.main(["verify", "--config", write(tmp_path, doc)]) == EXIT_INPUT


def test_missing_config_file_and_bad_flags():
    assert cli.main(["verify", "--config", "/nonexistent/run.json"]) == EXIT_INPUT
    assert cli.main(["frobnicate"]) == EXIT_INPUT


def geometric_sweep(grid):
    return {
        "scale": [{"integers": [0, 1]}],
        "function": "identity",
        "checks": [{"type": "examples", "name": "GeometricB", "params": {"B": 2, "range": [0, 12]}}],
        "grid": grid,
    }


def test_sweep_geometric_example():
    status, rows = run_sweep(geometric_sweep({"checks.0.params.B": [2, 3]}))
    assert status == EXIT_OK
    assert len(rows) == 2 * 13 * 14 // 2
    assert rows[0].inputs.startswith("checks.0.params.B=2;")
    assert rows[-1].inputs.startswith("checks.0.params.B=3;")
    for r in rows:
        fields = dict(kv.split("=") for kv in r.inputs.split(";")[1:])
        a, alpha = int(fields["a"]), int(fields["alpha"])
        assert r.holds
        assert (r.equality == "both") == (alpha in (a - 1, a))


def test_empty_grid_gives_empty_report():
    assert run_sweep(geometric_sweep({})) == (EXIT_OK, [])
    assert run_sweep(geometric_sweep({"checks.0.params.B": []})) == (EXIT_OK, [])


def test_sweep_order_does_not_depend_on_jobs():
    doc = geometric_sweep({"checks.0.params.B": [2, "3/2"]})
    status, rows = run_sweep(doc, jobs=1)
    assert (status, rows) == run_sweep(doc, jobs=6)
    assert rows[-1].inputs.startswith("checks.0.params.B=3/2;")


def test_examples_match_the_discrete_module():
    status, rows = run_examples()
    assert status == EXIT_OK
    expected = []
    for entry in cli.DEFAULT_EXAMPLES:
        expected.extend(example_suite(entry["name"], entry["params"]))
    assert len(rows) == len(expected)
    for row, ex in zip(rows, expected):
        assert (row.lower, row.middle, row.upper) == (ex.lhs, ex.mid, ex.rhs)
        assert (row.equality == "both") == ex.equality


def test_csv_layout_and_rational_fields():
    row = ReportRow("examples:BinomialK", "k=2;alpha=3;a=5", 3, Fraction(9, 2), 6, True, "none", "exact")
    text = render_report([row], "csv").decode()
    lines = text.splitlines()
    assert lines == ["check,inputs,lower,middle,upper,holds,equality,regime",
                     "examples:BinomialK,k=2;alpha=3;a=5,3,9/2,6,true,none,exact"]


def test_json_round_trip():
    _, rows = run_verify(dict(IDENTITY, checks=["young", {"type": "sandwich", "a": [2, 5], "a_hat": [0],
                                                          "b": [1, 7], "b_hat": [0, 3], "variant": "all"}]))
    assert parse_report(render_report(rows, "json")) == rows
    _, approx = run_verify({"scale": [{"interval": [0, 2]}], "function": "power 2",
                            "checks": [{"type": "young", "a": ["1/2", 1], "b": ["1/3", 1]}]})
    assert parse_report(render_report(approx, "json")) == approx


def test_table_is_aligned():
    _, rows = run_verify(dict(IDENTITY, checks=[{"type": "young", "a": [0, 10], "b": [0, 10]}]))
    lines = render_report(rows, "table").decode().splitlines()
    assert len(lines) == 5
    col = lines[0].index("regime")
    assert all(line[col:] == "exact" for line in lines[1:])


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render_report([], "xml")


def test_cli_output_is_deterministic(tmp_path, capsysbinary, monkeypatch):
    path = write(tmp_path, IDENTITY)
    outputs = []
    for jobs in ("1", "8", "3"):
        assert cli.main(["verify", "--config", path, "--jobs", jobs]) == EXIT_OK
        outputs.append(capsysbinary.readouterr().out)
    monkeypatch.setenv("CHRONOSCALE_JOBS", "4")
    assert cli.main(["verify", "--config", path]) == EXIT_OK
    outputs.append(capsysbinary.readouterr().out)
    assert len(set(outputs)) == 1
    assert outputs[0].count(b"\n") == 122


def test_bad_jobs_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CHRONOSCALE_JOBS", "many")
    assert cli.main(["verify", "--config", write(tmp_path, IDENTITY)]) == EXIT_INPUT


def test_out_and_report_subcommand(tmp_path):
    cfg = write(tmp_path, IDENTITY)
    saved = tmp_path / "rows.json"
    assert cli.main(["verify", "--config", cfg, "--format", "json", "--out", str(saved)]) == EXIT_OK
    csv_out = tmp_path / "rows.csv"
    assert cli.main(["report", "--config", str(saved), "--format", "csv", "--out", str(csv_out)]) == EXIT_OK
    direct = tmp_path / "direct.csv"
    cli.main(["verify", "--config", cfg, "--out", str(direct)])
    assert csv_out.read_bytes() == direct.read_bytes()


def test_piecewise_check_from_config():
    doc = {
        "scale": [{"integers": [0, 6]}],
        "function": {"piecewise": {"knots": [0, 3, 6], "pieces": ["identity", "affine 2 -3"]}},
        "checks": ["piecewise"],
    }
    status, rows = run_verify(doc)
    assert status == EXIT_OK and rows
    assert all(r.check == "piecewise" for r in rows)
