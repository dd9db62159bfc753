import csv
import io
import json
import subprocess
import sys

import pytest

from lzkit.cli import CONFIG_SCHEMA, COMMANDS, ConfigError, execute, main, to_csv, validate_config

SWEEP_HEADER = "omega,mu_omega,lhs,rhs,ratio,theorem_id,power_exp,log_exp_0,log_exp_inf,loglog_exp_0,loglog_exp_inf,slope"

CONFIGS = {
    "norm": {"function": {"kind": "step", "values": [2, 1], "measures": [1, 2]}, "target": {"p": 2, "b": 1, "A": [1, 0]}},
    "rearrange": {"function": {"kind": "step", "values": [1, 3, 2], "measures": [1, 0.5, 2]}},
    "classify": {"source": {"p": 1, "b": 1, "A": [0, 0]}},
    "bound": {"source": {"p": 1, "b": 1}, "target": {"p": 2, "b": 2}, "spectrum": [[[-2], [2]]]},
    "verify": {
        "source": {"p": 1, "b": 1},
        "target": {"p": "inf", "b": "inf"},
        "function": {"kind": "family", "omega": 4},
        "family": {"kind": "random", "grid_points": 256},
    },
    "sweep": {
        "source": {"p": 1, "b": 1},
        "target": {"p": 2, "b": 2},
        "family": {"kind": "random", "grid_points": 256},
        "sweep": {"omegas": [2, 8, 32]},
    },
    "probe": {"source": {"p": 1, "b": 1}, "target": {"p": "inf", "b": "inf"}, "spectrum": [[[-1], [1]]], "probe": {"budget": 5, "grid_points": 128}},
    "besov-shift": {"source": {"p": 1, "b": 1}, "target": {"p": 2, "b": 2}, "besov": {"corollary": "C21", "sigma": 0, "gamma": 0}},
    "besov-verify": {
        "source": {"p": 1, "b": 1},
        "target": {"p": 2, "b": 2},
        "family": {"kind": "random", "grid_points": 256},
        "sweep": {"omegas": [2, 8]},
        "besov": {"corollary": "C21", "count": 2},
    },
}


def _run(tmp_path, cfg, *extra):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return main(["--config", str(path), "--quiet", *extra])


def test_every_command_has_a_config():
    assert set(CONFIGS) == set(COMMANDS)


@pytest.mark.parametrize("cmd", COMMANDS)
def test_commands_succeed(cmd, tmp_path, capsys):
    assert _run(tmp_path, {"command": cmd, **CONFIGS[cmd]}) == 0
    out = capsys.readouterr().out
    assert out.endswith("\n") and "\r" not in out
    assert len(list(csv.reader(io.StringIO(out)))) >= 2


def test_classify_prints_f1(tmp_path, capsys):
    assert _run(tmp_path, {"command": "classify", **CONFIGS["classify"]}) == 0
    assert capsys.readouterr().out == "class,rho\nF1,1\n"


def test_bound_q_greater_than_p_exits_2(tmp_path, capsys):
    cfg = {"command": "bound", "source": {"p": 3, "b": 3}, "target": {"p": 2, "b": 2}, "mu": 1.0}
    assert _run(tmp_path, cfg) == 2
    assert "q <= p" in capsys.readouterr().err


def test_trivial_target_exits_2(tmp_path, capsys):
    cfg = {"command": "bound", "source": {"p": 1, "b": 1}, "target": {"p": "inf", "b": "inf", "A": [1, 0]}, "mu": 1.0}
    assert _run(tmp_path, cfg) == 2
    assert "nontrivial" in capsys.readouterr().err


def test_config_errors_exit_1(tmp_path, capsys):
    assert _run(tmp_path, {"command": "classify", "source": {"p": 1, "b": 1}, "colour": "red"}) == 1
    assert _run(tmp_path, {"command": "classify", "source": {"p": 1, "b": 1, "q": 2}}) == 1
    assert _run(tmp_path, {"command": "bound", "source": {"p": 1, "b": 1}}) == 1
    assert _run(tmp_path, {"source": {"p": 1, "b": 1}}) == 1
    assert main(["--config", str(tmp_path / "missing.json"), "--quiet"]) == 1
    (tmp_path / "bad.json").write_text("{not json")
    assert main(["--config", str(tmp_path / "bad.json"), "--quiet"]) == 1
    assert main(["classify", "--quiet"]) == 1
    assert main(["--quiet"]) == 1
    assert "config error" in capsys.readouterr().err


def test_schema_rejects_unknown_keys_everywhere():
    for cfg in ({"bogus": 1}, {"family": {"kind": "random", "size": 3}}, {"output": {"path": "x", "mode": "w"}}):
        with pytest.raises(ConfigError):
            validate_config(cfg)
    validate_config({"command": "sweep", **CONFIGS["sweep"], "seed": 3, "output": {"format": "json"}})
    assert CONFIG_SCHEMA["additionalProperties"] is False


def test_exponent_strings():
    validate_config({"source": {"p": "3/2", "b": "inf", "A": ["-1/2", 1]}})
    with pytest.raises(ConfigError):
        validate_config({"source": {"p": "1.5", "b": 1}})


def test_sweep_header_and_format(tmp_path, capsys):
    assert _run(tmp_path, {"command": "sweep", **CONFIGS["sweep"]}) == 0
    lines = capsys.readouterr().out.split("\n")
    assert lines[0] == SWEEP_HEADER
    first = lines[1].split(",")
    assert float(first[0]) == 2.0 and first[5] == "T4"
    assert first[4] == format(float(first[4]), ".17g")


def test_sweep_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg = {"command": "sweep", **CONFIGS["sweep"], "seed": 9}
    assert _run(tmp_path, cfg, "--output", str(a)) == 0
    assert _run(tmp_path, cfg, "--output", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_override_changes_random_runs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg = {"command": "verify", **CONFIGS["verify"]}
    _run(tmp_path, cfg, "--output", str(a), "--seed", "1")
    _run(tmp_path, cfg, "--output", str(b), "--seed", "2")
    assert a.read_bytes() != b.read_bytes()


def test_positional_command_overrides_config(tmp_path, capsys):
    cfg = {"command": "norm", **CONFIGS["classify"]}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["classify", "--config", str(path), "--quiet"]) == 0
    assert capsys.readouterr().out.startswith("class,rho\n")


def test_json_report_round_trips(tmp_path):
    out = tmp_path / "r.json"
    cfg = {"command": "sweep", **CONFIGS["sweep"], "seed": 4}
    assert _run(tmp_path, cfg, "--format", "json", "--output", str(out)) == 0
    rep = json.loads(out.read_text())
    assert set(rep) == {"config", "rows", "summary"}
    validate_config(rep["config"])
    rows, summary = execute(rep["config"])
    assert json.loads(json.dumps(rows)) == rep["rows"]
    assert summary["slope"] == rep["summary"]["slope"]
    # the emitted config alone reproduces the run
    emitted = tmp_path / "emitted.json"
    emitted.write_text(json.dumps(rep["config"]))
    again = tmp_path / "r2.json"
    assert main(["--config", str(emitted), "--quiet", "--output", str(again)]) == 0
    rep2 = json.loads(again.read_text())
    assert (rep2["rows"], rep2["summary"]) == (rep["rows"], rep["summary"])


def test_summary_on_stderr(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"command": "classify", **CONFIGS["classify"]}))
    assert main(["--config", str(path)]) == 0
    assert capsys.readouterr().err.startswith("lzkit: class=F1")


def test_csv_cells():
    text = to_csv([{"x": float("inf"), "flag": True, "y": 0.1}])
    assert text == "x,flag,y\ninf,true,0.10000000000000001\n"
    assert to_csv([]) == ""


def test_module_entry_point(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"command": "classify", "source": {"p": 5, "b": 5}}))
    r = subprocess.run([sys.executable, "-m", "lzkit", "--config", str(path), "--quiet"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == "class,rho\nFrho,3\n"
