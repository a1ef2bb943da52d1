import csv
import json

import pytest
import yaml

from gchwave.harness import cli
from gchwave.harness.config import ConfigError, dump, from_dict, load, with_override
from gchwave.harness.presets import SCENARIOS, scenario
from gchwave.harness.report import emit_csv, emit_json, parse_csv, parse_json
from gchwave.harness.runner import run
from gchwave.harness.sweep import parse_axis, sweep


def small(**over):
    raw = {"name": "small", "grid": {"L": 20.0, "n": 256}, "time": {"t_end": 0.5},
           "params": {"alpha": 1.0}, "ic": {"kind": "gaussian", "a": 0.2, "w": 1.0}}
    raw.update(over)
    return from_dict(raw)


def write_cfg(tmp_path, cfg, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(dump(cfg))
    return str(p)


@pytest.mark.parametrize("raw", [
    {"grid": {"n": 100}},
    {"grid": {"L": -1}},
    {"time": {"t_end": -1}},
    {"params": {"alpha": 1}, "rotation": 0.5},
    {"ic": {"kind": "nope"}},
    {"bogus": 1},
    {"monitors": {"tol_cons": -1}},
])
def test_invalid_configs_rejected(raw):
    with pytest.raises(ConfigError):
        from_dict(raw)


def test_config_round_trip_and_override(tmp_path):
    cfg = small()
    assert load(write_cfg(tmp_path, cfg)) == cfg
    cfg2 = with_override(cfg, "ic.a", 0.3)
    assert cfg2.ic.a == 0.3 and cfg.ic.a == 0.2
    with pytest.raises(ConfigError):
        with_override(cfg, "ic.nothing", 1)


def test_reference_config_parses():
    from gchwave.harness.config import REFERENCE
    cfg = from_dict(yaml.safe_load(REFERENCE))
    assert cfg.grid.n == 1024


def test_json_and_csv_round_trip():
    res = run(small())
    assert parse_json(emit_json(res.report)) == res.report
    cols, rows = parse_csv(emit_csv(res.rows))
    assert rows == [list(map(float, r)) for r in res.rows]
    assert cols[0] == "t"


def test_runs_are_byte_identical(tmp_path):
    path = write_cfg(tmp_path, small())
    outs = []
    for d in ("a", "b"):
        assert cli.main(["simulate", path, "--out", str(tmp_path / d)]) == 0
        outs.append(((tmp_path / d / "small.json").read_bytes(),
                     (tmp_path / d / "small.csv").read_bytes()))
    assert outs[0] == outs[1]


def test_report_contents():
    r = run(small()).report
    assert r["classification"] == "RanToHorizon"
    assert {"config", "params", "certificates", "run", "monitors", "versions"} <= set(r)
    assert r["params"]["alpha"] == 1.0
    assert "wall_time" not in r


def test_exit_codes(tmp_path):
    assert cli.main(["simulate", "--preset", "zero", "--out", str(tmp_path)]) == 0
    assert cli.main(["simulate", str(tmp_path / "missing.yaml")]) == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("grid: {n: 100}\n")
    assert cli.main(["simulate", str(bad)]) == 2
    assert cli.main(["frobnicate"]) == 2


@pytest.mark.slow
def test_breaking_exit_code(tmp_path):
    assert cli.main(["simulate", "--preset", "steep-breaking", "--out", str(tmp_path)]) == 10
    r = json.loads((tmp_path / "steep-breaking.json").read_text())
    assert r["classification"] == "WaveBreaking"


def test_certify_presets(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert cli.main(["certify", "--preset", "steep-breaking", "--out", str(out)]) == 0
    c = json.loads(out.read_text())["certificates"]
    assert c["breaking"]["holds"] and not c["SingleSign"]["holds"]
    assert cli.main(["certify", "--preset", "single-sign"]) == 0
    c = json.loads(capsys.readouterr().out)["certificates"]
    assert c["SingleSign"]["holds"] and not c["breaking"]["holds"]
    assert cli.main(["certify", "--preset", "neg-then-pos"]) == 0
    c = json.loads(capsys.readouterr().out)["certificates"]
    assert c["NegThenPos"]["holds"] and not c["SingleSign"]["holds"]


def test_verify_command(capsys):
    assert cli.main(["verify", "rotation", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] and all(v["passed"] for v in out["verdicts"])
    assert cli.main(["verify", "nonsense"]) == 2


def test_preset_command(capsys):
    assert cli.main(["preset", "--omega", "0"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["c"] == 1.0 and d["beta"] == 0.0 and d["gamma"] == 0.0
    assert cli.main(["preset", "--list"]) == 0
    assert set(capsys.readouterr().out.split()) == set(SCENARIOS)
    assert cli.main(["preset", "--show", "zero"]) == 0
    assert from_dict(yaml.safe_load(capsys.readouterr().out)) == scenario("zero")


def test_parse_axis():
    assert parse_axis("ic.a=0.1,0.2") == ("ic.a", [0.1, 0.2])
    path, vals = parse_axis("rotation=0:1:3")
    assert path == "rotation" and vals == [0.0, 0.5, 1.0]
    with pytest.raises(ConfigError):
        parse_axis("ic.a")


def _summary(outdir):
    with open(outdir / "summary.csv") as fh:
        return list(csv.DictReader(fh))


def test_sweep_amplitude_axis(tmp_path):
    rows = sweep(small(), ["ic.a=0.1,0.2"], tmp_path, workers=1)
    assert [r["classification"] for r in rows] == ["RanToHorizon"] * 2
    assert len(_summary(tmp_path)) == 2


def test_sweep_rotation_axis(tmp_path):
    tmpl = from_dict({"name": "rot", "grid": {"L": 20.0, "n": 256}, "time": {"t_end": 0.2},
                      "rotation": 0.0, "ic": {"kind": "gaussian", "a": 0.1, "w": 2.0}})
    sweep(tmpl, ["rotation=0,0.5,1"], tmp_path, workers=2)
    rows = _summary(tmp_path)
    assert float(rows[0]["beta"]) == 0.0 and float(rows[0]["gamma"]) == 0.0
    assert float(rows[1]["beta"]) != 0.0


def test_single_point_sweep_matches_simulate(tmp_path):
    cfg = small()
    sweep(cfg, ["ic.a=0.2"], tmp_path / "s", workers=1)
    cli.main(["simulate", write_cfg(tmp_path, cfg), "--out", str(tmp_path / "d")])
    runs = list((tmp_path / "s").glob("*/small.csv")) + list((tmp_path / "s").glob("*.csv"))
    sweep_csv = [p for p in runs if p.name != "summary.csv"]
    assert sweep_csv and sweep_csv[0].read_bytes() == (tmp_path / "d" / "small.csv").read_bytes()


def test_sweep_partial_failure(tmp_path):
    rows = sweep(small(), ["grid.n=256,100"], tmp_path, workers=1)
    assert not rows[0]["error"] and rows[1]["error"]
