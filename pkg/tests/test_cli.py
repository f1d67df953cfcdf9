import pytest

from entropic_uncertainty.cli import main, parse_config_text, preset_rows
from entropic_uncertainty.sweep import ConfigError, render_csv

GOOD_CONFIG = """\
# damping sweep over the full noise range
channel = AD
c1 = -0.5
c2 = 0.4
c3 = 0.8
param_start = 0
param_stop = 1
param_points = 5
outputs = u, berta
"""


def test_parse_config_text_roundtrip():
    cfg = parse_config_text(GOOD_CONFIG)
    assert cfg.channel == "AD"
    assert cfg.param_points == 5
    assert cfg.outputs == ("u", "berta")


def test_parse_config_collects_all_problems():
    bad = "channel = XX\nc1 = wat\nparam_points = 1\nmystery = 3\n"
    with pytest.raises(ConfigError) as err:
        parse_config_text(bad)
    text = str(err.value)
    assert "mystery" in text
    assert "c1" in text


def test_parse_config_steering_list():
    cfg = parse_config_text(
        GOOD_CONFIG + "steering_kind = weak\nsteering_strengths = 0, 0.4, 0.8\n"
    )
    assert cfg.steering_strengths == (0.0, 0.4, 0.8)


def test_sweep_command_writes_csv(tmp_path):
    cfg_path = tmp_path / "sweep.cfg"
    cfg_path.write_text(GOOD_CONFIG)
    out_path = tmp_path / "out.csv"
    assert main(["sweep", "--config", str(cfg_path), "--out", str(out_path)]) == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "channel,param,C1,C2,C3,u,berta"
    assert len(lines) == 6


def test_sweep_command_bad_config_exit_2(tmp_path):
    cfg_path = tmp_path / "bad.cfg"
    cfg_path.write_text("channel = AD\nc1 = 2\nc2 = 0\nc3 = 0\n")
    assert main(["sweep", "--config", str(cfg_path)]) == 2


def test_sweep_command_missing_config_exit_4(tmp_path):
    assert main(["sweep", "--config", str(tmp_path / "nope.cfg")]) == 4


def test_sweep_command_unwritable_out_exit_4(tmp_path):
    cfg_path = tmp_path / "sweep.cfg"
    cfg_path.write_text(GOOD_CONFIG)
    missing_dir = tmp_path / "no" / "such" / "dir" / "o.csv"
    assert main(["sweep", "--config", str(cfg_path), "--out", str(missing_dir)]) == 4


def test_witness_command(capsys):
    code = main(["witness", "--channel", "AD", "--c1", "-1", "--c2", "1", "--c3", "1"])
    out = capsys.readouterr().out
    assert code == 0
    value = float(out.split("critical_value=")[1].splitlines()[0])
    assert abs(value - 0.4058) < 0.005
    assert "window=[0, " in out


def test_witness_command_no_threshold_exit_3(capsys):
    code = main(["witness", "--channel", "AD", "--c1", "0", "--c2", "0", "--c3", "0"])
    assert code == 3
    assert "no threshold" in capsys.readouterr().err


def test_capacity_command(tmp_path):
    out_path = tmp_path / "cap.csv"
    code = main(
        ["capacity", "--channel", "BPF", "--points", "11", "--out", str(out_path)]
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "param,capacity"
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(2.0, abs=1e-9)


def test_errata_command(capsys):
    assert main(["errata", "--channel", "BPF", "--points", "5"]) == 0
    out = capsys.readouterr().out
    assert "closed-form cross-check report" in out


def test_preset_names_and_shapes():
    rows = preset_rows("fig1")
    assert len(rows) == 101
    header = render_csv(rows).splitlines()[0]
    assert header == "channel,param,C1,C2,C3,u,berta,pati,adabi"
    rows5 = preset_rows("fig5")
    assert {row.channel for row in rows5} == {"AD", "BPF"}
    assert len(rows5) == 2 * 3 * 101
    with pytest.raises(ConfigError):
        preset_rows("fig9")


def test_preset_command_stdout(capsys):
    assert main(["preset", "fig1"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "channel,param,C1,C2,C3,u,berta,pati,adabi"


def test_unphysical_witness_coeffs_exit_3(capsys):
    code = main(["witness", "--channel", "AD", "--c1", "0.9", "--c2", "0.9", "--c3", "0.9"])
    assert code == 3
    assert "unphysical" in capsys.readouterr().err
