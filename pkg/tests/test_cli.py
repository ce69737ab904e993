import math

import pytest

from quartdyn import atlas, cli
from quartdyn.config import Config, parse_config
from quartdyn.errors import ConfigError


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_classify_output_format(capsys):
    code, out = run_cli(capsys, "classify", "--t", "5,0")
    assert code == 0
    parts = out.split()
    assert parts[:4] == ["5", "0", "escape", "0"]


def test_classify_cycle(capsys):
    code, out = run_cli(capsys, "classify", "--t", f"{math.sqrt(2)},0")
    assert code == 0
    assert out.split()[2] == "cycle"


def test_centers_output(capsys):
    code, out = run_cli(capsys, "centers", "--n", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    values = sorted(float(l.split()[0]) for l in lines)
    assert values[0] == pytest.approx(-math.sqrt(2.0), abs=1e-10)
    assert values[1] == pytest.approx(math.sqrt(2.0), abs=1e-10)
    assert all(l.split()[2] == "2" for l in lines)


def test_misiurewicz_output(capsys):
    code, out = run_cli(capsys, "misiurewicz", "--j", "1", "--k", "2")
    assert code == 0
    tm = math.sqrt(4.0 + 2.0 * math.sqrt(2.0))
    reals = [float(l.split()[0]) for l in out.strip().splitlines()]
    assert any(abs(r - tm) < 1e-9 for r in reals)
    assert any(abs(r + tm) < 1e-9 for r in reals)


def test_probe_output(capsys):
    tm = math.sqrt(4.0 + 2.0 * math.sqrt(2.0))
    code, out = run_cli(capsys, "probe", "--t", f"{tm - 1e-4},0", "--res", "512")
    assert code == 0
    assert out.strip() == "JordanEvidence 512 true true"


def test_kernel_check_table(capsys):
    code, out = run_cli(capsys, "kernel-check", "--t", "5,0", "--n-max", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n re_xi im_xi gap"
    gaps = [float(l.split()[3]) for l in lines[1:]]
    assert gaps[2] < gaps[0]


def test_census_table(capsys):
    code, out = run_cli(capsys, "census", "--period-max", "2", "--level-max", "1",
                        "--res", "256", "--max-iter", "500")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind period components bound raw"
    rows = {tuple(l.split()[:2]): l.split()[2:] for l in lines[1:]}
    assert rows[("escape", "1")][0] == "2"
    assert rows[("hyperbolic", "1")][0] == "1"


def test_render_param_with_config(tmp_path, capsys):
    cfg = tmp_path / "render.cfg"
    cfg.write_text(
        "# tiny render\n"
        "viewport = -3 3 -2 2\n"
        "resolution = 48 32\n"
        "max_iter = 200\n"
        "period_max = 3\n"
        f"output_path = {tmp_path/'out.ppm'}\n"
    )
    code, out = run_cli(capsys, "render-param", "--config", str(cfg))
    assert code == 0
    data = (tmp_path / "out.ppm").read_bytes()
    img = atlas.decode_ppm(data)
    assert (img.nx, img.ny) == (48, 32)


def test_render_julia_out_flag(tmp_path, capsys):
    out_path = tmp_path / "julia.ppm"
    cfg = tmp_path / "r.cfg"
    cfg.write_text("resolution = 32 32\nviewport = -3 3 -3 3\nmax_iter = 150\n")
    code, out = run_cli(
        capsys, "render-julia", "--t", "1.414213,0", "--config", str(cfg),
        "--out", str(out_path),
    )
    assert code == 0
    assert out_path.exists()


def test_config_unknown_key_rejected(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("viewpoint = -1 1 -1 1\n")
    with pytest.raises(ConfigError):
        parse_config(str(cfg))


def test_config_error_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("max_iter = not-a-number\n")
    code = cli.main(["render-param", "--config", str(cfg)])
    assert code == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "--t", "nonsense"])
    assert exc.value.code == 2


def test_verify_subcommand_green(capsys):
    code, out = run_cli(capsys, "verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(l.startswith("PASS") for l in lines[:-1])
    assert lines[-1].startswith("OK")


def test_config_defaults_and_overrides(tmp_path):
    cfg = Config()
    assert cfg.viewport == (-3.0, 3.0, -2.0, 2.0)
    path = tmp_path / "c.cfg"
    path.write_text("bailout_constant = 12\nmax_iter = 99\n")
    cfg2 = parse_config(str(path))
    assert cfg2.bailout_constant == 12.0
    assert cfg2.max_iter == 99
    assert cfg2.viewport == cfg.viewport  # untouched keys keep defaults
