import numpy as np
import pytest

from scatterstats import ConfigError, RunConfig, apply_overrides, load_config
from scatterstats.cli import main


def test_default_config_is_valid():
    RunConfig().validate()


def test_validation_reports_fields():
    bad = RunConfig(wavenumber=-2.0, samples=0, eps=3.0)
    with pytest.raises(ConfigError) as excinfo:
        bad.validate()
    message = str(excinfo.value)
    for token in ("wavenumber", "samples", "eps"):
        assert token in message


def test_grid_inside_clearance_rejected():
    with pytest.raises(ConfigError):
        RunConfig(grid_r_min=11.0).validate()


def test_load_config_and_overrides(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("""
[problem]
wavenumber = 4.0
direction = -1, 0

[sampling]
samples = 12

[run]
out_dir = results
""", encoding="utf-8")
    config = load_config(path)
    assert config.wavenumber == 4.0
    assert config.direction == (-1.0, 0.0)
    assert config.samples == 12
    assert config.out_dir == "results"
    config = apply_overrides(config, ["samples=99", "eps=1e-10"])
    assert config.samples == 99
    assert config.eps == 1e-10


def test_unknown_keys_rejected(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[problem]\nfrequency = 3\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)
    path.write_text("[sampling]\nwavenumber = 3\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)
    with pytest.raises(ConfigError):
        apply_overrides(RunConfig(), ["nothing"])


def _run(args):
    return main(args)


def test_cli_nominal_circle_matches_oracle(tmp_path, capsys):
    out = tmp_path / "nom"
    code = _run(["nominal", "--set", "scatterer=circle",
                 "--set", "n_gamma=64", "--set", "radius_sigma=4",
                 "--set", "grid_r_min=4.4", "--set", "grid_r_max=8",
                 "--set", "grid_nr=2", "--set", "grid_ntheta=4",
                 "--set", "farfield_directions=8", "--out-dir", str(out)])
    assert code == 0
    field = np.genfromtxt(out / "field_nominal.csv", delimiter=",", names=True)
    from scatterstats import mie_solution, mie_scattered
    sol = mie_solution(1.0, 2.0, (1.0, 0.0))
    pts = np.stack([field["x"], field["y"]], axis=1)
    ref = mie_scattered(sol, pts)
    got = field["re_scattered"] + 1j * field["im_scattered"]
    assert np.abs(got - ref).max() < 1e-8


def test_cli_zero_size_grid_writes_farfield_only(tmp_path):
    out = tmp_path / "ffonly"
    code = _run(["nominal", "--set", "grid_nr=0",
                 "--set", "n_gamma=64", "--set", "farfield_directions=16",
                 "--out-dir", str(out)])
    assert code == 0
    assert not (out / "field_nominal.csv").exists()
    assert (out / "farfield_nominal.csv").exists()


def test_cli_uq_outputs_and_manifest(tmp_path):
    out = tmp_path / "uq"
    code = _run(["uq", "--set", "samples=4", "--set", "n_gamma=64",
                 "--set", "n_sigma=64", "--set", "grid_nr=2",
                 "--set", "grid_ntheta=4", "--set", "farfield_directions=8",
                 "--out-dir", str(out)])
    assert code == 0
    for name in ("expectation_grid.csv", "variance_grid.csv",
                 "farfield_stats.csv", "rank_report.csv", "manifest.ini"):
        assert (out / name).exists(), name
    manifest = (out / "manifest.ini").read_text(encoding="utf-8")
    for needed in ("wavenumber", "samples", "eps", "rank",
                   "sample_count = 4", "halton_start", "n_sigma"):
        assert needed in manifest


def test_cli_farfield_stats_skips_grid(tmp_path):
    out = tmp_path / "ff"
    code = _run(["farfield-stats", "--set", "samples=3",
                 "--set", "n_gamma=64", "--set", "n_sigma=64",
                 "--set", "farfield_directions=8", "--out-dir", str(out)])
    assert code == 0
    assert not (out / "expectation_grid.csv").exists()
    assert (out / "farfield_stats.csv").exists()


def test_cli_deterministic_reruns_are_bitwise_identical(tmp_path):
    args = ["uq", "--set", "samples=3", "--set", "n_gamma=64",
            "--set", "n_sigma=64", "--set", "grid_nr=2",
            "--set", "grid_ntheta=4", "--set", "farfield_directions=8",
            "--deterministic"]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert _run(args + ["--out-dir", str(out1)]) == 0
    assert _run(args + ["--out-dir", str(out2)]) == 0
    for name in ("expectation_grid.csv", "variance_grid.csv",
                 "farfield_stats.csv", "rank_report.csv", "manifest.ini"):
        a = (out1 / name).read_bytes()
        b = (out2 / name).read_bytes()
        assert a.replace(str(out1).encode(), b"") \
            == b.replace(str(out2).encode(), b""), name


def test_cli_parallel_mode_agrees_with_sequential(tmp_path):
    base = ["uq", "--set", "samples=8", "--set", "n_gamma=64",
            "--set", "n_sigma=64", "--set", "grid_nr=0",
            "--set", "farfield_directions=8"]
    seq, par = tmp_path / "seq", tmp_path / "par"
    assert _run(base + ["--out-dir", str(seq)]) == 0
    assert _run(base + ["--threads", "3", "--out-dir", str(par)]) == 0
    a = np.genfromtxt(seq / "farfield_stats.csv", delimiter=",", names=True)
    b = np.genfromtxt(par / "farfield_stats.csv", delimiter=",", names=True)
    for column in a.dtype.names:
        np.testing.assert_allclose(a[column], b[column], atol=1e-12)


def test_cli_oracle_dump_idempotent_and_circle_only(tmp_path):
    out = tmp_path / "oracle"
    args = ["oracle-dump", "--set", "scatterer=circle", "--out-dir", str(out)]
    assert _run(args) == 0
    first = (out / "oracle_reference.txt").read_bytes()
    assert _run(args) == 0
    assert (out / "oracle_reference.txt").read_bytes() == first
    assert b"scattered(3, 0)" in first
    # kite config is refused
    code = _run(["oracle-dump", "--out-dir", str(tmp_path / "bad")])
    assert code == 2


def test_cli_table_ranks(tmp_path):
    out = tmp_path / "ranks"
    code = _run(["table-ranks", "--set", "samples=4", "--set", "n_gamma=32",
                 "--set", "n_sigma=32", "--radii", "11",
                 "--wavenumbers", "1,2", "--out-dir", str(out)])
    assert code == 0
    table = np.genfromtxt(out / "table_ranks.csv", delimiter=",", names=True)
    assert table["rank"].shape == (2,)


def test_cli_invalid_config_exits_with_error(tmp_path, capsys):
    code = _run(["uq", "--set", "samples=0", "--out-dir", str(tmp_path)])
    assert code == 2
    assert "samples" in capsys.readouterr().err
