import pytest

from trisinglet.config import ConfigError, RunConfig, SweepAxis, load_config, parse_config
from trisinglet.params import DEFAULTS


def test_empty_config_gives_ideal_defaults():
    config = parse_config("")
    for key, value in DEFAULTS.items():
        assert getattr(config.params, key) == value
    assert config.axes == ()
    assert config.parallel == 1


def test_single_key_keeps_other_defaults():
    config = parse_config("delta_over_omega0 = 1.0\n")
    assert config.params.delta_over_omega0 == 1.0
    assert config.params.U_over_omega0 == DEFAULTS["U_over_omega0"]


def test_comments_and_blank_lines_ignored():
    config = parse_config("# a comment\n\ntau_over_T = 0.5  # inline\n")
    assert config.params.tau_over_T == 0.5


def test_negative_dt_rejected_by_name():
    with pytest.raises(ConfigError, match="dt_over_T"):
        parse_config("dt_over_T = -1\n")


def test_unknown_key_rejected_with_line():
    with pytest.raises(ConfigError, match="line 2.*frequency"):
        parse_config("tau_over_T = 0.7\nfrequency = 3\n")


def test_unparsable_value_rejected():
    with pytest.raises(ConfigError, match="omega0_T"):
        parse_config("omega0_T = ten\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config("omega0_T = 10\nomega0_T = 12\n")


def test_lindblad_needs_full_space():
    with pytest.raises(ConfigError, match="full27"):
        parse_config("dissipation = lindblad\nmodel = logic9\n")


def test_sweep_block_parsing():
    config = parse_config(
        "sweep1 = delta_over_omega0\nsweep1_min = 0.2\nsweep1_max = 2.0\nsweep1_points = 61\n"
    )
    assert config.axes == (SweepAxis("delta_over_omega0", 0.2, 2.0, 61),)
    values = config.axes[0].values()
    assert len(values) == 61
    assert values[0] == 0.2 and values[-1] == 2.0


def test_incomplete_sweep_block_rejected():
    with pytest.raises(ConfigError, match="sweep1_points"):
        parse_config("sweep1 = delta_over_omega0\nsweep1_min = 0.2\nsweep1_max = 2.0\n")


def test_sweep2_requires_sweep1():
    with pytest.raises(ConfigError, match="sweep2"):
        parse_config("sweep2 = U_over_omega0\nsweep2_min = 1\nsweep2_max = 2\nsweep2_points = 3\n")


def test_non_numeric_sweep_key_rejected():
    with pytest.raises(ConfigError, match="sweep"):
        parse_config("sweep1 = model\nsweep1_min = 0\nsweep1_max = 1\nsweep1_points = 2\n")


def test_config_text_round_trip():
    config = parse_config(
        "omega0_T = 12.5\nmodel = full27\nsweep1 = tau_over_T\n"
        "sweep1_min = 0.1\nsweep1_max = 1.5\nsweep1_points = 15\nparallel = 4\n"
    )
    assert parse_config(config.to_text()) == config


def test_load_config_from_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("U_over_omega0 = 5.0\n", encoding="utf-8")
    assert load_config(path).params.U_over_omega0 == 5.0


def test_run_config_rejects_bad_parallel():
    with pytest.raises(ConfigError):
        RunConfig(parallel=0)
