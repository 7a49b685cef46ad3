import math
import re

import numpy as np
import pytest

import oracles
from mwoptical import cli
from mwoptical.cli import (
    ConfigError,
    SweepSpec,
    fig1_rows,
    format_csv,
    format_summary,
    main,
    parse_config,
    run_scenario,
    run_sweep,
)
from mwoptical.units import freq_mhz_to_angular

WORKED_VESSEL = """\
# worked-example vessel
channel = fine_structure
flux_w_cm2 = 1.0
vessel_length_cm = 10.0
vessel_area_cm2 = 1.0
gas_density_g_cm3 = 0.9e-4
rho22_initial = 1e-4
ratio_mode = unity
time_stop_s = 1e-6
time_steps = 11
"""


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def test_parse_minimal_config():
    cfg = parse_config("channel = fine_structure\n")
    assert cfg.detuning_mhz == 0.0
    assert freq_mhz_to_angular(cfg.drive_frequency_mhz) \
        == pytest.approx(2.0 * math.pi * 1.0949e10, rel=1e-12)
    assert cfg.ratio == 1.0


def test_parse_config_comments_and_blank_lines():
    cfg = parse_config("\n# a comment\nchannel = lamb_shift  # trailing comment\n\n")
    assert cfg.channel == "lamb_shift"
    assert cfg.microwave_resonance_mhz == 1057.77


def test_parse_config_rejects_unknown_keys():
    with pytest.raises(ConfigError, match=r"unknown configuration keys: foo"):
        parse_config("channel = fine_structure\nfoo = 3\n")


def test_parse_config_rejects_negative_density():
    with pytest.raises(ConfigError, match="gas_density_g_cm3"):
        parse_config("channel = fine_structure\ngas_density_g_cm3 = -1e-4\n")


def test_parse_config_names_line_on_parse_failure():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("channel = fine_structure\njust words\n")
    with pytest.raises(ConfigError, match="line 3.*flux_w_cm2.*not a number"):
        parse_config("channel = fine_structure\n\nflux_w_cm2 = fast\n")


def test_parse_config_rejects_duplicates_and_missing_channel():
    with pytest.raises(ConfigError, match="duplicate key"):
        parse_config("channel = fine_structure\nchannel = lamb_shift\n")
    with pytest.raises(ConfigError, match="missing required key: channel"):
        parse_config("flux_w_cm2 = 1\n")


def test_parse_config_ratio_modes():
    cfg = parse_config("channel = fine_structure\nratio_mode = hydrogenic\n")
    assert cfg.ratio == pytest.approx(3**12 / 2**15, rel=1e-6)
    cfg = parse_config("channel = fine_structure\nratio_mode = custom\nratio_value = 2.5\n")
    assert cfg.ratio == 2.5
    with pytest.raises(ConfigError, match="ratio_value: required"):
        parse_config("channel = fine_structure\nratio_mode = custom\n")
    with pytest.raises(ConfigError, match="only valid"):
        parse_config("channel = fine_structure\nratio_value = 2.5\n")


def test_parse_config_time_grid_validation():
    with pytest.raises(ConfigError, match="monotone"):
        parse_config("channel = fine_structure\ntime_start_s = 1e-6\ntime_stop_s = 1e-7\n")
    with pytest.raises(ConfigError, match="time_steps"):
        parse_config("channel = fine_structure\ntime_steps = 1\n")


def test_config_rejects_unphysical_drive_frequency():
    with pytest.raises(ConfigError, match="detuning_mhz"):
        parse_config("channel = lamb_shift\ndetuning_mhz = -2000\n")


# ---------------------------------------------------------------------------
# fig1 table
# ---------------------------------------------------------------------------

def test_fig1_rows_values():
    header, rows = fig1_rows(10.0, 11)
    assert header[0].startswith("beta") and all("[" in h for h in header)
    assert rows[0][1] == pytest.approx(1.0 / 3.0, abs=1e-12)
    row6 = rows[6]   # beta = 6.0
    assert row6[0] == 6.0
    assert row6[1] == pytest.approx(0.02992744959808268, rel=1e-10)
    row10 = rows[10]  # beta = 10.0
    assert 0.95 <= row10[3] / row10[1] <= 1.05


def test_fig1_rejects_invalid_grid():
    with pytest.raises(ConfigError):
        fig1_rows(0.0, 10)
    with pytest.raises(ConfigError):
        fig1_rows(5.0, 1)


# ---------------------------------------------------------------------------
# scenario runner
# ---------------------------------------------------------------------------

def test_scenario_summary_worked_example():
    cfg = parse_config(WORKED_VESSEL)
    header, rows, summary = run_scenario(cfg)
    assert summary["n31"] == pytest.approx(0.8e11, rel=0.03)
    assert summary["eta_peak"] == pytest.approx(1.2739373591493357e6, rel=1e-10)
    # peak efficiency ~ prefactor * rho22 * f(0) with prefactor ~ 4e10 (rounded)
    assert summary["eta_peak"] == pytest.approx(4.0e10 * 1e-4 * (1 / 3), rel=0.10)
    assert summary["eta_peak"] >= 1.0e6
    assert rows[0][5] == summary["eta_peak"]


def test_scenario_zero_drive():
    cfg = parse_config("channel = fine_structure\nflux_w_cm2 = 0.0\n")
    header, rows, summary = run_scenario(cfg)
    assert all(row[4] == 0.0 and row[5] == 0.0 for row in rows)
    assert summary["tau_s"] is None
    assert "tau_s = no_depletion" in format_summary(summary)


def test_scenario_headers_carry_units():
    cfg = parse_config(WORKED_VESSEL)
    header, rows, summary = run_scenario(cfg)
    assert header == ["t[s]", "f_mw[MHz]", "beta[-]", "f_beta[-]", "I_total[erg/s]", "eta[-]"]


def test_scenario_deterministic_output():
    cfg = parse_config(WORKED_VESSEL)
    first = format_csv(*run_scenario(cfg)[:2])
    second = format_csv(*run_scenario(cfg)[:2])
    assert first == second


def test_scenario_rows_match_depletion_curve():
    cfg = parse_config(WORKED_VESSEL)
    _, rows, summary = run_scenario(cfg)
    # beta at tau sits near 6 and the oracle agrees with the f column
    tau = summary["tau_s"]
    assert tau == pytest.approx(1.38550312e-7, rel=1e-8)
    for t, _, beta, f_value, intensity, eta in rows[:5]:
        assert f_value == pytest.approx(oracles.f_beta_quad(beta), abs=1e-12)
        assert eta == pytest.approx(intensity / (cfg.vessel_area_cm2 * 1e7), rel=1e-12)


def test_channel_symmetry():
    base = "vessel_length_cm = 10.0\nrho22_initial = 1e-4\nratio_mode = unity\ntime_steps = 7\n"
    fine = parse_config("channel = fine_structure\n" + base)
    lamb = parse_config("channel = lamb_shift\n" + base)
    csv_fine = format_csv(*run_scenario(fine)[:2])
    csv_lamb = format_csv(*run_scenario(lamb)[:2])
    assert csv_fine != csv_lamb  # the frequency column differs

    def drop_freq_column(text):
        lines = []
        for line in text.splitlines():
            cells = line.split(",")
            del cells[1]
            lines.append(",".join(cells))
        return "\n".join(lines)

    assert drop_freq_column(csv_fine) == drop_freq_column(csv_lamb)


def test_csv_numeric_format_nine_significant_digits():
    cfg = parse_config(WORKED_VESSEL)
    text = format_csv(*run_scenario(cfg)[:2])
    cell = text.splitlines()[1].split(",")[4]
    assert re.fullmatch(r"-?\d\.\d{8}e[+-]\d{2,3}", cell)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def test_sweep_length_monotone_boundary_argmax():
    cfg = parse_config(WORKED_VESSEL)
    spec = SweepSpec("vessel_length_cm", 1.0, 100.0, 12, objective="eta_max_peak")
    header, rows, record = run_sweep(cfg, spec)
    assert record["argmax"] == pytest.approx(100.0)
    values = [obj for _, obj in rows]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_sweep_detuning_peaks_at_resonance():
    cfg = parse_config(WORKED_VESSEL)
    spec = SweepSpec("detuning_mhz", -50.0, 50.0, 101, objective="eta_max_peak")
    header, rows, record = run_sweep(cfg, spec)
    step = rows[1][0] - rows[0][0]
    assert abs(record["argmax"] - 0.0) <= step


def test_sweep_tau_inverse_in_flux():
    cfg = parse_config(WORKED_VESSEL)
    spec = SweepSpec("flux_w_cm2", 0.1, 100.0, 16, log=True, objective="tau")
    header, rows, record = run_sweep(cfg, spec)
    logs = np.log([row[0] for row in rows])
    logt = np.log([row[1] for row in rows])
    slope = np.polyfit(logs, logt, 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.01)


def test_sweep_pulse_energy_bounded_by_excited_population():
    # over a long window the emitted energy approaches N * rho22(0) * hbar * omega31
    cfg = parse_config(
        "channel = fine_structure\ntime_stop_s = 3e-5\ntime_steps = 20001\n")
    spec = SweepSpec("flux_w_cm2", 0.5, 1.0, 2, objective="pulse_energy")
    _, rows, _ = run_sweep(cfg, spec)
    _, _, summary = run_scenario(cfg)
    budget = summary["n_atoms"] * 1e-4 * 1.054571817e-27 * 1.5439766945154534e16
    for _, energy in rows:
        assert 0.9 * budget < energy <= 1.001 * budget


def test_sweep_validation():
    cfg = parse_config(WORKED_VESSEL)
    with pytest.raises(ConfigError, match="unknown"):
        SweepSpec("vessel_volume", 1.0, 2.0, 5)
    with pytest.raises(ConfigError, match="range"):
        SweepSpec("flux_w_cm2", 2.0, 1.0, 5)
    with pytest.raises(ConfigError, match="log spacing"):
        SweepSpec("detuning_mhz", -1.0, 1.0, 5, log=True)
    with pytest.raises(ConfigError, match="objective"):
        SweepSpec("flux_w_cm2", 1.0, 2.0, 5, objective="entropy")


def test_sweep_no_depletion_marker_in_csv():
    cfg = parse_config(WORKED_VESSEL)
    spec = SweepSpec("flux_w_cm2", 0.0, 1.0, 3, objective="tau")
    header, rows, record = run_sweep(cfg, spec)
    text = format_csv(header, rows)
    assert "no_depletion" in text.splitlines()[1]
    assert record["argmax"] == 0.5   # smallest positive flux maximizes tau


# ---------------------------------------------------------------------------
# command-line entry point
# ---------------------------------------------------------------------------

def test_main_fig1_to_file(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    assert main(["fig1", "--beta-max", "6", "--steps", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("beta")
    assert len(lines) == 5


def test_main_scenario_files(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text(WORKED_VESSEL)
    out = tmp_path / "series.csv"
    summary = tmp_path / "summary.txt"
    code = main(["scenario", "--config", str(config),
                 "--out", str(out), "--summary", str(summary)])
    assert code == 0
    assert out.read_text().count("\n") == 12   # header + 11 rows
    assert "eta_peak = 1.27393736e+06" in summary.read_text()


def test_main_scenario_output_key_fallback(tmp_path):
    out = tmp_path / "from_config.csv"
    config = tmp_path / "run.cfg"
    config.write_text(WORKED_VESSEL + f"output = {out}\n")
    assert main(["scenario", "--config", str(config), "--summary",
                 str(tmp_path / "s.txt")]) == 0
    assert out.exists()


def test_main_sweep(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text(WORKED_VESSEL)
    out = tmp_path / "sweep.csv"
    summary = tmp_path / "argmax.txt"
    code = main(["sweep", "--config", str(config), "--param", "vessel_length_cm",
                 "--min", "1", "--max", "100", "--steps", "5",
                 "--objective", "eta_max_peak", "--out", str(out),
                 "--summary", str(summary)])
    assert code == 0
    assert "argmax = 1.00000000e+02" in summary.read_text()


def test_main_exit_code_on_config_error(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("channel = fine_structure\ngas_density_g_cm3 = -1\n")
    assert main(["scenario", "--config", str(config)]) == 2
    assert "gas_density_g_cm3" in capsys.readouterr().err
    assert main(["scenario", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_main_exit_code_on_numerical_error(tmp_path, capsys, monkeypatch):
    config = tmp_path / "run.cfg"
    config.write_text(WORKED_VESSEL)

    def boom(cfg):
        raise ValueError("outside the numerical domain")

    monkeypatch.setattr(cli, "run_scenario", boom)
    assert main(["scenario", "--config", str(config)]) == 3
    assert "numerical domain" in capsys.readouterr().err


def test_main_transition_and_constants(capsys):
    assert main(["transition", "fine_structure"]) == 0
    out = capsys.readouterr().out
    assert "microwave_resonance_mhz = 1.09490000e+04" in out
    assert "gamma31_per_s" in out
    assert main(["constants"]) == 0
    out = capsys.readouterr().out
    assert "hbar_erg_s = 1.05457182e-27" in out


def test_main_rejects_unknown_sweep_param():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--config", "x", "--param", "bogus",
              "--min", "0", "--max", "1", "--steps", "3", "--objective", "tau"])
    assert exc.value.code == 2
