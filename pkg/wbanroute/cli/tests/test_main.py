from wbanroute.cli import main
from wbanroute.metrics import parse_report_table

FIGURE_THREE = ["--fixture", "figure3", "--set", "source_ids=0,4", "--set", "sim_time_s=5"]


def test_run_writes_reports(tmp_path, capsys):
    code = main(["run", *FIGURE_THREE, "--out", str(tmp_path)])
    assert code == 0
    reports = parse_report_table((tmp_path / "report.csv").read_text())
    assert len(reports) == 1
    assert reports[0].protocol == "proposed"
    assert reports[0].n_nodes == 9
    assert (tmp_path / "summary.txt").exists()
    assert "proposed_9_4_1" in capsys.readouterr().out


def test_override_is_echoed(tmp_path):
    args = ["run", "--set", "n_nodes=200", "--set", "sim_time_s=0.5", "--out", str(tmp_path)]
    assert main(args) == 0
    report = parse_report_table((tmp_path / "report.csv").read_text())[0]
    assert report.n_nodes == 200
    assert report.config["n_nodes"] == 200


def test_run_several_seeds_and_a_baseline(tmp_path):
    args = ["run", *FIGURE_THREE, "--protocol", "rrls", "--seeds", "1-3", "--out", str(tmp_path)]
    assert main(args) == 0
    reports = parse_report_table((tmp_path / "report.csv").read_text())
    assert [(r.protocol, r.seed) for r in reports] == [("rrls", 1), ("rrls", 2), ("rrls", 3)]
    assert (tmp_path / "rrls_9_4_2.csv").exists()


def test_malformed_scenario(tmp_path, capsys):
    scenario = tmp_path / "broken.scn"
    scenario.write_text("n_nodes = 20\nthis line has no assignment\n")
    assert main(["run", "--scenario", str(scenario), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "ParseError" in err
    assert "line 2" in err


def test_invalid_override(capsys):
    assert main(["validate", "--set", "rate_pkts_per_s=-1"]) == 2
    assert "rate_pkts_per_s" in capsys.readouterr().err


def test_override_precedence(tmp_path, capsys):
    scenario = tmp_path / "base.scn"
    scenario.write_text("n_nodes = 30\nrate_pkts_per_s = 2\n")
    assert main(["validate", "--scenario", str(scenario), "--set", "rate_pkts_per_s=3"]) == 0
    out = capsys.readouterr().out
    assert "n_nodes = 30" in out
    assert "rate_pkts_per_s = 3.0" in out
    assert "area_m = 3.0" in out


def test_override_repairs_an_invalid_scenario_file(tmp_path, capsys):
    scenario = tmp_path / "bad_alpha.scn"
    scenario.write_text("ewma_alpha = 1.5\n")
    assert main(["validate", "--scenario", str(scenario)]) == 2
    capsys.readouterr()
    assert main(["validate", "--scenario", str(scenario), "--set", "ewma_alpha=0.3"]) == 0
    assert "ewma_alpha = 0.3" in capsys.readouterr().out


def test_override_beats_fixture_sizes(capsys):
    assert main(["validate", "--fixture", "figure3", "--set", "n_sinks=2"]) == 0
    out = capsys.readouterr().out
    assert "n_nodes = 9" in out
    assert "n_sinks = 2" in out


def test_compare_needs_two_protocols(tmp_path, capsys):
    args = ["compare", *FIGURE_THREE, "--protocol", "proposed", "--out", str(tmp_path)]
    assert main(args) == 2
    assert "baseline" in capsys.readouterr().err


def test_compare_writes_a_comparison(tmp_path, capsys):
    args = ["compare", *FIGURE_THREE, "--seeds", "1,2", "--jobs", "1", "--out", str(tmp_path)]
    assert main(args) == 0
    reports = parse_report_table((tmp_path / "report.csv").read_text())
    assert len(reports) == 8
    assert (tmp_path / "comparison.csv").exists()
    out = capsys.readouterr().out
    assert "throughput_kbps" in out


def test_sweep_over_rates_writes_series(tmp_path):
    args = [
        "sweep", *FIGURE_THREE, "--rates", "2,4", "--nodes", "9",
        "--protocol", "proposed", "--protocol", "ensa_ban", "--jobs", "1",
        "--out", str(tmp_path),
    ]
    assert main(args) == 0
    assert (tmp_path / "series_throughput_kbps_rate_pkts_per_s.csv").exists()
    lines = (tmp_path / "series_nrl_rate_pkts_per_s.csv").read_text().strip().splitlines()
    assert lines[0] == "protocol,rate_pkts_per_s,mean,std,n"
    assert len(lines) == 5


def test_missing_subcommand():
    assert main([]) == 2
