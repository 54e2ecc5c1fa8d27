import json
import xml.etree.ElementTree as ET

import pytest

from papertrail.cli import main
from papertrail.ingest import serialize_report
from papertrail.synth import conscientious_spec, generate, papermill_spec

from conftest import TWO_RECORD_TSV


@pytest.fixture
def report_path(tmp_path):
    path = tmp_path / "r2.tsv"
    path.write_bytes(TWO_RECORD_TSV)
    return path


def write_synth(tmp_path, name, spec):
    path = tmp_path / name
    path.write_bytes(serialize_report(generate(spec)))
    return path


class TestAnalyze:
    def test_json_to_stdout(self, report_path, capsys):
        assert main(["analyze", str(report_path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        for key in ("correlation", "lag_years", "h_index", "i_index", "hcp_count", "flags"):
            assert key in doc["indicators"]
        assert doc["schema_version"] == "1.0"
        assert doc["profile"]["name"] == "r2"  # file stem fallback

    def test_json_round_trips_strict(self, report_path, tmp_path, capsys):
        out = tmp_path / "out.json"
        assert main(["analyze", str(report_path), "--json", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert json.loads(json.dumps(doc)) == doc

    def test_missing_file_exit_1_with_path_in_stderr(self, tmp_path, capsys):
        missing = tmp_path / "missing.tsv"
        assert main(["analyze", str(missing)]) == 1
        assert str(missing) in capsys.readouterr().err

    def test_unparseable_file_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("nonsense\n")
        assert main(["analyze", str(bad)]) == 1
        assert "bad.tsv" in capsys.readouterr().err

    def test_svg_output_well_formed(self, report_path, tmp_path, capsys):
        svg = tmp_path / "chart.svg"
        assert main(["analyze", str(report_path), "--json", str(tmp_path / "x.json"),
                     "--svg", str(svg)]) == 0
        root = ET.parse(svg).getroot()
        assert root.tag.endswith("svg")

    def test_undefined_indicators_emitted_as_null_with_reason(self, tmp_path, capsys):
        single = tmp_path / "one.tsv"
        single.write_bytes(
            b"Title\tPublication Year\tTotal Citations\t2020\npaper\t2020\t1\t1\n"
        )
        assert main(["analyze", str(single)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["indicators"]["correlation"] is None
        assert doc["indicators"]["lag_years"] is None
        assert "correlation" in doc["undefined_reasons"]

    def test_csv_format_flag(self, tmp_path, capsys):
        path = tmp_path / "r.data"
        path.write_bytes(b"Title,Publication Year,Total Citations,2020\np,2020,1,1\n")
        assert main(["analyze", str(path), "--format", "csv"]) == 0

    def test_unknown_flag_exit_2_and_no_partial_output(self, report_path, tmp_path, capsys):
        out = tmp_path / "never.json"
        with pytest.raises(SystemExit) as exc:
            main(["analyze", str(report_path), "--json", str(out), "--bogus-flag"])
        assert exc.value.code == 2
        assert not out.exists()


class TestConfig:
    # the fixture profile has r = -0.5, so no flag fires at the default
    # r_min = 0.5; dropping r_min below -0.5 makes HighCorrelation observable

    def test_config_file_changes_thresholds(self, report_path, tmp_path, capsys):
        cfg = tmp_path / "cfg"
        cfg.write_text("# thresholds\nr_min = -0.9\n")
        assert main(["analyze", str(report_path), "--config", str(cfg)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "HighCorrelation" in {f["kind"] for f in doc["indicators"]["flags"]}

    def test_default_thresholds_without_config(self, report_path, capsys):
        assert main(["analyze", str(report_path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["indicators"]["flags"] == []

    def test_flags_override_config_file(self, report_path, tmp_path, capsys):
        cfg = tmp_path / "cfg"
        cfg.write_text("r_min = -0.9\n")
        assert main(["analyze", str(report_path), "--config", str(cfg), "--r-min", "0.99"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "HighCorrelation" not in {f["kind"] for f in doc["indicators"]["flags"]}

    def test_env_var_fallback(self, report_path, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "cfg"
        cfg.write_text("r_min = -0.9\n")
        monkeypatch.setenv("PAPERTRAIL_CONFIG", str(cfg))
        assert main(["analyze", str(report_path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "HighCorrelation" in {f["kind"] for f in doc["indicators"]["flags"]}

    def test_unknown_config_key_is_usage_error(self, report_path, tmp_path, capsys):
        cfg = tmp_path / "cfg"
        cfg.write_text("nonsense = 1\n")
        assert main(["analyze", str(report_path), "--config", str(cfg)]) == 2

    def test_growth_window_flag(self, tmp_path, capsys):
        # the last 3 years grow monotonically, the last 5 do not
        path = tmp_path / "g.tsv"
        rows = ["Title\tPublication Year\tTotal Citations"]
        for i, n in enumerate([1, 1, 2, 3, 1, 2, 3]):
            rows.extend(f"p{i}-{k}\t{2000 + i}\t0" for k in range(n))
        path.write_text("\n".join(rows) + "\n")
        assert main(["analyze", str(path), "--growth-window", "3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "MonotoneGrowth" in {f["kind"] for f in doc["indicators"]["flags"]}
        assert main(["analyze", str(path), "--growth-window", "5"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "MonotoneGrowth" not in {f["kind"] for f in doc["indicators"]["flags"]}

    def test_prefer_reported_h(self, tmp_path, capsys):
        path = tmp_path / "rep.tsv"
        path.write_bytes(
            b"# h-index\t1\nTitle\tPublication Year\tTotal Citations\t2020\t2021\n"
            b"a\t2020\t5\t5\t0\nb\t2021\t4\t0\t4\n"
        )
        assert main(["analyze", str(path), "--prefer-reported-h"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["indicators"]["h_index"] == 1
        assert any("reported h-index" in w for w in doc["warnings"])


class TestCohort:
    def make_manifest(self, tmp_path, entries):
        manifest = tmp_path / "cohort.tsv"
        manifest.write_text("".join(f"{label}\t{path}\n" for label, path in entries))
        return manifest

    def test_five_profiles(self, tmp_path, capsys):
        entries = []
        for k in range(5):
            spec = papermill_spec(k) if k % 2 else conscientious_spec(k)
            path = write_synth(tmp_path, f"r{k}.tsv", spec)
            entries.append((f"R{k}", path.name))  # relative to the manifest dir
        manifest = self.make_manifest(tmp_path, entries)
        assert main(["cohort", str(manifest)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["points"]) == 5
        assert doc["power_law_fit"] is not None
        assert doc["linear_fit"] is not None
        assert doc["summary"]["n_points"] == 5
        assert doc["aggregation"] == "mean"
        assert [p["label"] for p in doc["points"]] == [f"R{k}" for k in range(5)]

    def test_bad_entry_reported_processing_continues(self, tmp_path, capsys):
        entries = []
        for k in range(4):
            path = write_synth(tmp_path, f"r{k}.tsv", papermill_spec(k))
            entries.append((f"R{k}", path.name))
        bad = tmp_path / "broken.tsv"
        bad.write_text("not a report\n")
        entries.insert(2, ("BAD", bad.name))
        manifest = self.make_manifest(tmp_path, entries)
        assert main(["cohort", str(manifest)]) == 0
        captured = capsys.readouterr()
        doc = json.loads(captured.out)
        assert len(doc["points"]) == 4
        assert len(doc["diagnostics"]) == 1
        assert doc["diagnostics"][0]["label"] == "BAD"
        assert "BAD" in captured.err

    def test_zero_parseable_profiles_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "broken.tsv"
        bad.write_text("junk\n")
        manifest = self.make_manifest(tmp_path, [("only", bad.name)])
        assert main(["cohort", str(manifest)]) == 1

    def test_svg_dir_produces_four_charts(self, tmp_path, capsys):
        entries = []
        for k in range(3):
            path = write_synth(tmp_path, f"r{k}.tsv", papermill_spec(k))
            entries.append((f"R{k}", path.name))
        manifest = self.make_manifest(tmp_path, entries)
        svg_dir = tmp_path / "figs"
        assert main(["cohort", str(manifest), "--json", str(tmp_path / "c.json"),
                     "--svg-dir", str(svg_dir)]) == 0
        names = sorted(p.name for p in svg_dir.iterdir())
        assert names == sorted([
            "i_vs_r.svg", "i_vs_r_bubble.svg", "i_vs_p_powerfit.svg", "m_vs_p_linfit.svg",
        ])
        for p in svg_dir.iterdir():
            ET.parse(p)

    def test_missing_manifest_exit_1(self, tmp_path, capsys):
        assert main(["cohort", str(tmp_path / "none.tsv")]) == 1


class TestSynth:
    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        assert main(["synth", "--archetype", "papermill", "--seed", "7", "-o", str(a)]) == 0
        assert main(["synth", "--archetype", "papermill", "--seed", "7", "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_synth_then_analyze_conscientious(self, tmp_path, capsys):
        out = tmp_path / "c.tsv"
        assert main(["synth", "--archetype", "conscientious", "--seed", "1", "-o", str(out)]) == 0
        assert main(["analyze", str(out)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "LowIntegrity" not in {f["kind"] for f in doc["indicators"]["flags"]}

    def test_missing_output_flag_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["synth", "--archetype", "papermill"])
        assert exc.value.code == 2

    def test_invalid_parameters_exit_2(self, tmp_path, capsys):
        assert main(["synth", "--archetype", "papermill", "--n-years", "4",
                     "-o", str(tmp_path / "x.tsv")]) == 2

    def test_custom_parameters(self, tmp_path, capsys):
        out = tmp_path / "p.csv"
        assert main(["synth", "--archetype", "papermill", "--seed", "3",
                     "--n-years", "10", "--peak-rate", "20", "--format", "csv",
                     "-o", str(out)]) == 0
        assert main(["analyze", str(out)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["indicators"]["max_pubs_in_year"] <= 24
