import json

import numpy as np
import pytest

from lfsrx import bitio
from lfsrx.cli import main
from lfsrx.extractors import LfsrGenerator, full_period_stream
from lfsrx.report import PRESETS, REPORT_KEYS, build_report, generator_info
from lfsrx.series import read_csv


class TestBitio:
    def test_ascii_line_length(self):
        text = bitio.to_ascii(np.ones(130, dtype=np.uint8))
        lines = text.splitlines()
        assert [len(l) for l in lines] == [64, 64, 2]
        assert text.endswith("\n")

    def test_packed_lsb_first(self):
        assert bitio.to_packed([1, 0, 0, 0, 0, 0, 0, 0]) == b"\x01"
        assert bitio.to_packed([0, 1, 1]) == b"\x06"
        assert bitio.to_packed([1] * 9) == b"\xff\x01"

    @pytest.mark.parametrize("fmt", bitio.FORMATS)
    def test_round_trip(self, fmt):
        bits = np.random.default_rng(1).integers(0, 2, 1000).astype(np.uint8)
        data = bitio.encode(bits, fmt)
        assert np.array_equal(bitio.decode(data, fmt, 1000), bits)
        assert np.array_equal(bitio.decode(data, "auto", 1000), bits)

    def test_bad_ascii(self):
        with pytest.raises(ValueError):
            bitio.from_ascii("0102")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestGenerate:
    def test_ascii_count(self, capsys):
        code, out, _ = run(capsys, "generate", "--core", "slfsr16", "--extractor", "vn",
                           "--seed", "0x0001", "--count", "8", "--format", "ascii")
        assert code == 0
        assert len(out.strip()) == 8 and set(out.strip()) <= {"0", "1"}

    def test_matches_library(self, capsys):
        code, out, _ = run(capsys, "generate", "--preset", "slfsr16-re", "--count", "300")
        expected = LfsrGenerator(extractor="run").generate(300)
        assert bitio.from_ascii(out).tolist() == expected.tolist()

    def test_full_period_3be(self, capsys):
        code, out, _ = run(capsys, "generate", "--core", "elfsr16", "--extractor", "3be", "--full-period")
        assert code == 0
        assert bitio.from_ascii(out).size == 81920

    def test_zero_seed(self, capsys):
        code, out, err = run(capsys, "generate", "--core", "slfsr16", "--extractor", "vn", "--seed", "0x0000")
        assert code != 0
        assert "SeedError" in err and out == ""

    def test_three_bit_on_standard_rejected(self, capsys):
        code, _, err = run(capsys, "generate", "--core", "slfsr", "--extractor", "3be")
        assert code != 0 and "ConfigError" in err

    def test_custom_width_needs_taps(self, capsys):
        code, _, err = run(capsys, "generate", "--core", "slfsr", "--width", "8", "--extractor", "vn")
        assert code != 0
        code, out, _ = run(capsys, "generate", "--core", "slfsr", "--width", "8", "--taps", "4,5,6,8",
                           "--extractor", "vn", "--count", "16")
        assert code == 0 and len(out.strip()) == 16

    def test_packed_file(self, tmp_path, capsys):
        path = tmp_path / "s.bin"
        code, out, _ = run(capsys, "generate", "--preset", "elfsr16-3be", "--count", "20000",
                           "--format", "packed", "--out", str(path))
        assert code == 0 and out == ""
        assert path.stat().st_size == 2500


class TestAnalyze:
    def test_full_period_report(self, tmp_path, capsys):
        code, _, _ = run(capsys, "analyze", "--preset", "slfsr16-vne", "--full-period", "--out", str(tmp_path))
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert set(report) == set(REPORT_KEYS)
        stats = report["period_stats"]
        assert (stats["valid"], stats["zeros"], stats["ones"]) == (32768, 16384, 16384)
        assert stats["efficiency"] == {"numerator": 16384, "denominator": 65535, "value": 16384 / 65535}
        assert report["fips"] is None
        names = {p.name for p in tmp_path.glob("*.csv")}
        assert names == {
            "fig07_patterns.csv", "fig08_pattern_hist.csv", "fig09_runs_zeros.csv", "fig09_runs_ones.csv",
            "fig10_correlation.csv", "fig11_spectrum.csv", "fig12_complexity.csv", "fig13_cost.csv",
        }
        table = read_csv(tmp_path / "fig13_cost.csv")
        assert table.x.min() == 0 and table.y[2] == 16384
        header = (tmp_path / "fig10_correlation.csv").read_text().splitlines()[0]
        assert header == "lag,r"

    def test_fips_pass(self, capsys):
        code, out, err = run(capsys, "analyze", "--preset", "slfsr16-re", "--fips")
        assert code == 0
        report = json.loads(out)
        assert report["fips"]["passed"] is True
        assert all(report[k] is None for k in ("period_stats", "patterns", "correlation", "cost"))
        assert "monobit" in err

    def test_fips_failure_exit_status(self, tmp_path, capsys):
        path = tmp_path / "zeros.txt"
        path.write_text("0" * 20000)
        code, out, _ = run(capsys, "analyze", "--input", str(path), "--fips")
        assert code == 1
        assert json.loads(out)["fips"]["passed"] is False

    def test_short_input(self, tmp_path, capsys):
        path = tmp_path / "short.txt"
        path.write_text(bitio.to_ascii(np.zeros(19999, dtype=np.uint8)))
        code, _, err = run(capsys, "analyze", "--input", str(path), "--fips")
        assert code != 0 and "LengthError" in err

    def test_full_period_figure_on_window(self, capsys):
        code, _, err = run(capsys, "analyze", "--preset", "slfsr16-vne", "--figures", "10")
        assert code != 0 and "UsageError" in err

    def test_complexity_allowed_on_window(self, capsys):
        code, out, _ = run(capsys, "analyze", "--preset", "slfsr16-vne", "--count", "4096", "--figures", "12")
        assert code == 0
        assert json.loads(out)["complexity"]["length"] == 4096

    def test_cost_needs_generator(self, tmp_path, capsys):
        path = tmp_path / "x.txt"
        path.write_text("01" * 100)
        code, _, err = run(capsys, "analyze", "--input", str(path), "--full-period", "--figures", "13")
        assert code != 0 and "UsageError" in err

    @pytest.mark.parametrize("fmt", ["ascii", "packed"])
    def test_round_trip(self, tmp_path, capsys, fmt):
        bits_file = tmp_path / f"s.{fmt}"
        run(capsys, "generate", "--preset", "elfsr16-3be", "--full-period", "--format", fmt, "--out", str(bits_file))
        out_dir = tmp_path / "file"
        code, _, _ = run(capsys, "analyze", "--input", str(bits_file), "--format", fmt, "--full-period",
                         "--figures", "7,8,9,10,11,12", "--fips", "--out", str(out_dir))
        assert code == 0
        from_file = json.loads((out_dir / "report.json").read_text())

        stream, _ = full_period_stream(PRESETS["elfsr16-3be"].spec())
        in_process, _ = build_report(stream.valid_bits, full_period=True, fips=True,
                                     figures=[7, 8, 9, 10, 11, 12], generator=generator_info(None))
        for key in ("fips", "patterns", "run_lengths", "correlation", "spectrum", "complexity"):
            assert from_file[key] == json.loads(json.dumps(in_process[key])), key
        for key in ("valid", "zeros", "ones"):
            assert from_file["period_stats"][key] == stream.stats().as_dict()[key]


class TestPresets:
    def test_listing(self, capsys):
        code, out, _ = run(capsys, "presets")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 3
        assert any(l.startswith("elfsr16-3be: extended core, period 65536") for l in lines)
        assert any(l.startswith("slfsr16-vne: standard core, period 65535") for l in lines)
        assert all("{11,13,14,16}" in l for l in lines)
