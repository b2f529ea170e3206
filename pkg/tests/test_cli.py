import json
import math

import numpy as np
import pytest

from itercap.channel import channel_to_json, identity_channel
from itercap.cli import main
from itercap.pauli import PauliChannel, to_dense


def write_channel(path, channel):
    path.write_text(json.dumps(channel_to_json(channel)))
    return str(path)


def amplitude_damping_channel():
    from itercap.channel import channel_from_kraus

    return channel_from_kraus([
        np.array([[1, 0], [0, np.sqrt(0.5)]], dtype=complex),
        np.array([[0, np.sqrt(0.5)], [0, 0]], dtype=complex),
    ])


class TestAnalyze:
    def test_pauli_channel_file(self, tmp_path, capsys):
        path = write_channel(tmp_path / "chan.json",
                             to_dense(PauliChannel(0.7, 0.1, 0.1, 0.1)))
        report = tmp_path / "report.json"
        code = main(["analyze", "--channel", path, "--json", str(report)])
        out = capsys.readouterr().out
        assert code == 0
        assert "GNS-symmetric: True" in out
        assert "K = 1" in out
        doc = json.loads(report.read_text())
        assert doc["structure"]["K"] == 1
        assert doc["structure"]["blocks"][0]["d"] == 1
        assert doc["lambda_gap"] == pytest.approx(-math.log(0.6), rel=1e-9)
        assert doc["Lambda"] == pytest.approx(2.0, rel=1e-9)

    def test_identity_channel_prints_inf(self, tmp_path, capsys):
        path = write_channel(tmp_path / "id.json", identity_channel(2))
        code = main(["analyze", "--channel", path])
        out = capsys.readouterr().out
        assert code == 0
        assert "lambda = inf" in out
        assert "zero-error threshold (1 copy): 0" in out

    def test_amplitude_damping_exits_2(self, tmp_path, capsys):
        path = write_channel(tmp_path / "ad.json", amplitude_damping_channel())
        code = main(["analyze", "--channel", path])
        out = capsys.readouterr().out
        assert code == 2
        assert "bounds inapplicable" in out

    def test_missing_file_exits_1(self, capsys):
        assert main(["analyze", "--channel", "/nonexistent/chan.json"]) == 1

    def test_malformed_json_exits_1(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["analyze", "--channel", str(bad)]) == 1

    def test_invalid_channel_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dim": 2, "kraus": [
            [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
        ]}))  # sum K^dag K = 2 I
        assert main(["analyze", "--channel", str(bad)]) == 2

    def test_closed_form_agreement(self, tmp_path, capsys):
        # analyze on to_dense(p) agrees with the pure-Pauli path within 1e-9
        from itercap.scenario import pauli_entropic_constants

        p = PauliChannel(0.7, 0.1, 0.1, 0.1)
        path = write_channel(tmp_path / "chan.json", to_dense(p))
        report = tmp_path / "report.json"
        assert main(["analyze", "--channel", path, "--json", str(report)]) == 0
        doc = json.loads(report.read_text())
        k = pauli_entropic_constants(p)
        assert doc["lambda_gap"] == pytest.approx(k.lambda_gap, rel=1e-9)
        assert doc["Lambda"] == pytest.approx(k.Lambda, rel=1e-9)
        assert doc["alpha_c_lb"] == pytest.approx(k.alpha_c_lb, rel=1e-9)


class TestPauliCrossover:
    def test_small_run_writes_csv_and_figure(self, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        code = main(["pauli-crossover", "--p", "0.9986,0.00047,0.00047,0.00047",
                     "--t-max", "200", "--out", str(out)])
        msg = capsys.readouterr().out
        assert code == 0
        assert out.exists()
        assert len(out.read_text().splitlines()) == 202
        assert (tmp_path / "curve.png").exists()
        assert "crossover level 1: none within grid" in msg

    def test_no_plot_flag(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["pauli-crossover", "--p", "0.9986,0.00047,0.00047,0.00047",
                     "--t-max", "20", "--out", str(out), "--no-plot"]) == 0
        assert not (tmp_path / "curve.png").exists()

    def test_gnuplot_flag(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["pauli-crossover", "--p", "0.9986,0.00047,0.00047,0.00047",
                     "--t-max", "20", "--out", str(out), "--no-plot", "--gnuplot"]) == 0
        assert (tmp_path / "curve.csv.gnuplot").exists()

    def test_crossover_reported(self, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        code = main(["pauli-crossover", "--p", "1,0,0,0", "--t-max", "10",
                     "--out", str(out), "--no-plot"])
        msg = capsys.readouterr().out
        assert code == 0
        assert "crossover level 1: t* = 2" in msg

    def test_bad_p_exits_2(self, tmp_path):
        assert main(["pauli-crossover", "--p", "0.5,0.1,0.1,0.1",
                     "--t-max", "10", "--out", str(tmp_path / "c.csv")]) == 2

    def test_unwritable_out_exits_1(self):
        assert main(["pauli-crossover", "--p", "1,0,0,0", "--t-max", "5",
                     "--out", "/nonexistent/dir/c.csv", "--no-plot"]) == 1


class TestCodeLogical:
    def test_prints_twelve_significant_digits(self, capsys):
        assert main(["code-logical", "--p", "0.97,0.01,0.01,0.01", "--level", "1"]) == 0
        out = capsys.readouterr().out
        assert "0.9915857152" in out

    def test_json_report(self, tmp_path):
        report = tmp_path / "q.json"
        assert main(["code-logical", "--p", "1,0,0,0", "--level", "2",
                     "--json", str(report)]) == 0
        doc = json.loads(report.read_text())
        assert doc["q"] == [1.0, 0.0, 0.0, 0.0]
        assert doc["level"] == 2


class TestZeroError:
    def test_fig1_threshold(self, capsys):
        assert main(["zero-error", "--p", "0.9986,0.00047,0.00047,0.00047"]) == 0
        out = capsys.readouterr().out
        assert "threshold(1) = 1960.32490421" in out

    def test_affine_in_copies(self, capsys):
        main(["zero-error", "--p", "0.9986,0.00047,0.00047,0.00047",
              "--n-copies", "10"])
        out = capsys.readouterr().out
        lam = -math.log(0.99812)
        expected = (10 * math.log(4.0) + math.log(10.0)) / lam
        assert f"threshold(10) = {expected:.12g}" in out

    def test_identity_channel_threshold_zero(self, capsys):
        assert main(["zero-error", "--p", "1,0,0,0"]) == 0
        out = capsys.readouterr().out
        assert "threshold(1) = 0" in out

    def test_channel_file_path(self, tmp_path, capsys):
        path = write_channel(tmp_path / "chan.json",
                             to_dense(PauliChannel(0.7, 0.1, 0.1, 0.1)))
        assert main(["zero-error", "--channel", path]) == 0
        out = capsys.readouterr().out
        expected = math.log(40.0) / -math.log(0.6)
        value = float(out.split("threshold(1) = ")[1].split()[0])
        assert value == pytest.approx(expected, rel=1e-9)
