import json
import logging

import pytest
from typer.testing import CliRunner

from rtgq import __version__
from rtgq.cli import app, main

runner = CliRunner()

ZONE = ["--lambda", "0.5", "--theta", "1.4", "--service", "exp:1.0"]


@pytest.fixture(autouse=True)
def quiet_logs():
    # keep INFO records of the solvers out of the captured stdout/stderr mix
    logging.getLogger("rtgq").setLevel(logging.WARNING)
    yield
    logging.getLogger("rtgq").setLevel(logging.INFO)


def records(result) -> list[dict]:
    return [json.loads(line) for line in result.stdout.splitlines() if line.startswith("{")]


def record(result) -> dict:
    return records(result)[-1]


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert f"rtgq {__version__}" in result.stdout


def test_no_command_prints_usage():
    result = runner.invoke(app, [])
    assert result.exit_code == 0
    assert "validate" in result.output


def test_unknown_option_is_a_usage_error():
    result = runner.invoke(app, ["analyze", "--mu", "2"])
    assert result.exit_code == 2


class TestAnalyze:
    def test_record(self):
        result = runner.invoke(app, ["analyze", *ZONE])
        assert result.exit_code == 0, result.output
        out = record(result)
        assert out["stable"] is True
        assert out["rho"] == pytest.approx(0.5)
        assert out["n_mean"] == pytest.approx(1.357143, abs=1e-6)
        assert out["w_mean"] == pytest.approx(2.714286, abs=1e-6)
        assert out["pi0"] == pytest.approx(0.390356, abs=1e-6)

    def test_default_theta(self):
        out = record(runner.invoke(app, ["analyze", "--lambda", "0.5", "--service", "exp:1.0"]))
        assert out["n_mean"] == pytest.approx(1.357143, abs=1e-6)

    def test_unstable_zone_reports_rho(self):
        result = runner.invoke(app, ["analyze", "--lambda", "1.2", "--service", "exp:1.0"])
        assert result.exit_code == 0
        out = record(result)
        assert out["rho"] == pytest.approx(1.2)
        assert out["stable"] is False
        assert out["n_mean"] is None

    def test_scenario_file(self, tmp_path):
        path = tmp_path / "zone.json"
        path.write_text('{"lambda": 0.5, "theta": 1.4, "service": "det:1.0"}')
        out = record(runner.invoke(app, ["analyze", "--scenario", str(path)]))
        assert out["n_mean"] == pytest.approx(1.107143, abs=1e-6)

    def test_scenario_file_excludes_flags(self, tmp_path):
        path = tmp_path / "zone.json"
        path.write_text('{"lambda": 0.5, "theta": 1.4, "service": "det:1.0"}')
        result = runner.invoke(app, ["analyze", "--scenario", str(path), "--lambda", "0.3"])
        assert result.exit_code == 2
        assert "rtgq-error[validation]: --scenario cannot be combined with --lambda" in result.output

    def test_missing_rate(self):
        result = runner.invoke(app, ["analyze", "--service", "exp:1.0"])
        assert result.exit_code == 2
        assert "rtgq-error[validation]: missing --lambda" in result.output

    @pytest.mark.parametrize(
        "args, code",
        [
            (["--lambda=-1", "--service", "exp:1.0"], "validation"),
            (["--lambda", "0.5", "--service", "weibull:1"], "validation"),
            (["--lambda", "0.5", "--theta", "0", "--service", "exp:1.0"], "validation"),
        ],
    )
    def test_invalid_flags(self, args, code):
        result = runner.invoke(app, ["analyze", *args])
        assert result.exit_code == 2
        lines = [line for line in result.output.splitlines() if line.startswith("rtgq-error[")]
        assert len(lines) == 1
        assert lines[0].startswith(f"rtgq-error[{code}]: ")

    def test_malformed_scenario_file(self, tmp_path):
        path = tmp_path / "zone.json"
        path.write_text('{"lambda": 0.5,\n "theta": }')
        result = runner.invoke(app, ["analyze", "--scenario", str(path)])
        assert result.exit_code == 2
        assert "rtgq-error[parse]: line 2, column" in result.output

    def test_unknown_field_in_file(self, tmp_path):
        path = tmp_path / "zone.json"
        path.write_text('{"lambda": 0.5, "theta": 1.4, "service": "exp:1.0", "cranes": 2}')
        result = runner.invoke(app, ["analyze", "--scenario", str(path)])
        assert result.exit_code == 2
        assert "rtgq-error[unknown-field]: unknown field(s) `cranes`" in result.output

    def test_derivative_check(self):
        result = runner.invoke(app, ["analyze", *ZONE, "--check-derivative"])
        assert result.exit_code == 0
        assert "f'(1) numeric=" in result.output


class TestChain:
    def test_record(self, tmp_path):
        pi_path = tmp_path / "pi.csv"
        result = runner.invoke(app, ["chain", *ZONE, "--dump-pi", str(pi_path)])
        assert result.exit_code == 0, result.output
        out = record(result)
        assert out["pi0"] == pytest.approx(0.390356, abs=1e-6)
        assert out["chain_mean"] == pytest.approx(1.357143, abs=1e-6)
        assert out["residual"] <= 1e-12
        assert out["truncation_suspect"] is False
        lines = pi_path.read_text().splitlines()
        assert lines[0] == "state,probability"
        assert len(lines) == out["K"] + 2

    def test_fixed_truncation(self):
        out = record(runner.invoke(app, ["chain", *ZONE, "--truncation", "100"]))
        assert out["K"] == 100

    def test_short_truncation_is_marked(self):
        heavy = ["--lambda", "0.9", "--theta", "1.4", "--service", "exp:1.0"]
        result = runner.invoke(app, ["chain", *heavy, "--truncation", "8"])
        assert result.exit_code == 0, result.output
        out = record(result)
        assert out["K"] == 8
        assert out["truncation_suspect"] is True

    def test_bad_truncation(self):
        result = runner.invoke(app, ["chain", *ZONE, "--truncation", "lots"])
        assert result.exit_code == 2

    def test_unstable(self):
        result = runner.invoke(app, ["chain", "--lambda", "1.2", "--service", "exp:1.0"])
        assert result.exit_code == 1
        assert "rtgq-error[unstable]: rho=1.2 >= 1" in result.output


class TestSimulate:
    SHORT = ["--seed", "7", "--departures", "20000", "--batches", "20"]

    def test_record(self):
        result = runner.invoke(app, ["simulate", *ZONE, *self.SHORT])
        assert result.exit_code == 0, result.output
        out = record(result)
        assert out["departures"] == 20_000
        assert out["seed"] == 7
        assert out["n_mean"] == pytest.approx(1.357143, rel=0.15)
        assert out["n_ci_half"] > 0

    def test_repeatable(self):
        first = runner.invoke(app, ["simulate", *ZONE, *self.SHORT])
        second = runner.invoke(app, ["simulate", *ZONE, *self.SHORT])
        assert records(first) == records(second)

    def test_replications(self):
        result = runner.invoke(app, ["simulate", *ZONE, *self.SHORT, "--replications", "2", "--workers", "1"])
        assert result.exit_code == 0
        assert len(records(result)) == 2

    def test_bad_batches(self):
        result = runner.invoke(app, ["simulate", *ZONE, "--departures", "1000", "--batches", "7"])
        assert result.exit_code == 2
        assert "rtgq-error[config]: " in result.output
        assert "batches must be >= 10" in result.output


class TestSweep:
    def test_csv_and_script(self, tmp_path):
        out = tmp_path / "sweep.csv"
        script = tmp_path / "sweep.gp"
        args = ["sweep", "--rho-min", "0.1", "--rho-max", "0.9", "--steps", "5", "--theta", "1.4"]
        result = runner.invoke(app, [*args, "--out", str(out), "--gnuplot", str(script), "--workers", "1", "-q"])
        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        assert lines[0].split(",") == [
            "rho", "lambda", "n_mean_analytic", "w_mean_analytic", "n_mean_chain",
            "n_mean_sim", "n_ci_half", "w_mean_sim", "w_ci_half",
        ]
        assert len(lines) == 6
        n = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(a < b for a, b in zip(n, n[1:]))
        assert "sweep.csv" in script.read_text()

    def test_simulated_sweep_is_byte_stable(self, tmp_path):
        args = ["sweep", "--rho-min", "0.3", "--rho-max", "0.5", "--steps", "2", "--no-chain", "--simulate"]
        args += ["--seed", "3", "--departures", "20000", "--batches", "20", "--workers", "1", "-q"]
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert runner.invoke(app, [*args, "--out", str(first)]).exit_code == 0
        assert runner.invoke(app, [*args, "--out", str(second)]).exit_code == 0
        assert first.read_bytes() == second.read_bytes()
        assert ",," not in first.read_text().splitlines()[1].split(",", 5)[-1]

    def test_rejects_unstable_grid(self, tmp_path):
        args = ["sweep", "--rho-min", "0.5", "--rho-max", "1.2", "--steps", "3", "--out", str(tmp_path / "x.csv")]
        result = runner.invoke(app, args)
        assert result.exit_code == 2
        assert "rtgq-error[validation]: --rho-max" in result.output


class TestValidate:
    def test_pass(self):
        args = ["validate", *ZONE, "--seed", "1", "--departures", "100000", "--batches", "20"]
        result = runner.invoke(app, [*args, "--rel-tol", "0.05", "--no-require-ci"])
        assert result.exit_code == 0, result.output
        assert record(result)["verdict"] == "pass"

    def test_unstable_fails(self):
        args = ["validate", "--lambda", "1.2", "--service", "exp:1.0", "--departures", "20000", "--batches", "20"]
        result = runner.invoke(app, args)
        assert result.exit_code == 1
        assert record(result)["verdict"] == "fail"
        assert "rtgq-error[unstable]: " in result.output

    def test_bad_tolerance(self):
        result = runner.invoke(app, ["validate", *ZONE, "--rel-tol", "0"])
        assert result.exit_code == 2
        assert "rtgq-error[config]: --rel-tol" in result.output


class TestMain:
    def run_main(self, monkeypatch, *args: str) -> int:
        monkeypatch.setattr("sys.argv", ["rtgq", *args])
        with pytest.raises(SystemExit) as exc:
            main()
        return int(exc.value.code or 0)

    def test_success(self, monkeypatch, capsys):
        assert self.run_main(monkeypatch, "analyze", *ZONE) == 0
        assert json.loads(capsys.readouterr().out.strip().splitlines()[-1])["stable"] is True

    def test_usage_error_is_a_diagnostic(self, monkeypatch, capsys):
        assert self.run_main(monkeypatch, "chain", *ZONE, "--truncation", "lots") == 2
        err = capsys.readouterr().err
        assert err.startswith("rtgq-error[usage]: ")
        assert len(err.strip().splitlines()) == 1

    def test_domain_error(self, monkeypatch, capsys):
        assert self.run_main(monkeypatch, "chain", "--lambda", "2", "--service", "exp:1.0") == 1
        assert "rtgq-error[unstable]" in capsys.readouterr().err
