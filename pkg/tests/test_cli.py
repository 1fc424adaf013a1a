""" Command line, run in-process """

import json
import math

import numpy as np
import pandas as pd
import pytest
from scipy import special, stats

from src.cli import EXIT_ERROR, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_USAGE, main
from src.datapipe import cache_path, request_url
from src.models import get_model

ENDPOINT = "https://example.test/v2"


@pytest.fixture
def normal_csv(tmp_path):
    data = np.random.default_rng(42).normal(1.0, 2.0, 5000)
    path = tmp_path / "normal.csv"
    pd.DataFrame({"x": data}).to_csv(path, index=False)
    return path


def _run(*argv):
    return main([str(arg) for arg in argv])


# eval


def test_eval_grid_matches_density(tmp_path):
    out = tmp_path / "grid.csv"
    code = _run("eval", "--model", "btgn", "--alpha", 2, "--beta", 2,
                "--from", -4, "--to", 4, "--points", 5, "--output", out)
    assert code == EXIT_OK
    grid = pd.read_csv(out)
    assert list(grid.columns) == ["x", "pdf", "cdf", "log_pdf"]
    assert len(grid) == 5
    assert grid["pdf"][2] == pytest.approx(0.564190, abs=1e-6)
    assert grid["cdf"][2] == pytest.approx(0.5)
    config = json.loads((tmp_path / "grid.csv.config.json").read_text())
    assert config["params"] == {"mu": 0.0, "sigma": 1.0, "alpha": 2.0, "beta": 2.0}
    assert config["command"] == "eval"


def test_eval_kernel_derivative(tmp_path):
    out = tmp_path / "kernel.csv"
    code = _run("eval", "--kernel-derivative", "--alpha", 2, "--beta", 2,
                "--from", 0.5, "--to", 1.5, "--points", 3, "--output", out)
    assert code == EXIT_OK
    grid = pd.read_csv(out)
    assert list(grid.columns) == ["x", "kernel", "derivative_kernel"]
    x = grid["x"].to_numpy()
    assert np.allclose(grid["derivative_kernel"], -2.0 * x * np.exp(-x ** 2), rtol=1e-12)


def test_eval_json_embeds_config(tmp_path):
    out = tmp_path / "grid.json"
    assert _run("eval", "--model", "normal", "--points", 3, "--format", "json", "--output", out) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["config"]["model"] == "normal"
    assert len(payload["grid"]["x"]) == 3


def test_eval_default_grid_spans_the_model_quantiles(tmp_path):
    out = tmp_path / "grid.json"
    assert _run("eval", "--model", "normal", "--points", 5, "--format", "json", "--output", out) == EXIT_OK
    payload = json.loads(out.read_text())
    x = payload["grid"]["x"]
    assert x[0] == pytest.approx(special.ndtri(0.001), rel=1e-12)
    assert x[-1] == pytest.approx(-special.ndtri(0.001), rel=1e-12)
    assert payload["config"]["x_from"] == pytest.approx(x[0])
    assert payload["config"]["x_to"] == pytest.approx(x[-1])


def test_eval_default_grid_follows_heavy_tails(tmp_path):
    out = tmp_path / "grid.json"
    assert _run("eval", "--model", "laplace", "--b", 2, "--points", 3, "--format", "json", "--output", out) == EXIT_OK
    x = json.loads(out.read_text())["grid"]["x"]
    assert x[0] == pytest.approx(stats.laplace(0.0, 2.0).ppf(0.001), rel=1e-12)
    assert x[1] == pytest.approx(0.0, abs=1e-12)


def test_eval_rejects_non_numeric_flag(capsys):
    assert _run("eval", "--alpha", "two") == EXIT_USAGE
    assert "invalid float value" in capsys.readouterr().err


def test_eval_names_the_offending_flag(tmp_path, capsys):
    assert _run("eval", "--sigma", -1, "--output", tmp_path / "g.csv") == EXIT_ERROR
    assert "--sigma" in capsys.readouterr().err


def test_eval_rejects_parameters_the_model_does_not_take(tmp_path, capsys):
    assert _run("eval", "--model", "normal", "--psi", 2, "--output", tmp_path / "g.csv") == EXIT_ERROR
    assert "--psi" in capsys.readouterr().err


def test_unknown_model_is_a_usage_error(capsys):
    assert _run("eval", "--model", "skew_t") == EXIT_USAGE
    err = capsys.readouterr().err
    assert "tpbtgn" in err and "normal" in err


# sample


def test_sample_is_seed_reproducible(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        assert _run("sample", "--model", "tpbtgn", "--psi", 1.5, "--n", 10, "--seed", 7, "--output", out) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert len(pd.read_csv(first)) == 10


def test_sample_zero_draws_writes_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    assert _run("sample", "--n", 0, "--output", out) == EXIT_OK
    assert out.read_text() == "x\n"


@pytest.mark.slow
def test_sample_variance_of_btgn(tmp_path):
    out = tmp_path / "draws.csv"
    assert _run("sample", "--model", "btgn", "--alpha", 2, "--beta", 2, "--n", 100_000, "--output", out) == EXIT_OK
    draws = pd.read_csv(out)["x"].to_numpy()
    standard_error = 0.5 * math.sqrt(2.0 / draws.size)
    assert abs(draws.var() - 0.5) < 3.0 * standard_error


# fit


def test_fit_recovers_normal_and_is_deterministic(tmp_path, normal_csv):
    first, second = tmp_path / "fit1.json", tmp_path / "fit2.json"
    for out in (first, second):
        code = _run("fit", "--model", "normal", "--data", normal_csv, "--column", "x",
                    "--restarts", 2, "--output", out)
        assert code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    payload = json.loads(first.read_text())
    assert payload["fit"]["converged"]
    assert payload["fit"]["estimates"]["mu"] == pytest.approx(1.0, abs=0.1)
    assert payload["standard_errors"]["available"]
    assert payload["ks"]["pvalue"] > 0.001
    assert payload["config"]["restarts"] == 2
    assert payload["config"]["seed"] == 20190101


def test_fit_non_convergence_still_writes_report(tmp_path, normal_csv):
    out = tmp_path / "fit.json"
    code = _run("fit", "--model", "btgn", "--data", normal_csv, "--max-iter", 2, "--restarts", 1, "--output", out)
    assert code == EXIT_NOT_CONVERGED
    assert json.loads(out.read_text())["fit"]["converged"] is False


def test_fit_missing_data_file(tmp_path, capsys):
    assert _run("fit", "--model", "normal", "--data", tmp_path / "nope.csv") == EXIT_ERROR
    assert "not found" in capsys.readouterr().err


def test_fit_on_log_returns(tmp_path):
    prices = tmp_path / "prices.csv"
    pd.DataFrame({"price": 100.0 * np.exp(np.cumsum(np.random.default_rng(1).normal(0, 0.02, 400)))}).to_csv(
        prices, index=False
    )
    out = tmp_path / "fit.json"
    assert _run("fit", "--model", "normal", "--data", prices, "--transform", "logreturns",
                "--restarts", 1, "--output", out) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["fit"]["n_obs"] == 399
    assert payload["fit"]["estimates"]["sigma"] == pytest.approx(0.02, rel=0.15)


# compare


def test_compare_table_marks_reference(tmp_path):
    data = np.random.default_rng(3).laplace(0.0, 1.0, 2000)
    path = tmp_path / "lap.csv"
    pd.DataFrame({"x": data}).to_csv(path, index=False)
    out = tmp_path / "table.csv"
    code = _run("compare", "--data", path, "--models", "normal,laplace", "--restarts", 1,
                "--external", "ST:-3500:4", "--format", "csv", "--output", out)
    assert code == EXIT_OK
    table = pd.read_csv(out, dtype={"two_ln_bf": str})
    assert table["model"].tolist()[0] == "laplace"
    assert table.loc[table["model"] == "laplace", "two_ln_bf"].item() == "H0"
    st = table.loc[table["model"] == "ST"]
    assert bool(st["external"].item())
    assert st["bic"].item() == pytest.approx(4 * math.log(2000) + 7000.0)
    normal = table.loc[table["model"] == "normal"]
    assert normal["category"].item() == "Very strong"


def test_compare_json_output(tmp_path, normal_csv):
    out = tmp_path / "table.json"
    code = _run("compare", "--data", normal_csv, "--models", "normal,laplace", "--restarts", 1,
                "--workers", 2, "--output", out)
    assert code == EXIT_OK
    comparison = json.loads(out.read_text())["comparison"]
    assert comparison["reference_model"] == "normal"
    assert [row["marker"] for row in comparison["rows"]] == ["H0", ""]


def test_compare_rejects_unknown_model_list(normal_csv, capsys):
    assert _run("compare", "--data", normal_csv, "--models", "normal,bogus") == EXIT_USAGE
    assert "bogus" in capsys.readouterr().err


@pytest.mark.slow
def test_compare_flags_normal_on_two_piece_data(tmp_path):
    model = get_model("tpbtgn")
    params = model.complete({"mu": 0.0, "sigma": 1.0, "alpha": 2.0, "beta": 1.0, "psi": 1.5})
    data = model.sample(5000, params, np.random.default_rng(17))
    path = tmp_path / "tp.csv"
    pd.DataFrame({"x": data}).to_csv(path, index=False)
    out = tmp_path / "table.json"
    code = _run("compare", "--data", path, "--restarts", 1, "--output", out)
    assert code == EXIT_OK
    comparison = json.loads(out.read_text())["comparison"]
    assert comparison["reference_model"] in ("tptan", "tpbtgn")
    normal = next(row for row in comparison["rows"] if row["model_name"] == "normal")
    assert normal["category"] == "Very strong"


# plotdata


def test_plotdata_with_given_parameters(tmp_path, normal_csv):
    out = tmp_path / "plot.csv"
    code = _run("plotdata", "--model", "normal", "--data", normal_csv, "--mu", 1, "--sigma", 2,
                "--points", 50, "--output", out)
    assert code == EXIT_OK
    grid = pd.read_csv(out)
    assert list(grid.columns) == ["x", "kde", "fitted_pdf", "log_kde", "log_fitted"]
    assert len(grid) == 50
    positive = grid["kde"] > 0
    assert np.allclose(grid.loc[positive, "log_kde"], np.log(grid.loc[positive, "kde"]))
    assert np.allclose(grid["log_fitted"], np.log(grid["fitted_pdf"]))
    assert np.max(np.abs(grid["kde"] - grid["fitted_pdf"])) < 0.05


def test_plotdata_fits_when_no_parameters_given(tmp_path, normal_csv):
    out = tmp_path / "plot.json"
    code = _run("plotdata", "--model", "normal", "--data", normal_csv, "--points", 20,
                "--restarts", 1, "--no-log", "--format", "json", "--output", out)
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["fit"]["converged"]
    assert set(payload["grid"]) == {"x", "kde", "fitted_pdf"}


# fetch


def _warm_cache(cache_dir, body):
    params = {"metrics": "PriceUSD", "start": "2018-12-13", "end": "2018-12-17"}
    path = cache_path(cache_dir, request_url(ENDPOINT, "btc"), params)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(body)


def _fetch_args(cache_dir, out, *extra):
    return ["fetch", "--asset", "btc", "--metric", "PriceUSD", "--start", "2018-12-13", "--end", "2018-12-17",
            "--endpoint", ENDPOINT, "--cache-dir", cache_dir, "--offline", "--output", out, *extra]


def test_fetch_offline_with_warm_cache_and_log_returns(tmp_path, coinmetrics_body):
    _warm_cache(tmp_path / "cache", coinmetrics_body)
    out = tmp_path / "returns.csv"
    code = _run(*_fetch_args(tmp_path / "cache", out, "--transform", "logreturns"))
    assert code == EXIT_OK
    series = pd.read_csv(out)
    assert list(series.columns) == ["timestamp", "logret_PriceUSD"]
    assert len(series) == 4
    assert series["logret_PriceUSD"][0] == pytest.approx(math.log(3251.76 / 3487.94))


def test_fetch_output_feeds_fit(tmp_path, coinmetrics_body):
    _warm_cache(tmp_path / "cache", coinmetrics_body)
    prices = tmp_path / "prices.csv"
    assert _run(*_fetch_args(tmp_path / "cache", prices)) == EXIT_OK
    out = tmp_path / "fit.json"
    assert _run("fit", "--model", "normal", "--data", prices, "--transform", "logreturns",
                "--restarts", 1, "--output", out) == EXIT_OK
    assert json.loads(out.read_text())["fit"]["n_obs"] == 4


def test_fetch_offline_with_cold_cache_fails(tmp_path, capsys):
    code = _run(*_fetch_args(tmp_path / "cache", tmp_path / "out.csv"))
    assert code == EXIT_ERROR
    assert "offline" in capsys.readouterr().err
    assert not (tmp_path / "out.csv").exists()


def test_fetch_caches_beside_the_output_by_default(tmp_path, coinmetrics_body, monkeypatch):
    monkeypatch.setattr("src.cli.commands.CACHE_DIR_OVERRIDE", None)
    run_dir = tmp_path / "run"
    _warm_cache(run_dir / ".btgn_cache", coinmetrics_body)
    out = run_dir / "prices.json"
    code = _run("fetch", "--asset", "btc", "--metric", "PriceUSD", "--start", "2018-12-13", "--end", "2018-12-17",
                "--endpoint", ENDPOINT, "--offline", "--format", "json", "--output", out)
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["config"]["cache_dir"] == str(run_dir / ".btgn_cache")
    assert payload["cache_file"].startswith(str(run_dir / ".btgn_cache"))


def test_fetch_cache_dir_flag_wins_over_output_location(tmp_path, coinmetrics_body, monkeypatch):
    monkeypatch.setattr("src.cli.commands.CACHE_DIR_OVERRIDE", None)
    _warm_cache(tmp_path / "elsewhere", coinmetrics_body)
    out = tmp_path / "run" / "prices.csv"
    out.parent.mkdir()
    assert _run(*_fetch_args(tmp_path / "elsewhere", out)) == EXIT_OK
    assert not (out.parent / ".btgn_cache").exists()
