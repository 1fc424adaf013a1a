"""
Subcommand implementations.

Every command returns an exit code and writes one output: JSON embeds the
resolved configuration under "config"; CSV files get a sidecar
`<output>.config.json`. Writes are atomic.
"""

import argparse
import asyncio
import logging
import math
import sys
from pathlib import Path
from typing import Dict, Optional

import numpy as np
import pandas as pd

from src import __version__
from src.cli.parser import PARAM_FLAGS
from src.config import CACHE_DIR, CACHE_DIR_NAME, CACHE_DIR_OVERRIDE
from src.datapipe import Series, fetch_coinmetrics, kde, log_returns, read_csv_column
from src.distributions import ShapeParams, derivative_kernel, kernel
from src.exceptions import DomainError
from src.inference import (
    REFERENCE_MARKER,
    ExternalRow,
    FitOptions,
    compare_models,
    ks_statistic,
    mle_fit,
    standard_errors,
)
from src.models import ModelContract, get_model
from src.utils import frame_to_csv_text, to_json_text, write_csv, write_json, write_text_atomic

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3

PARAM_DEFAULTS = {"mu": 0.0, "sigma": 1.0, "alpha": 2.0, "beta": 2.0, "psi": 1.0, "nu": 10.0, "b": 1.0}
KERNEL_MODELS = ("btgn", "gn")
EVAL_TAIL_MASS = 1e-3
_GRID_MARGIN = 0.1


# Configuration echo and output


def resolved_config(args: argparse.Namespace, **extra) -> Dict[str, object]:
    config = {
        key: value for key, value in sorted(vars(args).items())
        if key not in ("handler", "verbose", "output") and not (key in PARAM_FLAGS and value is None)
    }
    config["version"] = __version__
    config.update(extra)
    return config


def emit(args: argparse.Namespace, frame: Optional[pd.DataFrame], payload: dict,
         config: dict, default_format: str) -> None:
    """
    Write the command result.

    Args:
        args: Parsed arguments (output path and format)
        frame: Tabular form of the result, used for CSV
        payload: JSON form of the result, without the configuration
        config: Resolved configuration
        default_format: Format used when --format is not given
    """
    fmt = args.format or default_format
    if fmt == "csv" and frame is None:
        raise DomainError(f"{args.command} output has no CSV form; use --format json")
    if args.output is None:
        text = frame_to_csv_text(frame) if fmt == "csv" else to_json_text({**payload, "config": config})
        sys.stdout.write(text)
        return
    output = Path(args.output)
    if fmt == "csv":
        write_csv(output, frame)
        write_json(output.with_name(output.name + ".config.json"), config)
    else:
        write_json(output, {**payload, "config": config})
    logger.info("Wrote %s", output)


# Shared resolution helpers


def resolve_params(model: ModelContract, args: argparse.Namespace, use_defaults: bool = True) -> Dict[str, float]:
    """Model parameters from the flags, defaulting unspecified ones; fixed ones are filled in."""
    given = {name: getattr(args, name) for name in model.param_names if getattr(args, name, None) is not None}
    unused = [f"--{name}" for name in PARAM_FLAGS
              if getattr(args, name, None) is not None and name not in model.param_names]
    if unused:
        raise DomainError(f"{model.name} does not take {', '.join(unused)}")
    params = dict(given)
    if use_defaults:
        for name in model.free_params:
            params.setdefault(name, PARAM_DEFAULTS[name])
    try:
        return model.complete(params)
    except DomainError as error:
        message = str(error)
        for name in model.param_names:
            if message.startswith(f"{name} "):
                raise DomainError(f"--{message}") from None
        raise


def load_series(args: argparse.Namespace) -> Series:
    column = args.column
    if isinstance(column, str) and column.lstrip("-").isdigit():
        column = int(column)
    series = read_csv_column(
        args.data,
        column=column,
        has_header=not args.no_header,
        delimiter=args.delimiter,
        skip_invalid=args.skip_invalid,
    )
    if args.transform == "logreturns":
        series = log_returns(series)
    logger.info("Loaded %d observations from %s", len(series), args.data)
    return series


def fit_options(args: argparse.Namespace) -> FitOptions:
    return FitOptions(max_iter=args.max_iter, tol=args.tol, n_restarts=args.restarts, seed=args.seed)


def _grid(start: float, stop: float, points: int) -> np.ndarray:
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise DomainError("--from and --to must be finite")
    if points > 1 and not start < stop:
        raise DomainError(f"--from ({start}) must be below --to ({stop})")
    return np.linspace(start, stop, points)


def _cache_dir(args: argparse.Namespace) -> Path:
    if args.cache_dir is not None:
        return Path(args.cache_dir)
    if CACHE_DIR_OVERRIDE is None and args.output is not None:
        return Path(args.output).parent / CACHE_DIR_NAME
    return Path(CACHE_DIR)


def _safe_log(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.where(values > 0.0, np.log(np.where(values > 0.0, values, 1.0)), np.nan)


# Subcommands


def cmd_eval(args: argparse.Namespace) -> int:
    """Density, CDF and log-density (or the kernel pair) on an even grid."""
    model = get_model(args.model)
    params = resolve_params(model, args)
    x_from = args.x_from if args.x_from is not None else model.quantile(EVAL_TAIL_MASS, params)
    x_to = args.x_to if args.x_to is not None else model.quantile(1.0 - EVAL_TAIL_MASS, params)
    x = _grid(x_from, x_to, args.points)

    if args.kernel_derivative:
        if model.name not in KERNEL_MODELS:
            raise DomainError(f"--kernel-derivative needs one of {', '.join(KERNEL_MODELS)}")
        shape = ShapeParams(params["alpha"], params.get("beta", params["alpha"]))
        z = (x - params["mu"]) / params["sigma"]
        frame = pd.DataFrame({
            "x": x,
            "kernel": np.asarray(kernel(z, shape), dtype=np.float64),
            "derivative_kernel": np.asarray(derivative_kernel(z, shape), dtype=np.float64),
        })
    else:
        log_pdf = np.asarray(model.log_pdf(x, params), dtype=np.float64)
        frame = pd.DataFrame({
            "x": x,
            "pdf": np.exp(log_pdf),
            "cdf": np.asarray(model.cdf(x, params), dtype=np.float64),
            "log_pdf": log_pdf,
        })

    config = resolved_config(args, params=params, x_from=float(x_from), x_to=float(x_to))
    emit(args, frame, {"grid": frame.to_dict(orient="list")}, config, default_format="csv")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    """Fit one model; the report is written even when the fit did not converge."""
    model = get_model(args.model)
    series = load_series(args)
    options = fit_options(args)
    report = mle_fit(model, series.values, options)

    errors = standard_errors(model, report, series.values).to_dict() if report.converged else {
        "available": False, "reason": "fit did not converge"
    }
    goodness = ks_statistic(series.values, lambda x: model.cdf(x, report.estimates))

    payload = {"fit": report.to_dict(), "standard_errors": errors, "ks": goodness}
    frame = pd.DataFrame({
        "parameter": list(report.estimates),
        "estimate": list(report.estimates.values()),
        "std_error": [errors.get(name, math.nan) if errors.get("available") else math.nan
                      for name in report.estimates],
    })
    config = resolved_config(args, n_obs=len(series), label=series.label)
    emit(args, frame, payload, config, default_format="json")

    if not report.converged:
        logger.error("%s did not converge; report written", model.name)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def comparison_frame(table) -> pd.DataFrame:
    """Tabular comparison with the literal reference marker in the 2 ln BF column."""
    return pd.DataFrame({
        "model": [row.model_name for row in table.rows],
        "log_likelihood": [row.log_likelihood for row in table.rows],
        "k": [row.n_free_params for row in table.rows],
        "bic": [row.bic for row in table.rows],
        "two_ln_bf": [REFERENCE_MARKER if row.is_reference else repr(float(row.two_ln_bf))
                      for row in table.rows],
        "category": ["" if row.is_reference else row.category.value for row in table.rows],
        "favours": ["" if row.is_reference else row.favours for row in table.rows],
        "converged": [row.converged for row in table.rows],
        "external": [row.external for row in table.rows],
    })


def cmd_compare(args: argparse.Namespace) -> int:
    """Fit the listed models and tabulate 2 ln BF against the reference."""
    models = [get_model(name) for name in args.models]
    external = [ExternalRow.parse(spec) for spec in args.external]
    series = load_series(args)
    table = compare_models(
        models,
        series.values,
        reference=args.reference,
        options=fit_options(args),
        external=external,
        max_workers=args.workers,
    )
    config = resolved_config(args, n_obs=len(series), label=series.label)
    emit(args, comparison_frame(table), {"comparison": table.to_dict()}, config, default_format="json")

    failed = [fit.model_name for fit in table.fits if not fit.converged]
    if failed:
        logger.error("Not converged: %s", ", ".join(failed))
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    """Seeded draws from a model."""
    model = get_model(args.model)
    params = resolve_params(model, args)
    rng = np.random.default_rng(args.seed)
    draws = np.asarray(model.sample(args.n, params, rng), dtype=np.float64).reshape(-1)
    frame = pd.DataFrame({"x": draws})
    config = resolved_config(args, params=params)
    emit(args, frame, {"samples": draws.tolist()}, config, default_format="csv")
    return EXIT_OK


def cmd_plotdata(args: argparse.Namespace) -> int:
    """KDE of the data next to a fitted (or flag-specified) model density."""
    model = get_model(args.model)
    series = load_series(args)
    flagged = any(getattr(args, name) is not None for name in PARAM_FLAGS)
    fit_payload = None
    if flagged:
        params = resolve_params(model, args)
    else:
        report = mle_fit(model, series.values, fit_options(args))
        params = report.estimates
        fit_payload = report.to_dict()

    low, high = float(series.values.min()), float(series.values.max())
    pad = _GRID_MARGIN * (high - low) if high > low else 1.0
    start = args.x_from if args.x_from is not None else low - pad
    stop = args.x_to if args.x_to is not None else high + pad
    x = _grid(start, stop, args.points)

    density = kde(series, x, bandwidth=args.bandwidth)["density"].to_numpy()
    fitted = np.exp(np.asarray(model.log_pdf(x, params), dtype=np.float64))
    columns = {"x": x, "kde": density, "fitted_pdf": fitted}
    if not args.no_log:
        columns["log_kde"] = _safe_log(density)
        columns["log_fitted"] = _safe_log(fitted)
    frame = pd.DataFrame(columns)

    config = resolved_config(args, params=params, n_obs=len(series))
    payload = {"grid": frame.to_dict(orient="list"), "fit": fit_payload}
    emit(args, frame, payload, config, default_format="csv")
    if fit_payload is not None and not fit_payload["converged"]:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_fetch(args: argparse.Namespace, transport=None) -> int:
    """Fetch (or replay from cache) a coinmetrics series, optionally as log returns."""
    cache_dir = _cache_dir(args)
    series, cache_file = asyncio.run(fetch_coinmetrics(
        args.asset,
        args.metric,
        args.start,
        args.end,
        endpoint=args.endpoint,
        cache_dir=cache_dir,
        offline=args.offline,
        transport=transport,
    ))
    if args.transform == "logreturns":
        series = log_returns(series)

    frame = series.to_frame()
    payload = {
        "series": {
            "label": series.label,
            "timestamps": frame["timestamp"].tolist() if "timestamp" in frame else None,
            "values": series.values.tolist(),
        },
        "cache_file": str(cache_file),
    }
    config = resolved_config(args, n_obs=len(series), cache_dir=str(cache_dir))
    emit(args, frame, payload, config, default_format="csv")
    return EXIT_OK


HANDLERS = {
    "eval": cmd_eval,
    "fit": cmd_fit,
    "compare": cmd_compare,
    "sample": cmd_sample,
    "fetch": cmd_fetch,
    "plotdata": cmd_plotdata,
}
