""" Argument parser for the btgn command line """

import argparse

from src.config import (
    APP_NAME,
    COINMETRICS_ENDPOINT,
    DEFAULT_SEED,
    FIT_MAX_ITER,
    FIT_RESTARTS,
    FIT_TOL,
)
from src.models import MODEL_NAMES

PARAM_FLAGS = ("mu", "sigma", "alpha", "beta", "psi", "nu", "b")
DEFAULT_COMPARE_MODELS = ("normal", "tptan", "tpbtgn")
TRANSFORMS = ("none", "logreturns")
FORMATS = ("json", "csv")


def model_list(text: str) -> list:
    """Comma-separated zoo model names."""
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in MODEL_NAMES]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown model(s) {', '.join(unknown)}; valid models: {', '.join(MODEL_NAMES)}"
        )
    if not names:
        raise argparse.ArgumentTypeError("at least one model name is required")
    return names


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer, got {text}")
    return value


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for INFO, -vv for DEBUG logging on stderr")
    parent.add_argument("--output", "-o", default=None,
                        help="output file (stdout when omitted)")
    parent.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default depends on the subcommand)")
    return parent


def _params_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("model parameters")
    for name in PARAM_FLAGS:
        group.add_argument(f"--{name}", type=float, default=None, metavar="X")
    return parent


def _data_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("data")
    group.add_argument("--data", required=True, help="CSV file holding the observations")
    group.add_argument("--column", default="-1",
                       help="column name or zero-based index (default: last column)")
    group.add_argument("--no-header", action="store_true", help="the file has no header row")
    group.add_argument("--delimiter", default=",")
    group.add_argument("--skip-invalid", action="store_true",
                       help="drop unparsable rows with a warning instead of failing")
    group.add_argument("--transform", choices=TRANSFORMS, default="none")
    return parent


def _fit_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("fitting")
    group.add_argument("--seed", type=int, default=DEFAULT_SEED)
    group.add_argument("--max-iter", type=positive_int, default=FIT_MAX_ITER)
    group.add_argument("--tol", type=float, default=FIT_TOL)
    group.add_argument("--restarts", type=positive_int, default=FIT_RESTARTS)
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_parent()
    params = _params_parent()
    data = _data_parent()
    fitting = _fit_parent()

    parser = argparse.ArgumentParser(
        prog="btgn",
        description=f"{APP_NAME}: body-tail generalized normal distributions, fitting and model comparison",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    evaluate = subparsers.add_parser("eval", parents=[common, params],
                                     help="evaluate pdf, cdf and log-pdf on a grid")
    evaluate.add_argument("--model", choices=MODEL_NAMES, default="btgn")
    evaluate.add_argument("--from", dest="x_from", type=float, default=None,
                          help="grid start (default: the model's 0.1%% quantile)")
    evaluate.add_argument("--to", dest="x_to", type=float, default=None,
                          help="grid end (default: the model's 99.9%% quantile)")
    evaluate.add_argument("--points", type=positive_int, default=81)
    evaluate.add_argument("--kernel-derivative", action="store_true",
                          help="emit the kernel and its derivative instead of the density")

    fit = subparsers.add_parser("fit", parents=[common, data, fitting],
                                help="maximum-likelihood fit of one model")
    fit.add_argument("--model", choices=MODEL_NAMES, required=True)

    compare = subparsers.add_parser("compare", parents=[common, data, fitting],
                                    help="fit several models and tabulate Bayes factors")
    compare.add_argument("--models", type=model_list, default=list(DEFAULT_COMPARE_MODELS),
                         help="comma-separated model names")
    compare.add_argument("--reference", default="best",
                         help="'best' or the name of the reference model")
    compare.add_argument("--external", action="append", default=[], metavar="NAME:LOGLIK:K",
                         help="add a competitor fitted elsewhere (repeatable)")
    compare.add_argument("--workers", type=positive_int, default=1,
                         help="fit models in parallel threads")

    sample = subparsers.add_parser("sample", parents=[common, params],
                                   help="draw from a model")
    sample.add_argument("--model", choices=MODEL_NAMES, default="btgn")
    sample.add_argument("--n", type=non_negative_int, required=True)
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED)

    fetch = subparsers.add_parser("fetch", parents=[common],
                                  help="download a coinmetrics series into the cache")
    fetch.add_argument("--asset", required=True)
    fetch.add_argument("--metric", required=True)
    fetch.add_argument("--start", required=True, help="YYYY-MM-DD")
    fetch.add_argument("--end", required=True, help="YYYY-MM-DD")
    fetch.add_argument("--endpoint", default=COINMETRICS_ENDPOINT)
    fetch.add_argument("--cache-dir", default=None,
                       help="response cache (default: beside --output, else BTGN_CACHE_DIR)")
    fetch.add_argument("--offline", action="store_true", help="use only cached responses")
    fetch.add_argument("--transform", choices=TRANSFORMS, default="none")

    plotdata = subparsers.add_parser("plotdata", parents=[common, params, data, fitting],
                                     help="KDE of the data next to a fitted or given density")
    plotdata.add_argument("--model", choices=MODEL_NAMES, required=True)
    plotdata.add_argument("--from", dest="x_from", type=float, default=None)
    plotdata.add_argument("--to", dest="x_to", type=float, default=None)
    plotdata.add_argument("--points", type=positive_int, default=200)
    plotdata.add_argument("--bandwidth", type=float, default=None)
    plotdata.add_argument("--no-log", action="store_true", help="omit the log-scale columns")

    return parser
