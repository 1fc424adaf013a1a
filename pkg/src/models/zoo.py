""" Baseline and BTGN-family models behind the model comparison workflow """

import math
from typing import Callable, Dict, Mapping

import numpy as np
from scipy import special

from src.distributions import (
    LocScaleParams,
    NORMAL_BASE,
    ShapeParams,
    TwoPieceParams,
    locscale_cdf,
    locscale_log_pdf,
    locscale_quantile,
    locscale_sample,
    tp_cdf,
    tp_log_pdf,
    tp_quantile,
    tp_sample,
    two_piece_cdf,
    two_piece_log_pdf,
    two_piece_quantile,
    two_piece_sample,
)
from src.distributions.params import require_finite, require_positive
from src.exceptions import DomainError
from src.models.contract import IDENTITY, LOG, ModelContract, Params
from src.specfun import erfc, gamma_samples, log_gamma, reg_gamma_q

MAD_TO_SD = 1.4826
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)

# Competitors with no density implemented here; they enter comparison
# tables as externally computed (loglik, k) rows.
EXTERNAL_COMPETITORS = ("ST", "NIG", "FMN", "FMG")


def robust_location_scale(data) -> tuple:
    """Median and 1.4826 * MAD, falling back to the standard deviation for flat MADs."""
    data = np.asarray(data, dtype=np.float64)
    median = float(np.median(data))
    scale = MAD_TO_SD * float(np.median(np.abs(data - median)))
    if not scale > 0.0:
        scale = float(np.std(data))
    if not scale > 0.0:
        scale = 1.0
    return median, scale


def _validator(locations=(), positives=()):
    def validate(params: Mapping[str, float]) -> None:
        for name in locations:
            require_finite(name, params[name])
        for name in positives:
            require_positive(name, params[name])
    return validate


def _initial(scale_factor: float = 1.0, **shapes: float) -> Callable[[np.ndarray], Params]:
    def initial(data: np.ndarray) -> Params:
        mu, sigma = robust_location_scale(data)
        return {"mu": mu, "sigma": scale_factor * sigma, **shapes}
    return initial


def _x(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def _level(q) -> float:
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {q}")
    return q


# Normal


def _normal_log_pdf(x, p):
    z = (_x(x) - p["mu"]) / p["sigma"]
    return -0.5 * z * z - math.log(p["sigma"]) - _HALF_LOG_2PI


def _normal_cdf(x, p):
    z = (_x(x) - p["mu"]) / p["sigma"]
    return 0.5 * np.asarray(erfc(-z / _SQRT2))


def normal_model() -> ModelContract:
    return ModelContract(
        name="normal",
        param_names=("mu", "sigma"),
        transforms={"mu": IDENTITY, "sigma": LOG},
        log_pdf=_normal_log_pdf,
        cdf=_normal_cdf,
        sample=lambda n, p, rng: p["mu"] + p["sigma"] * rng.standard_normal(n),
        quantile=lambda q, p: p["mu"] + p["sigma"] * float(special.ndtri(_level(q))),
        initial=_initial(),
        validate=_validator(("mu",), ("sigma",)),
    )


# Laplace


def _laplace_log_pdf(x, p):
    return -np.abs(_x(x) - p["mu"]) / p["b"] - math.log(2.0 * p["b"])


def _laplace_cdf(x, p):
    z = (_x(x) - p["mu"]) / p["b"]
    return np.where(z < 0.0, 0.5 * np.exp(np.minimum(z, 0.0)), 1.0 - 0.5 * np.exp(-np.maximum(z, 0.0)))


def _laplace_quantile(q, p):
    q = _level(q)
    if q < 0.5:
        return p["mu"] + p["b"] * math.log(2.0 * q)
    return p["mu"] - p["b"] * math.log(2.0 * (1.0 - q))


def _laplace_initial(data):
    mu, sigma = robust_location_scale(data)
    return {"mu": mu, "b": sigma / MAD_TO_SD}


def laplace_model() -> ModelContract:
    return ModelContract(
        name="laplace",
        param_names=("mu", "b"),
        transforms={"mu": IDENTITY, "b": LOG},
        log_pdf=_laplace_log_pdf,
        cdf=_laplace_cdf,
        sample=lambda n, p, rng: rng.laplace(p["mu"], p["b"], n),
        quantile=_laplace_quantile,
        initial=_laplace_initial,
        validate=_validator(("mu",), ("b",)),
    )


# Student-t


def _t_log_pdf(x, p):
    nu = p["nu"]
    z = (_x(x) - p["mu"]) / p["sigma"]
    const = (
        log_gamma((nu + 1.0) / 2.0)
        - log_gamma(nu / 2.0)
        - 0.5 * math.log(nu * math.pi)
        - math.log(p["sigma"])
    )
    return const - 0.5 * (nu + 1.0) * np.log1p(z * z / nu)


def student_t_model() -> ModelContract:
    return ModelContract(
        name="student_t",
        param_names=("mu", "sigma", "nu"),
        transforms={"mu": IDENTITY, "sigma": LOG, "nu": LOG},
        log_pdf=_t_log_pdf,
        cdf=lambda x, p: special.stdtr(p["nu"], (_x(x) - p["mu"]) / p["sigma"]),
        sample=lambda n, p, rng: p["mu"] + p["sigma"] * rng.standard_t(p["nu"], n),
        quantile=lambda q, p: p["mu"] + p["sigma"] * float(special.stdtrit(p["nu"], _level(q))),
        initial=_initial(nu=10.0),
        validate=_validator(("mu",), ("sigma", "nu")),
    )


# Generalized normal


def _gn_log_pdf(x, p):
    alpha = p["alpha"]
    z = np.abs(_x(x) - p["mu"]) / p["sigma"]
    return (
        math.log(alpha)
        - math.log(2.0 * p["sigma"])
        - log_gamma(1.0 / alpha)
        - z ** alpha
    )


def _gn_cdf(x, p):
    z = (_x(x) - p["mu"]) / p["sigma"]
    half_tail = 0.5 * np.asarray(reg_gamma_q(1.0 / p["alpha"], np.abs(z) ** p["alpha"]))
    return np.where(z <= 0.0, half_tail, 1.0 - half_tail)


def _gn_quantile(q, p):
    q = _level(q)
    # |Z|^alpha is Gamma(1/alpha)
    t = float(special.gammaincinv(1.0 / p["alpha"], abs(2.0 * q - 1.0))) ** (1.0 / p["alpha"])
    return p["mu"] + p["sigma"] * math.copysign(t, q - 0.5)


def _gn_sample(n, p, rng):
    magnitude = gamma_samples(1.0 / p["alpha"], n, rng) ** (1.0 / p["alpha"])
    signs = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    return p["mu"] + p["sigma"] * signs * magnitude


def gn_model() -> ModelContract:
    """Generalized normal α e^(-|z|^α) / (2σ Γ(1/α)); the BTGN with α = β."""
    return ModelContract(
        name="gn",
        param_names=("mu", "sigma", "alpha"),
        transforms={"mu": IDENTITY, "sigma": LOG, "alpha": LOG},
        log_pdf=_gn_log_pdf,
        cdf=_gn_cdf,
        sample=_gn_sample,
        quantile=_gn_quantile,
        initial=_initial(_SQRT2, alpha=2.0),
        validate=_validator(("mu",), ("sigma", "alpha")),
    )


# BTGN family


def _ls(p) -> LocScaleParams:
    return LocScaleParams(p["mu"], p["sigma"], ShapeParams(p["alpha"], p["beta"]))


def _validate_btgn(p):
    _ls(p)


def btgn_model() -> ModelContract:
    """Symmetric location-scale BTGN, 4 free parameters."""
    return ModelContract(
        name="btgn",
        param_names=("mu", "sigma", "alpha", "beta"),
        transforms={"mu": IDENTITY, "sigma": LOG, "alpha": LOG, "beta": LOG},
        log_pdf=lambda x, p: locscale_log_pdf(_x(x), _ls(p)),
        cdf=lambda x, p: locscale_cdf(_x(x), _ls(p)),
        sample=lambda n, p, rng: locscale_sample(n, _ls(p), rng),
        quantile=lambda q, p: locscale_quantile(q, _ls(p)),
        initial=_initial(_SQRT2, alpha=2.0, beta=2.0),
        validate=_validate_btgn,
    )


def _tp(p) -> TwoPieceParams:
    return TwoPieceParams(p["mu"], p["sigma"], p["alpha"], p["beta"], p["psi"])


def _validate_tp(p):
    _tp(p)


def _two_piece_btgn_model(name: str, fixed: Dict[str, float]) -> ModelContract:
    return ModelContract(
        name=name,
        param_names=("mu", "sigma", "alpha", "beta", "psi"),
        transforms={"mu": IDENTITY, "sigma": LOG, "alpha": LOG, "beta": LOG, "psi": LOG},
        log_pdf=lambda x, p: tp_log_pdf(_x(x), _tp(p)),
        cdf=lambda x, p: tp_cdf(_x(x), _tp(p)),
        sample=lambda n, p, rng: tp_sample(n, _tp(p), rng),
        quantile=lambda q, p: tp_quantile(q, _tp(p)),
        initial=_initial(_SQRT2, alpha=2.0, beta=2.0, psi=1.0),
        validate=_validate_tp,
        fixed=fixed,
    )


def tpbtgn_model() -> ModelContract:
    """Two-piece BTGN, 5 free parameters."""
    return _two_piece_btgn_model("tpbtgn", {})


def tptan_model() -> ModelContract:
    """Two-piece tail adjusted normal: alpha pinned at 2, 4 free parameters."""
    return _two_piece_btgn_model("tptan", {"alpha": 2.0})


def two_piece_normal_model() -> ModelContract:
    """Two-piece normal, the skewed baseline without body/tail shape freedom."""
    return ModelContract(
        name="two_piece_normal",
        param_names=("mu", "sigma", "psi"),
        transforms={"mu": IDENTITY, "sigma": LOG, "psi": LOG},
        log_pdf=lambda x, p: two_piece_log_pdf(_x(x), p["mu"], p["sigma"], p["psi"], NORMAL_BASE),
        cdf=lambda x, p: two_piece_cdf(_x(x), p["mu"], p["sigma"], p["psi"], NORMAL_BASE),
        sample=lambda n, p, rng: two_piece_sample(n, p["mu"], p["sigma"], p["psi"], NORMAL_BASE, rng),
        quantile=lambda q, p: two_piece_quantile(q, p["mu"], p["sigma"], p["psi"], NORMAL_BASE),
        initial=_initial(psi=1.0),
        validate=_validator(("mu",), ("sigma", "psi")),
    )


MODEL_FACTORIES: Dict[str, Callable[[], ModelContract]] = {
    "normal": normal_model,
    "laplace": laplace_model,
    "student_t": student_t_model,
    "gn": gn_model,
    "btgn": btgn_model,
    "tptan": tptan_model,
    "tpbtgn": tpbtgn_model,
    "two_piece_normal": two_piece_normal_model,
}

MODEL_NAMES = tuple(MODEL_FACTORIES)


def get_model(name: str) -> ModelContract:
    """
    Look up a zoo model by name.

    Raises:
        DomainError: For unknown names, listing the valid ones
    """
    try:
        return MODEL_FACTORIES[name]()
    except KeyError:
        raise DomainError(f"unknown model '{name}'; valid models: {', '.join(MODEL_NAMES)}") from None
