""" Model zoo contracts """

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate, stats

from src.exceptions import DomainError
from src.models import (
    EXTERNAL_COMPETITORS,
    IDENTITY,
    LOG,
    MODEL_NAMES,
    get_model,
    robust_location_scale,
)

DEFAULTS = {
    "normal": {"mu": 0.3, "sigma": 1.4},
    "laplace": {"mu": -0.2, "b": 0.8},
    "student_t": {"mu": 0.0, "sigma": 1.0, "nu": 4.0},
    "gn": {"mu": 0.0, "sigma": 1.0, "alpha": 1.5},
    "btgn": {"mu": 0.0, "sigma": 1.0, "alpha": 1.5, "beta": 0.8},
    "tptan": {"mu": 0.0, "sigma": 1.0, "beta": 1.2, "psi": 1.4},
    "tpbtgn": {"mu": 0.0, "sigma": 1.0, "alpha": 1.5, "beta": 0.8, "psi": 0.7},
    "two_piece_normal": {"mu": 1.0, "sigma": 2.0, "psi": 1.3},
}

FREE_PARAM_COUNTS = {
    "normal": 2, "laplace": 2, "student_t": 3, "gn": 3,
    "btgn": 4, "tptan": 4, "tpbtgn": 5, "two_piece_normal": 3,
}


def test_every_model_is_covered():
    assert set(MODEL_NAMES) == set(DEFAULTS)


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_free_parameter_counts(name):
    assert get_model(name).n_free_params == FREE_PARAM_COUNTS[name]


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_density_integrates_to_one(name):
    model = get_model(name)
    params = model.complete(DEFAULTS[name])
    f = lambda x: float(model.pdf(x, params))
    mu = params["mu"]
    edges = [-np.inf, mu - 50.0, mu, mu + 50.0, np.inf]
    total = sum(integrate.quad(f, a, b, limit=400, epsabs=1e-12)[0] for a, b in zip(edges[:-1], edges[1:]))
    assert total == pytest.approx(1.0, abs=1e-7)


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_cdf_is_integral_of_density(name):
    model = get_model(name)
    params = model.complete(DEFAULTS[name])
    f = lambda x: float(model.pdf(x, params))
    x = params["mu"] + 0.7
    expected = integrate.quad(f, -np.inf, params["mu"], limit=400)[0] + integrate.quad(f, params["mu"], x)[0]
    assert float(model.cdf(np.array([x]), params)[0]) == pytest.approx(expected, abs=1e-7)


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_sampler_shape_and_determinism(name):
    model = get_model(name)
    params = model.complete(DEFAULTS[name])
    first = model.sample(200, params, np.random.default_rng(1))
    second = model.sample(200, params, np.random.default_rng(1))
    assert first.shape == (200,)
    assert np.array_equal(first, second)


@pytest.mark.parametrize("name", MODEL_NAMES)
@pytest.mark.parametrize("level", [0.001, 0.1, 0.5, 0.9, 0.999])
def test_quantile_inverts_cdf(name, level):
    model = get_model(name)
    params = model.complete(DEFAULTS[name])
    x = float(model.quantile(level, params))
    assert float(np.asarray(model.cdf(x, params))) == pytest.approx(level, rel=1e-8)


def test_baseline_quantiles_match_scipy():
    levels = [0.001, 0.25, 0.5, 0.8, 0.999]
    laplace = get_model("laplace")
    t = get_model("student_t")
    gn = get_model("gn")
    for q in levels:
        assert laplace.quantile(q, {"mu": -0.2, "b": 0.8}) == pytest.approx(stats.laplace(-0.2, 0.8).ppf(q), abs=1e-12)
        assert t.quantile(q, {"mu": 0.0, "sigma": 1.0, "nu": 4.0}) == pytest.approx(stats.t(4.0).ppf(q), abs=1e-10)
        assert gn.quantile(q, {"mu": 0.0, "sigma": 1.0, "alpha": 1.5}) == pytest.approx(
            stats.gennorm(1.5).ppf(q), abs=1e-10
        )


@pytest.mark.parametrize("name", ["normal", "laplace", "student_t", "gn", "btgn", "tpbtgn"])
@pytest.mark.parametrize("level", [0.0, 1.0, -0.1, np.nan])
def test_quantile_rejects_levels_outside_unit_interval(name, level):
    model = get_model(name)
    with pytest.raises(DomainError):
        model.quantile(level, model.complete(DEFAULTS[name]))


def test_baselines_match_scipy():
    x = np.linspace(-5.0, 5.0, 21)
    normal = get_model("normal")
    assert_allclose(normal.log_pdf(x, {"mu": 0.3, "sigma": 1.4}), stats.norm(0.3, 1.4).logpdf(x), rtol=1e-12)
    laplace = get_model("laplace")
    assert_allclose(laplace.cdf(x, {"mu": -0.2, "b": 0.8}), stats.laplace(-0.2, 0.8).cdf(x), atol=1e-14)
    t = get_model("student_t")
    assert_allclose(
        t.log_pdf(x, {"mu": 0.0, "sigma": 1.0, "nu": 4.0}), stats.t(4.0).logpdf(x), rtol=1e-12
    )
    gn = get_model("gn")
    assert_allclose(
        gn.log_pdf(x, {"mu": 0.0, "sigma": 1.0, "alpha": 1.5}), stats.gennorm(1.5).logpdf(x), rtol=1e-12
    )


def test_btgn_family_agrees_at_shared_parameters():
    x = np.linspace(-3.0, 3.0, 13)
    btgn = get_model("btgn").log_pdf(x, {"mu": 0.0, "sigma": 1.0, "alpha": 1.5, "beta": 1.5})
    gn = get_model("gn").log_pdf(x, {"mu": 0.0, "sigma": 1.0, "alpha": 1.5})
    assert_allclose(btgn, gn, rtol=1e-12)
    tptan = get_model("tptan").log_pdf(x, {"mu": 0.0, "sigma": 1.0, "alpha": 2.0, "beta": 1.2, "psi": 1.4})
    tpbtgn = get_model("tpbtgn").log_pdf(x, {"mu": 0.0, "sigma": 1.0, "alpha": 2.0, "beta": 1.2, "psi": 1.4})
    assert_allclose(tptan, tpbtgn)


def test_btgn_at_two_two_has_normal_likelihood(rng):
    data = rng.normal(0.4, 0.9, 300)
    sigma = 1.3
    btgn = get_model("btgn").log_pdf(data, {"mu": 0.4, "sigma": sigma, "alpha": 2.0, "beta": 2.0})
    normal = get_model("normal").log_pdf(data, {"mu": 0.4, "sigma": sigma / math.sqrt(2.0)})
    assert float(np.sum(btgn)) == pytest.approx(float(np.sum(normal)), abs=1e-8)


def test_student_t_approaches_normal_for_large_nu():
    x = np.linspace(-6.0, 6.0, 241)
    t = np.exp(get_model("student_t").log_pdf(x, {"mu": 0.0, "sigma": 1.0, "nu": 1e6}))
    normal = np.exp(get_model("normal").log_pdf(x, {"mu": 0.0, "sigma": 1.0}))
    assert np.max(np.abs(t - normal)) < 1e-3


def test_tptan_alpha_is_fixed():
    model = get_model("tptan")
    assert model.free_params == ("mu", "sigma", "beta", "psi")
    assert model.complete({"mu": 0.0, "sigma": 1.0, "beta": 1.0, "psi": 1.0})["alpha"] == 2.0
    with pytest.raises(DomainError, match="fixed"):
        model.complete({"mu": 0.0, "sigma": 1.0, "alpha": 1.5, "beta": 1.0, "psi": 1.0})


def test_free_vector_transforms():
    model = get_model("tpbtgn")
    assert model.transforms["mu"] == IDENTITY
    assert all(model.transforms[name] == LOG for name in ("sigma", "alpha", "beta", "psi"))
    params = model.complete(DEFAULTS["tpbtgn"])
    vector = model.to_free_vector(params)
    assert vector[1] == pytest.approx(0.0)
    assert vector[2] == pytest.approx(math.log(1.5))
    assert model.from_free_vector(vector) == pytest.approx(params)


def test_from_free_vector_checks_length():
    with pytest.raises(DomainError):
        get_model("normal").from_free_vector([0.0, 1.0, 2.0])


@pytest.mark.parametrize("name, bad", [("normal", {"mu": 0.0, "sigma": -1.0}), ("laplace", {"mu": np.nan, "b": 1.0})])
def test_invalid_parameters_raise(name, bad):
    with pytest.raises(DomainError):
        get_model(name).complete(bad)


def test_missing_parameter_is_named():
    with pytest.raises(DomainError, match="sigma"):
        get_model("btgn").complete({"mu": 0.0, "alpha": 2.0, "beta": 2.0})


def test_unknown_model_lists_valid_names():
    with pytest.raises(DomainError) as info:
        get_model("skew_t")
    for name in MODEL_NAMES:
        assert name in str(info.value)


def test_external_competitors_are_not_in_the_zoo():
    assert not set(EXTERNAL_COMPETITORS) & set(MODEL_NAMES)


def test_robust_location_scale(rng):
    data = rng.normal(3.0, 2.0, 20_000)
    median, scale = robust_location_scale(data)
    assert median == pytest.approx(3.0, abs=0.05)
    assert scale == pytest.approx(2.0, rel=0.05)
    assert robust_location_scale(np.ones(5)) == (1.0, 1.0)


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_initial_values_are_valid(name, rng):
    model = get_model(name)
    data = rng.standard_t(5.0, 500)
    start = model.complete(model.initial(data))
    assert set(start) == set(model.param_names)
    assert np.isfinite(model.log_likelihood(data, start))
