""" Two-piece skewing over BTGN and normal bases """

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate, stats

from src.distributions import (
    NORMAL_BASE,
    LocScaleParams,
    TwoPieceParams,
    locscale_cdf,
    locscale_pdf,
    tp_cdf,
    tp_pdf,
    tp_quantile,
    tp_sample,
    tptan_params,
    two_piece_cdf,
    two_piece_log_pdf,
)
from src.exceptions import DomainError

SETTINGS = [
    TwoPieceParams(0.0, 1.0, 2.0, 2.0, 0.5),
    TwoPieceParams(0.0, 1.0, 2.0, 2.0, 1.0),
    TwoPieceParams(0.0, 1.0, 2.0, 2.0, 2.0),
    TwoPieceParams(1.0, 0.5, 1.5, 0.8, 0.7),
    TwoPieceParams(1.0, 0.5, 1.5, 0.8, 1.3),
    TwoPieceParams(-2.0, 2.0, 3.0, 1.0, 1.5),
    TwoPieceParams(0.0, 1.0, 1.0, 1.0, 3.0),
    TwoPieceParams(0.5, 1.5, 0.8, 2.5, 0.4),
    TwoPieceParams(0.0, 1.0, 2.0, 0.6, 1.2),
]


def _integral(f, a, b):
    return integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-12, limit=400)[0]


@pytest.mark.parametrize("p", SETTINGS)
def test_density_integrates_to_one(p):
    f = lambda x: tp_pdf(x, p)
    edges = [-np.inf, p.mu - 100.0, p.mu - 10.0, p.mu, p.mu + 10.0, p.mu + 100.0, np.inf]
    total = sum(_integral(f, a, b) for a, b in zip(edges[:-1], edges[1:]))
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("p", SETTINGS)
def test_density_is_continuous_at_mu(p):
    eps = 1e-9
    assert tp_pdf(p.mu - eps, p) == pytest.approx(tp_pdf(p.mu + eps, p), rel=1e-6)


@pytest.mark.parametrize("p", SETTINGS)
def test_cdf_at_mu_is_left_mass(p):
    assert tp_cdf(p.mu, p) == pytest.approx(1.0 / (1.0 + p.psi ** 2), abs=1e-14)


def test_cdf_matches_quadrature():
    p = TwoPieceParams(0.3, 1.2, 1.5, 0.8, 1.7)
    for x in (-3.0, -0.5, 0.3, 1.0, 4.0):
        expected = _integral(lambda t: tp_pdf(t, p), -np.inf, min(x, p.mu))
        if x > p.mu:
            expected += _integral(lambda t: tp_pdf(t, p), p.mu, x)
        assert tp_cdf(x, p) == pytest.approx(expected, abs=1e-8)


def test_psi_one_reduces_to_symmetric_location_scale():
    p = TwoPieceParams(0.5, 1.5, 1.5, 0.8, 1.0)
    ls = LocScaleParams.of(0.5, 1.5, 1.5, 0.8)
    x = np.linspace(-6.0, 6.0, 25)
    assert_allclose(tp_pdf(x, p), locscale_pdf(x, ls), rtol=1e-13)
    assert_allclose(tp_cdf(x, p), locscale_cdf(x, ls), atol=1e-14)


def test_larger_psi_shifts_mass_right():
    left = TwoPieceParams(0.0, 1.0, 2.0, 2.0, 0.5)
    right = TwoPieceParams(0.0, 1.0, 2.0, 2.0, 2.0)
    assert tp_cdf(0.0, left) > 0.5 > tp_cdf(0.0, right)
    # mirror images: f(x; psi) = f(-x; 1/psi)
    x = np.linspace(-4.0, 4.0, 17)
    assert_allclose(tp_pdf(x, left), tp_pdf(-x, right), rtol=1e-13)


@pytest.mark.parametrize("p", SETTINGS[:6])
def test_quantile_inverts_cdf(p):
    levels = np.array([1e-6, 0.05, 1.0 / (1.0 + p.psi ** 2), 0.5, 0.9, 1.0 - 1e-6])
    assert_allclose(tp_cdf(tp_quantile(levels, p), p), levels, atol=1e-11)


def test_quantile_at_left_mass_is_mu():
    p = TwoPieceParams(1.0, 0.5, 1.5, 0.8, 1.3)
    assert tp_quantile(1.0 / (1.0 + 1.3 ** 2), p) == pytest.approx(1.0, abs=1e-10)


def test_tptan_pins_alpha():
    p = tptan_params(0.0, 1.0, 1.2, 1.5)
    assert p.alpha == 2.0
    assert p.shape.beta == 1.2


@pytest.mark.parametrize("field", ["sigma", "alpha", "beta", "psi"])
def test_params_reject_non_positive(field):
    values = {"mu": 0.0, "sigma": 1.0, "alpha": 2.0, "beta": 2.0, "psi": 1.0}
    values[field] = 0.0
    with pytest.raises(DomainError):
        TwoPieceParams(**values)


def test_normal_base_with_psi_one_is_normal():
    x = np.linspace(-4.0, 4.0, 33)
    assert_allclose(two_piece_log_pdf(x, 1.0, 2.0, 1.0, NORMAL_BASE), stats.norm(1.0, 2.0).logpdf(x), rtol=1e-12)
    assert_allclose(two_piece_cdf(x, 1.0, 2.0, 1.0, NORMAL_BASE), stats.norm(1.0, 2.0).cdf(x), atol=1e-13)


def test_two_piece_normal_side_widths():
    # left half-width sigma/psi, right half-width sigma*psi
    psi = 2.0
    weight = 2.0 / (psi + 1.0 / psi)
    left = math.exp(two_piece_log_pdf(-0.5, 0.0, 1.0, psi, NORMAL_BASE))
    right = math.exp(two_piece_log_pdf(2.0, 0.0, 1.0, psi, NORMAL_BASE))
    assert left == pytest.approx(weight * stats.norm.pdf(-1.0), rel=1e-12)
    assert right == pytest.approx(weight * stats.norm.pdf(1.0), rel=1e-12)


def test_sampler_side_frequencies(rng):
    p = TwoPieceParams(0.0, 1.0, 2.0, 2.0, 1.5)
    draws = tp_sample(40_000, p, rng)
    right_share = np.mean(draws > 0.0)
    assert right_share == pytest.approx(1.5 ** 2 / (1.0 + 1.5 ** 2), abs=0.01)


def test_sampler_is_seed_deterministic():
    p = TwoPieceParams(0.0, 1.0, 1.5, 0.8, 2.0)
    assert np.array_equal(
        tp_sample(500, p, np.random.default_rng(9)),
        tp_sample(500, p, np.random.default_rng(9)),
    )


@pytest.mark.slow
def test_sampler_passes_ks_against_cdf():
    p = TwoPieceParams(0.0, 1.0, 2.0, 2.0, 2.0)
    draws = tp_sample(100_000, p, np.random.default_rng(20190101))
    result = stats.kstest(draws, lambda x: tp_cdf(x, p))
    assert result.pvalue > 0.01
