import math

import pytest

from eduroute.classifiers import FocalLossParams, focal_loss
from eduroute.classifiers.focal import NEGATIVE, POSITIVE, focal_loss_grad_logit
from eduroute.errors import ValidationError

CE = FocalLossParams(gamma=0.0, alpha=1.0)
G2 = FocalLossParams(gamma=2.0, alpha=1.0)


def test_reduces_to_cross_entropy_at_half():
    assert focal_loss(0.5, POSITIVE, CE) == pytest.approx(math.log(2), abs=1e-12)


def test_easy_positive_heavily_downweighted():
    # frozen from an arbitrary-precision evaluation of -(0.1)^2 * ln(0.9)
    assert focal_loss(0.9, POSITIVE, G2) == pytest.approx(0.00105360515657826, abs=1e-15)


def test_hard_negative_stays_large():
    # frozen from an arbitrary-precision evaluation of -(0.9)^2 * ln(0.1)
    assert focal_loss(0.9, NEGATIVE, G2) == pytest.approx(1.86509392532518, abs=1e-12)


def test_gamma_zero_equals_bce_on_grid():
    for i in range(1, 100):
        p = i / 100
        assert focal_loss(p, POSITIVE, CE) == pytest.approx(-math.log(p), abs=1e-12)
        assert focal_loss(p, NEGATIVE, CE) == pytest.approx(-math.log(1 - p), abs=1e-12)


def test_monotone_decreasing_in_p_t():
    for params in (CE, G2, FocalLossParams(gamma=5.0, alpha=0.25)):
        losses = [focal_loss(i / 100, POSITIVE, params) for i in range(1, 100)]
        assert all(a > b for a, b in zip(losses, losses[1:]))


def test_vanishes_as_p_t_approaches_one():
    assert focal_loss(1 - 1e-7, POSITIVE, G2) < 1e-6


def test_non_increasing_in_gamma():
    for p in (0.1, 0.3, 0.6, 0.9, 0.99):
        losses = [
            focal_loss(p, POSITIVE, FocalLossParams(gamma=g, alpha=1.0))
            for g in (0.0, 0.5, 1.0, 2.0, 5.0)
        ]
        assert all(a >= b for a, b in zip(losses, losses[1:]))


def test_alpha_scales_positive_class_only():
    quarter = FocalLossParams(gamma=2.0, alpha=0.25)
    assert focal_loss(0.7, POSITIVE, quarter) == pytest.approx(0.25 * focal_loss(0.7, POSITIVE, G2))
    assert focal_loss(0.7, NEGATIVE, quarter) == focal_loss(0.7, NEGATIVE, G2)


def test_domain_errors():
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValidationError):
            focal_loss(bad, POSITIVE, CE)
    with pytest.raises(ValidationError):
        FocalLossParams(gamma=-1.0)
    with pytest.raises(ValidationError):
        FocalLossParams(alpha=0.0)


def test_gradient_matches_finite_differences():
    eps = 1e-7
    for params in (CE, G2, FocalLossParams(gamma=3.0, alpha=0.5)):
        for p in (0.2, 0.5, 0.8):
            for label in (POSITIVE, NEGATIVE):
                z = math.log(p / (1 - p))
                up = focal_loss(1 / (1 + math.exp(-(z + eps))), label, params)
                down = focal_loss(1 / (1 + math.exp(-(z - eps))), label, params)
                numeric = (up - down) / (2 * eps)
                assert focal_loss_grad_logit(p, label, params) == pytest.approx(numeric, rel=1e-5)
