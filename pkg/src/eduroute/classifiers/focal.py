"""Focal loss for the binary heads.

    loss = -alpha_t * (1 - p_t)^gamma * ln(p_t)

where p_t is the predicted probability of the true class and alpha_t is
``alpha`` for positive examples and 1 for negative ones. With gamma=0 and
alpha=1 this is exactly binary cross-entropy; gamma > 0 down-weights easy
examples, which is what keeps the minority class from being drowned out on
heavily imbalanced data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ValidationError

POSITIVE = 1
NEGATIVE = 0


@dataclass(frozen=True)
class FocalLossParams:
    gamma: float = 2.0
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValidationError("gamma must be >= 0")
        if not 0.0 < self.alpha <= 1.0:
            raise ValidationError("alpha must be in (0, 1]")


def focal_loss(p: float, label: int, params: FocalLossParams) -> float:
    """Loss for one example given p = predicted probability of the positive class.

    Raises ValidationError when p is outside the open interval (0, 1); callers
    clamp upstream (see linear.predict_proba).
    """
    if not 0.0 < p < 1.0:
        raise ValidationError(f"p must be in (0, 1), got {p}")
    if label not in (POSITIVE, NEGATIVE):
        raise ValidationError(f"label must be 0 or 1, got {label}")
    p_t = p if label == POSITIVE else 1.0 - p
    alpha_t = params.alpha if label == POSITIVE else 1.0
    return -alpha_t * (1.0 - p_t) ** params.gamma * math.log(p_t)


def focal_loss_grad_logit(p: float, label: int, params: FocalLossParams) -> float:
    """d(loss)/d(logit) for one example; used by the SGD trainer.

    Derivation from the chain rule with p_t(1 - p_t) = p(1 - p):
        d/dz = s * alpha_t * (1-p_t)^gamma * (gamma * p_t * ln(p_t) - (1-p_t))
    with s = +1 for positive and -1 for negative examples. At gamma=0,
    alpha=1 this reduces to the familiar (p - y).
    """
    p_t = p if label == POSITIVE else 1.0 - p
    alpha_t = params.alpha if label == POSITIVE else 1.0
    sign = 1.0 if label == POSITIVE else -1.0
    one_minus = 1.0 - p_t
    return sign * alpha_t * one_minus**params.gamma * (params.gamma * p_t * math.log(p_t) - one_minus)
