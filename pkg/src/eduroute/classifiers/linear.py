"""Linear classification head over hashed n-gram features.

Training is plain per-example SGD with a per-epoch shuffle keyed by the seed,
so runs are reproducible bit for bit. That trade (determinism over speed) is
deliberate: both heads train in seconds at the scales this service handles.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from ..errors import DivergenceError, TrainingError, ValidationError
from .featurize import NGRAM_SIZES, FeatureVector, featurize
from .focal import NEGATIVE, POSITIVE, FocalLossParams, focal_loss, focal_loss_grad_logit

PROBA_CLAMP = 1e-7
MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class LabeledExample:
    text: str
    label: int  # 1 = positive (safe / education), 0 = negative

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValidationError("example text must be non-empty")
        if self.label not in (POSITIVE, NEGATIVE):
            raise ValidationError(f"label must be 0 or 1, got {self.label}")


@dataclass
class LinearClassifier:
    weights: np.ndarray
    bias: float
    dim: int
    head_name: str = "unnamed"

    def __post_init__(self) -> None:
        if len(self.weights) != self.dim:
            raise ValidationError("weights length must equal dim")
        if not np.all(np.isfinite(self.weights)) or not math.isfinite(self.bias):
            raise ValidationError("classifier weights must be finite")

    def logit(self, fv: FeatureVector) -> float:
        return fv.dot(self.weights) + self.bias


@dataclass
class TrainingRun:
    classifier: LinearClassifier
    epoch_losses: list[float] = field(default_factory=list)


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def predict_proba(clf: LinearClassifier, text: str) -> float:
    """P(positive) via sigmoid(w.x + b), clamped to [1e-7, 1 - 1e-7]."""
    fv = featurize(text, clf.dim)
    p = _sigmoid(clf.logit(fv))
    return min(max(p, PROBA_CLAMP), 1.0 - PROBA_CLAMP)


def fit(
    examples: list[LabeledExample],
    params: FocalLossParams,
    epochs: int = 5,
    lr: float = 0.5,
    seed: int = 0,
    dim: int = 4096,
    head_name: str = "unnamed",
) -> TrainingRun:
    """Train a linear head with focal loss; returns per-epoch mean losses too."""
    if epochs < 1:
        raise ValidationError("epochs must be >= 1")
    if lr <= 0:
        raise ValidationError("lr must be positive")
    labels = {ex.label for ex in examples}
    if labels != {POSITIVE, NEGATIVE}:
        raise TrainingError("training set must contain at least one example of each label")

    features = [featurize(ex.text, dim) for ex in examples]
    targets = [ex.label for ex in examples]

    weights = np.zeros(dim, dtype=np.float64)
    bias = 0.0
    rng = np.random.default_rng(seed)
    epoch_losses: list[float] = []

    for _ in range(epochs):
        order = rng.permutation(len(examples))
        total = 0.0
        for i in order:
            fv, label = features[i], targets[i]
            z = fv.dot(weights) + bias
            if not math.isfinite(z):
                raise DivergenceError(f"training diverged (non-finite logit) at lr={lr}")
            p = min(max(_sigmoid(z), PROBA_CLAMP), 1.0 - PROBA_CLAMP)
            total += focal_loss(p, label, params)
            g = focal_loss_grad_logit(p, label, params)
            weights[fv.indices] -= lr * g * fv.values
            bias -= lr * g
        mean_loss = total / len(examples)
        if not math.isfinite(mean_loss):
            raise DivergenceError(f"training diverged (non-finite loss) at lr={lr}")
        epoch_losses.append(mean_loss)

    clf = LinearClassifier(weights=weights, bias=bias, dim=dim, head_name=head_name)
    return TrainingRun(classifier=clf, epoch_losses=epoch_losses)


def train(
    examples: list[LabeledExample],
    params: FocalLossParams,
    epochs: int = 5,
    lr: float = 0.5,
    seed: int = 0,
    dim: int = 4096,
    head_name: str = "unnamed",
) -> LinearClassifier:
    return fit(examples, params, epochs=epochs, lr=lr, seed=seed, dim=dim, head_name=head_name).classifier


def save_model(clf: LinearClassifier, path: str | os.PathLike) -> None:
    record = {
        "format_version": MODEL_FORMAT_VERSION,
        "head_name": clf.head_name,
        "dim": clf.dim,
        "weights": clf.weights.tolist(),
        "bias": clf.bias,
        "featurizer_params": {"ngram_sizes": list(NGRAM_SIZES), "hash": "crc32"},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh)


def load_model(path: str | os.PathLike) -> LinearClassifier:
    with open(path, encoding="utf-8") as fh:
        record = json.load(fh)
    version = record.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValidationError(f"unsupported model format_version: {version}")
    return LinearClassifier(
        weights=np.asarray(record["weights"], dtype=np.float64),
        bias=float(record["bias"]),
        dim=int(record["dim"]),
        head_name=record.get("head_name", "unnamed"),
    )


def load_examples(path: str | os.PathLike) -> list[LabeledExample]:
    """Read training data JSONL: {"text": "...", "label": 1} per line."""
    examples: list[LabeledExample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                examples.append(LabeledExample(text=rec["text"], label=int(rec["label"])))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError, ValidationError) as exc:
                raise ValidationError(f"{path}: bad training record on line {lineno}: {exc}")
    if not examples:
        raise ValidationError(f"{path}: no training examples found")
    return examples


def training_accuracy(clf: LinearClassifier, examples: list[LabeledExample]) -> float:
    correct = sum(
        1
        for ex in examples
        if (predict_proba(clf, ex.text) >= 0.5) == (ex.label == POSITIVE)
    )
    return correct / len(examples)


def recall(clf: LinearClassifier, examples: list[LabeledExample], label: int = POSITIVE) -> float:
    """Fraction of examples with the given label that the head gets right."""
    relevant = [ex for ex in examples if ex.label == label]
    if not relevant:
        raise ValidationError("no examples with the requested label")
    hit = sum(
        1
        for ex in relevant
        if (predict_proba(clf, ex.text) >= 0.5) == (label == POSITIVE)
    )
    return hit / len(relevant)
