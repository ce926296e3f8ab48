"""Text classification: featurizer, focal loss, linear heads, and the
safety / intent gates built on top of them."""

from .featurize import FeatureVector, char_ngrams, featurize
from .focal import FocalLossParams, focal_loss
from .linear import (
    LabeledExample,
    LinearClassifier,
    TrainingRun,
    fit,
    load_examples,
    load_model,
    predict_proba,
    save_model,
    train,
)
from .heads import IntentHead, RemoteScorer, SafetyHead

__all__ = [
    "FeatureVector",
    "FocalLossParams",
    "IntentHead",
    "LabeledExample",
    "LinearClassifier",
    "RemoteScorer",
    "SafetyHead",
    "TrainingRun",
    "char_ngrams",
    "featurize",
    "fit",
    "focal_loss",
    "load_examples",
    "load_model",
    "predict_proba",
    "save_model",
    "train",
]
