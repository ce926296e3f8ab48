"""Shared fixtures: deterministic clocks/ids, trained heads, bundled data."""

from __future__ import annotations

import itertools
import threading
from importlib import resources

import pytest

from eduroute.classifiers import FocalLossParams, train
from eduroute.classifiers.heads import LinearScorer
from eduroute.synthdata import gen_intent_examples, gen_safety_examples


class FakeClock:
    """Monotonic millisecond clock advancing 1ms per call; thread-safe."""

    def __init__(self, start: int = 1_700_000_000_000) -> None:
        self._now = start
        self._lock = threading.Lock()

    def __call__(self) -> int:
        with self._lock:
            self._now += 1
            return self._now

    def jump(self, ms: int) -> None:
        with self._lock:
            self._now += ms


def seq_ids(prefix: str = "req"):
    counter = itertools.count(1)
    return lambda: f"{prefix}-{next(counter):06d}"


@pytest.fixture()
def fake_clock():
    return FakeClock()


@pytest.fixture(scope="session")
def safety_clf():
    examples = gen_safety_examples(400, 400, seed=11)
    return train(examples, FocalLossParams(gamma=2.0, alpha=1.0), epochs=4, lr=1.0, seed=11,
                 head_name="safety")


@pytest.fixture(scope="session")
def intent_clf():
    examples = gen_intent_examples(300, 900, seed=12)
    return train(examples, FocalLossParams(gamma=2.0, alpha=1.0), epochs=4, lr=1.0, seed=12,
                 head_name="intent")


@pytest.fixture(scope="session")
def safety_scorer(safety_clf):
    return LinearScorer(safety_clf)


@pytest.fixture(scope="session")
def intent_scorer(intent_clf):
    return LinearScorer(intent_clf)


@pytest.fixture(scope="session")
def corpus_path():
    return str(resources.files("eduroute.data") / "corpus_50.jsonl")


@pytest.fixture(scope="session")
def suite_path():
    return str(resources.files("eduroute.data") / "suite_60.jsonl")


class CountingBackend:
    """Wraps a backend and counts generate calls; for gating assertions."""

    def __init__(self, inner) -> None:
        self.inner = inner
        self.kind = inner.kind
        self.calls = 0
        self._lock = threading.Lock()

    def generate(self, prompt):
        with self._lock:
            self.calls += 1
        return self.inner.generate(prompt)


@pytest.fixture()
def state_factory(safety_scorer, intent_scorer, corpus_path):
    """Builds a fully wired, deterministic ServiceState on demand."""
    from eduroute.agents import ScriptedMockBackend
    from eduroute.core import default_config
    from eduroute.orchestrator import build_state

    def build(clock=None, id_factory=None, backend=None, **config_overrides):
        overrides = {"corpus_path": corpus_path, **config_overrides}
        config = default_config(**overrides)
        return build_state(
            config,
            clock=clock or FakeClock(),
            id_factory=id_factory or seq_ids(),
            safety_scorer=safety_scorer,
            intent_scorer=intent_scorer,
            backend=backend or CountingBackend(ScriptedMockBackend()),
        )

    return build
