"""Seeded synthetic text generators for the two classifier heads.

Realistic training corpora for the safety and intent heads are not shipped;
these vocabulary-driven generators produce deterministic stand-ins that are
linearly separable by construction (own-vocabulary terms are disjoint, with
shared filler words on both sides). They power the demo CLI flows and every
desk-scale evaluation of gating behavior.
"""

from __future__ import annotations

import numpy as np

from .classifiers.linear import LabeledExample

EDUCATION_TERMS = [
    "数学", "方程", "几何", "函数", "代数", "物理", "化学", "作业", "考试", "课本",
    "语法", "单词", "历史", "地理", "定理", "证明", "公式", "实验", "解题", "复习",
    "equation", "algebra", "geometry", "homework", "exam", "grammar", "essay",
    "physics", "chemistry", "biology",
]

PSYCHOLOGY_TERMS = [
    "焦虑", "抑郁", "情绪", "压力", "失眠", "孤独", "烦恼", "难过", "紧张", "害怕",
    "倾诉", "心情", "委屈", "疲惫", "迷茫", "自卑", "崩溃", "哭泣", "安慰", "朋友吵架",
    "anxious", "depressed", "stress", "lonely", "insomnia", "worried", "sad",
    "overwhelmed", "afraid", "tired",
]

UNSAFE_TERMS = [
    "侮辱", "歧视", "违法", "犯罪", "暴力", "攻击", "仇恨", "威胁", "伤害他人", "黑市",
    "偷窃", "诈骗", "报复", "斗殴", "烧毁", "insult", "discrimination", "illegal",
    "violence", "weapon", "hate", "threat", "attack", "revenge", "smuggle",
]

COMMON_TERMS = [
    "请问", "如何", "怎么", "帮我", "什么", "为什么", "可以吗", "我想知道", "今天", "关于",
    "please", "how", "what", "why", "can you", "tell me", "about", "today",
]


def _make_text(rng: np.random.Generator, own: list[str], n_own: int, n_common: int) -> str:
    words = [own[rng.integers(len(own))] for _ in range(n_own)]
    words += [COMMON_TERMS[rng.integers(len(COMMON_TERMS))] for _ in range(n_common)]
    order = rng.permutation(len(words))
    return " ".join(words[i] for i in order)


def _gen(rng: np.random.Generator, own: list[str], n: int, label: int) -> list[LabeledExample]:
    out = []
    for _ in range(n):
        n_own = int(rng.integers(2, 5))
        n_common = int(rng.integers(1, 4))
        out.append(LabeledExample(text=_make_text(rng, own, n_own, n_common), label=label))
    return out


def gen_safety_examples(n_safe: int, n_unsafe: int, seed: int) -> list[LabeledExample]:
    """Positive label = safe. Safe texts mix education and psychology topics."""
    rng = np.random.default_rng(seed)
    benign = EDUCATION_TERMS + PSYCHOLOGY_TERMS
    return _gen(rng, benign, n_safe, 1) + _gen(rng, UNSAFE_TERMS, n_unsafe, 0)


def gen_intent_examples(n_education: int, n_psychology: int, seed: int) -> list[LabeledExample]:
    """Positive label = education (the minority class in realistic traffic)."""
    rng = np.random.default_rng(seed)
    return _gen(rng, EDUCATION_TERMS, n_education, 1) + _gen(rng, PSYCHOLOGY_TERMS, n_psychology, 0)


def gen_benign_texts(n: int, seed: int) -> list[str]:
    rng = np.random.default_rng(seed)
    benign = EDUCATION_TERMS + PSYCHOLOGY_TERMS
    return [_make_text(rng, benign, int(rng.integers(2, 5)), int(rng.integers(1, 4))) for _ in range(n)]


def gen_unsafe_texts(n: int, seed: int) -> list[str]:
    rng = np.random.default_rng(seed)
    return [_make_text(rng, UNSAFE_TERMS, int(rng.integers(2, 5)), int(rng.integers(1, 4))) for _ in range(n)]


def train_test_split(
    examples: list[LabeledExample], test_fraction: float, seed: int
) -> tuple[list[LabeledExample], list[LabeledExample]]:
    """Deterministic shuffled split, stratified by label."""
    rng = np.random.default_rng(seed)
    train: list[LabeledExample] = []
    test: list[LabeledExample] = []
    for label in (0, 1):
        group = [ex for ex in examples if ex.label == label]
        order = rng.permutation(len(group))
        cut = max(1, int(len(group) * test_fraction))
        test += [group[i] for i in order[:cut]]
        train += [group[i] for i in order[cut:]]
    return train, test
