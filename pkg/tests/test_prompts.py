import pytest

from eduroute.agents import assemble_education_prompt, assemble_psychology_prompt
from eduroute.core import ChatTurn, Role
from eduroute.errors import ValidationError
from eduroute.retrieval.documents import Document
from eduroute.retrieval.rerank import RerankedHit


def hit(doc_id, title="标题", text="正文内容"):
    return RerankedHit(doc_id=doc_id, score=0.5, doc=Document(id=doc_id, title=title, text=text))


def turns(n, start_ts=0):
    out = []
    for i in range(n):
        role = Role.USER if i % 2 == 0 else Role.ASSISTANT
        out.append(ChatTurn(role=role, text=f"turn-{i}", timestamp=start_ts + i))
    return out


class TestEducationPrompt:
    def test_no_contexts_still_contains_question(self):
        prompt = assemble_education_prompt("什么是函数？", [])
        assert prompt.context_blocks == ()
        assert "什么是函数？" in prompt.render()

    def test_three_blocks_in_rerank_order(self):
        prompt = assemble_education_prompt("q", [hit("d2"), hit("d0"), hit("d1")])
        assert [b.doc_id for b in prompt.context_blocks] == ["d2", "d0", "d1"]
        rendered = prompt.render()
        assert rendered.index("[d2]") < rendered.index("[d0]") < rendered.index("[d1]")

    def test_excerpt_truncated_at_character_boundary(self):
        long_doc = hit("big", text="汉字内容" * 2500)  # 10,000 chars
        prompt = assemble_education_prompt("q", [long_doc], excerpt_budget=800)
        block = prompt.context_blocks[0]
        assert len(block.excerpt) == 800
        assert block.excerpt == ("汉字内容" * 200)
        block.excerpt.encode("utf-8")  # still valid text, no split characters

    def test_rendered_length_capped_by_prompt_budget(self):
        contexts = [hit(f"d{i}", text="x" * 3000) for i in range(3)]
        prompt = assemble_education_prompt("q", contexts, excerpt_budget=3000, prompt_budget=500)
        assert len(prompt.render()) <= 500

    def test_assembly_is_pure(self):
        a = assemble_education_prompt("q", [hit("d1"), hit("d2")])
        b = assemble_education_prompt("q", [hit("d1"), hit("d2")])
        assert a.render() == b.render()
        assert a.digest() == b.digest()

    def test_empty_question_rejected(self):
        with pytest.raises(ValidationError):
            assemble_education_prompt("  ", [])


class TestPsychologyPrompt:
    def test_empty_history_prompt_contains_only_question(self):
        prompt = assemble_psychology_prompt([], "我最近睡不好", window=10)
        assert prompt.history == ()
        assert "我最近睡不好" in prompt.render()
        assert "turn-" not in prompt.render()

    def test_window_keeps_exactly_last_ten_of_twentyfive(self):
        history = turns(25)
        prompt = assemble_psychology_prompt(history, "新问题", window=10)
        assert len(prompt.history) == 10
        assert [t.text for t in prompt.history] == [f"turn-{i}" for i in range(15, 25)]

    def test_history_order_preserved_in_render(self):
        history = turns(4)
        rendered = assemble_psychology_prompt(history, "q", window=10).render()
        positions = [rendered.index(f"turn-{i}") for i in range(4)]
        assert positions == sorted(positions)

    def test_no_retrieval_blocks(self):
        prompt = assemble_psychology_prompt(turns(2), "q", window=5)
        assert prompt.context_blocks == ()

    def test_window_must_be_positive(self):
        with pytest.raises(ValidationError):
            assemble_psychology_prompt([], "q", window=0)
