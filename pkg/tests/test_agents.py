import pytest

from eduroute.agents import (
    EducationAgent,
    PsychologyAgent,
    RetrievalHandle,
    ScriptedMockBackend,
)
from eduroute.core import ChatTurn, Role, Route, default_config
from eduroute.errors import BackendUnavailableError
from eduroute.retrieval import HashedNgramEmbedder, HnswParams, build_index, embed_documents, load_corpus


class FailingBackend:
    kind = "failing"

    def generate(self, prompt):
        raise BackendUnavailableError("endpoint down")


@pytest.fixture(scope="module")
def education_setup(corpus_path):
    config = default_config()
    docs = load_corpus(corpus_path)
    embedder = HashedNgramEmbedder(dim=config.embed_dim)
    embedded = embed_documents(docs, embedder)
    index = build_index(embedded, HnswParams(seed=config.hnsw_seed))
    handle = RetrievalHandle(index=index, documents={d.id: d for d in docs})
    return config, embedder, handle


class TestEducationAgent:
    def test_on_topic_doc_surfaces_in_contexts(self, education_setup):
        config, embedder, handle = education_setup
        agent = EducationAgent(handle, embedder, ScriptedMockBackend(), config)
        reply = agent.answer("勾股定理怎么证明？直角三角形的斜边平方")
        assert reply.route is Route.EDUCATION
        assert "doc-mid-math-1" in reply.contexts_used

    def test_cascade_shape_defaults(self, education_setup):
        config, embedder, handle = education_setup
        agent = EducationAgent(handle, embedder, ScriptedMockBackend(), config)
        run = agent.run("分数的意义是什么")
        assert len(run.retrieval_ids) <= config.retrieve_k
        assert len(run.reply.contexts_used) <= 3
        assert set(run.reply.contexts_used) <= set(run.retrieval_ids)
        assert run.rerank_ids == list(run.reply.contexts_used)

    def test_empty_index_degrades_without_crash(self, education_setup):
        config, embedder, _ = education_setup
        from eduroute.retrieval import build_index as build

        empty_handle = RetrievalHandle(index=build([], dim=config.embed_dim), documents={})
        agent = EducationAgent(empty_handle, embedder, ScriptedMockBackend(), config)
        reply = agent.answer("什么是导数")
        assert reply.degraded is True
        assert reply.contexts_used == ()
        assert reply.text.strip()

    def test_missing_index_degrades_without_crash(self, education_setup):
        config, embedder, _ = education_setup
        agent = EducationAgent(RetrievalHandle(), embedder, ScriptedMockBackend(), config)
        reply = agent.answer("什么是导数")
        assert reply.degraded is True
        assert reply.contexts_used == ()

    def test_backend_failure_yields_error_reply(self, education_setup):
        config, embedder, handle = education_setup
        agent = EducationAgent(handle, embedder, FailingBackend(), config)
        reply = agent.answer("乘法口诀")
        assert reply.error == "backend_unavailable"
        assert reply.degraded is True
        assert reply.text.strip()

    def test_contexts_always_subset_of_rerank(self, education_setup):
        config, embedder, handle = education_setup
        agent = EducationAgent(handle, embedder, ScriptedMockBackend(), config)
        for question in ("光的折射", "等比数列 公比", "attributive clause", "交通安全"):
            run = agent.run(question)
            assert set(run.reply.contexts_used) == set(run.rerank_ids)
            assert set(run.rerank_ids) <= set(run.retrieval_ids)


class TestPsychologyAgent:
    def test_fresh_session_prompt_has_only_question(self):
        config = default_config()
        agent = PsychologyAgent(ScriptedMockBackend(), config)
        run = agent.run([], "我最近压力很大")
        assert run.prompt.history == ()
        assert run.reply.route is Route.PSYCHOLOGY
        assert run.reply.contexts_used == ()

    def test_window_limits_history(self):
        config = default_config()  # history_window = 10
        agent = PsychologyAgent(ScriptedMockBackend(), config)
        history = []
        for i in range(12):
            role = Role.USER if i % 2 == 0 else Role.ASSISTANT
            history.append(ChatTurn(role=role, text=f"t{i}", timestamp=i))
        run = agent.run(history, "还是睡不好")
        assert len(run.prompt.history) == 10
        assert run.prompt.history[0].text == "t2"

    def test_reply_deterministic_given_session_state(self):
        config = default_config()
        agent = PsychologyAgent(ScriptedMockBackend(), config)
        history = [ChatTurn(role=Role.USER, text="你好", timestamp=1)]
        assert agent.answer(history, "很累").text == agent.answer(history, "很累").text

    def test_never_touches_the_index(self, education_setup):
        _, _, handle = education_setup
        config = default_config()
        agent = PsychologyAgent(ScriptedMockBackend(), config)
        searches_before = handle.index.stats.searches
        agent.answer([], "我心情不好")
        assert handle.index.stats.searches == searches_before

    def test_backend_failure_yields_error_reply(self):
        agent = PsychologyAgent(FailingBackend(), default_config())
        reply = agent.answer([], "我想聊聊")
        assert reply.error == "backend_unavailable"
        assert reply.route is Route.PSYCHOLOGY
