import json
import threading

import pytest

from eduroute.core import (
    ChatTurn,
    Role,
    Route,
    RouteDecision,
    ServiceConfig,
    SessionStore,
    default_config,
    load_config,
    validate_decision,
)
from eduroute.errors import ConfigError, NotFoundError, ValidationError


class TestSessionStore:
    def test_create_session_is_empty_with_fresh_id(self):
        store = SessionStore()
        session = store.create_session()
        assert session.turns == []
        assert session.id

    def test_two_creates_give_distinct_ids(self):
        store = SessionStore()
        assert store.create_session().id != store.create_session().id

    def test_created_at_not_in_the_future(self):
        from eduroute.core import now_ms

        store = SessionStore()
        session = store.create_session()
        assert session.created_at <= now_ms()

    def test_append_turn(self):
        store = SessionStore()
        s = store.create_session()
        out = store.append_turn(s.id, ChatTurn(role=Role.USER, text="你好", timestamp=1))
        assert len(out.turns) == 1

    def test_append_empty_text_rejected(self):
        store = SessionStore()
        s = store.create_session()
        with pytest.raises(ValidationError):
            store.append_turn(s.id, ChatTurn(role=Role.USER, text="   ", timestamp=1))

    def test_append_unknown_session_not_found(self):
        store = SessionStore()
        with pytest.raises(NotFoundError):
            store.append_turn("nope", ChatTurn(role=Role.USER, text="hi", timestamp=1))

    def test_timestamps_must_not_decrease(self):
        store = SessionStore()
        s = store.create_session()
        store.append_turn(s.id, ChatTurn(role=Role.USER, text="a", timestamp=10))
        with pytest.raises(ValidationError):
            store.append_turn(s.id, ChatTurn(role=Role.ASSISTANT, text="b", timestamp=5))

    def test_roles_alternate_after_leading_system(self):
        store = SessionStore()
        s = store.create_session()
        store.append_turn(s.id, ChatTurn(role=Role.SYSTEM, text="sys", timestamp=1))
        store.append_turn(s.id, ChatTurn(role=Role.USER, text="a", timestamp=2))
        with pytest.raises(ValidationError):
            store.append_turn(s.id, ChatTurn(role=Role.USER, text="b", timestamp=3))
        store.append_turn(s.id, ChatTurn(role=Role.ASSISTANT, text="ok", timestamp=3))
        with pytest.raises(ValidationError):
            store.append_turn(s.id, ChatTurn(role=Role.SYSTEM, text="late", timestamp=4))

    def test_interleaved_appends_on_distinct_sessions_preserve_order(self):
        store = SessionStore()
        sessions = [store.create_session() for _ in range(4)]
        errors = []

        def worker(sid, base):
            try:
                for i in range(50):
                    role = Role.USER if i % 2 == 0 else Role.ASSISTANT
                    store.append_turn(sid, ChatTurn(role=role, text=f"m{i}", timestamp=base + i))
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

        threads = [
            threading.Thread(target=worker, args=(s.id, 1000)) for s in sessions
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        for s in sessions:
            turns = store.get(s.id).turns
            assert [t.text for t in turns] == [f"m{i}" for i in range(50)]
            assert all(a.timestamp <= b.timestamp for a, b in zip(turns, turns[1:]))

    def test_jsonl_persistence_and_recovery(self, tmp_path):
        log = tmp_path / "sessions.jsonl"
        store = SessionStore(log_path=log)
        s = store.create_session()
        store.append_turn(s.id, ChatTurn(role=Role.USER, text="你好", timestamp=7))
        store.append_turn(
            s.id, ChatTurn(role=Role.ASSISTANT, text="好的", timestamp=8, route=Route.PSYCHOLOGY)
        )

        lines = [json.loads(l) for l in log.read_text("utf-8").splitlines()]
        assert lines[0] == {"session_id": s.id, "role": "user", "text": "你好", "ts": 7}
        assert lines[1]["route"] == "psychology"

        recovered = SessionStore(log_path=log)
        turns = recovered.get(s.id).turns
        assert [t.text for t in turns] == ["你好", "好的"]
        assert turns[1].route is Route.PSYCHOLOGY


class TestRouteDecision:
    def test_refused_iff_unsafe(self):
        with pytest.raises(ValidationError):
            RouteDecision(safety_score=0.1, safe=True, intent_score=0.5, route=Route.REFUSED, latency_ms=1)
        with pytest.raises(ValidationError):
            RouteDecision(safety_score=0.9, safe=False, intent_score=0.5, route=Route.EDUCATION, latency_ms=1)

    def test_score_ranges(self):
        with pytest.raises(ValidationError):
            RouteDecision(safety_score=1.2, safe=False, intent_score=0.0, route=Route.REFUSED, latency_ms=1)
        with pytest.raises(ValidationError):
            RouteDecision(safety_score=0.2, safe=True, intent_score=0.5, route=Route.EDUCATION, latency_ms=-3)

    def test_threshold_coupling(self):
        config = default_config()
        good = RouteDecision(safety_score=0.2, safe=True, intent_score=0.7, route=Route.EDUCATION, latency_ms=1)
        validate_decision(good, config)
        bad = RouteDecision(safety_score=0.2, safe=True, intent_score=0.2, route=Route.EDUCATION, latency_ms=1)
        with pytest.raises(ValidationError):
            validate_decision(bad, config)


class TestConfig:
    def test_defaults_match_cascade_sizes(self):
        config = ServiceConfig()
        assert config.retrieve_k == 100
        assert config.rerank_m == 3
        assert config.safety_threshold == 0.5
        assert config.intent_threshold == 0.5
        assert config.history_window == 10

    def test_load_valid_file(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text('retrieve_k = 100\nrerank_m = 3\n', encoding="utf-8")
        config = load_config(path, environ={})
        assert (config.retrieve_k, config.rerank_m) == (100, 3)

    def test_rerank_larger_than_retrieve_is_config_error(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text("retrieve_k = 100\nrerank_m = 200\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="rerank_m"):
            load_config(path, environ={})

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text("", encoding="utf-8")
        assert load_config(path, environ={}) == ServiceConfig()

    def test_unknown_key_named_in_error(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text("retreive_k = 10\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="retreive_k"):
            load_config(path, environ={})

    def test_threshold_open_interval(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text("safety_threshold = 1.0\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="safety_threshold"):
            load_config(path, environ={})

    def test_parse_failure(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text("not toml ===", encoding="utf-8")
        with pytest.raises(ConfigError, match="parse"):
            load_config(path, environ={})

    def test_env_overrides_thresholds_and_endpoints(self, tmp_path):
        path = tmp_path / "svc.toml"
        path.write_text("safety_threshold = 0.5\n", encoding="utf-8")
        env = {
            "EDUROUTE_SAFETY_THRESHOLD": "0.25",
            "EDUROUTE_GENERATION_ENDPOINT": "http://gen.local/v1",
        }
        config = load_config(path, environ=env)
        assert config.safety_threshold == 0.25
        assert config.generation_endpoint == "http://gen.local/v1"
