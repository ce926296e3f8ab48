"""Shared domain types, the session store, and the service configuration.

Sessions live in memory; an optional append-only JSONL log (one object per
turn) allows recovery after a restart without a database.
"""

from __future__ import annotations

import enum
import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ConfigError, NotFoundError, ValidationError


def now_ms() -> int:
    """Current wall-clock time in integer milliseconds since the epoch."""
    return int(time.time() * 1000)


class Role(str, enum.Enum):
    USER = "user"
    ASSISTANT = "assistant"
    SYSTEM = "system"


class Route(str, enum.Enum):
    REFUSED = "refused"
    EDUCATION = "education"
    PSYCHOLOGY = "psychology"


@dataclass(frozen=True)
class ChatTurn:
    """One message in a conversation.

    ``route`` is an optional annotation set by the orchestrator on assistant
    turns (and on user turns that were refused); it is not part of the
    conversational payload.
    """

    role: Role
    text: str
    timestamp: int
    route: Route | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.role, Role):
            object.__setattr__(self, "role", Role(self.role))
        if self.role in (Role.USER, Role.ASSISTANT) and not self.text.strip():
            raise ValidationError(f"{self.role.value} turn text must be non-empty")


@dataclass
class Session:
    id: str
    created_at: int
    turns: list[ChatTurn] = field(default_factory=list)

    def last_turns(self, window: int) -> list[ChatTurn]:
        if window < 1:
            raise ValidationError("window must be >= 1")
        return self.turns[-window:]


def _check_turn_order(turns: list[ChatTurn], new: ChatTurn) -> None:
    if turns and new.timestamp < turns[-1].timestamp:
        raise ValidationError("turn timestamps must be non-decreasing")
    # user/assistant turns must alternate once the leading system turns end
    convo = [t for t in turns if t.role is not Role.SYSTEM]
    if new.role is Role.SYSTEM:
        if convo:
            raise ValidationError("system turns are only allowed before the conversation starts")
        return
    if convo and convo[-1].role is new.role:
        raise ValidationError(f"two consecutive {new.role.value} turns are not allowed")


class SessionStore:
    """Thread-safe in-memory session store with optional JSONL persistence.

    Appends to a single session are serialized by a per-session lock, so two
    concurrent appends to the same session never interleave. The persistence
    log gets one line per turn:

        {"session_id": "...", "role": "user", "text": "...", "ts": 1710000000000}

    An extra ``route`` key is added on turns the orchestrator annotated.
    """

    def __init__(
        self,
        log_path: str | os.PathLike | None = None,
        clock=now_ms,
        id_factory=lambda: uuid.uuid4().hex,
    ) -> None:
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._map_lock = threading.Lock()
        self._log_lock = threading.Lock()
        self._log_path = Path(log_path) if log_path is not None else None
        self._clock = clock
        self._id_factory = id_factory
        if self._log_path is not None and self._log_path.exists():
            self._replay_log()

    def create_session(self, session_id: str | None = None) -> Session:
        with self._map_lock:
            sid = session_id or self._id_factory()
            if sid in self._sessions:
                raise ValidationError(f"session id already exists: {sid}")
            session = Session(id=sid, created_at=self._clock())
            self._sessions[sid] = session
            self._locks[sid] = threading.Lock()
        return session

    def get(self, session_id: str) -> Session:
        with self._map_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"unknown session: {session_id}")
        return session

    def exists(self, session_id: str) -> bool:
        with self._map_lock:
            return session_id in self._sessions

    def append_turn(self, session_id: str, turn: ChatTurn) -> Session:
        with self._map_lock:
            if session_id not in self._sessions:
                raise NotFoundError(f"unknown session: {session_id}")
            lock = self._locks[session_id]
        with lock:
            session = self._sessions[session_id]
            _check_turn_order(session.turns, turn)
            session.turns.append(turn)
            self._persist(session_id, turn)
        return session

    def _persist(self, session_id: str, turn: ChatTurn) -> None:
        if self._log_path is None:
            return
        record = {
            "session_id": session_id,
            "role": turn.role.value,
            "text": turn.text,
            "ts": turn.timestamp,
        }
        if turn.route is not None:
            record["route"] = turn.route.value
        line = json.dumps(record, ensure_ascii=False)
        with self._log_lock:
            with open(self._log_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def _replay_log(self) -> None:
        assert self._log_path is not None
        with open(self._log_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                sid = rec["session_id"]
                if sid not in self._sessions:
                    self._sessions[sid] = Session(id=sid, created_at=rec["ts"])
                    self._locks[sid] = threading.Lock()
                turn = ChatTurn(
                    role=Role(rec["role"]),
                    text=rec["text"],
                    timestamp=rec["ts"],
                    route=Route(rec["route"]) if "route" in rec else None,
                )
                self._sessions[sid].turns.append(turn)


@dataclass(frozen=True)
class RouteDecision:
    """Audited outcome of the safety and intent stages for one message.

    ``safety_score`` is the probability the message is unsafe; ``intent_score``
    is the probability the message is an education question (0.0 when the
    message was refused and intent never ran).
    """

    safety_score: float
    safe: bool
    intent_score: float
    route: Route
    latency_ms: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.safety_score <= 1.0:
            raise ValidationError("safety_score must be in [0, 1]")
        if not 0.0 <= self.intent_score <= 1.0:
            raise ValidationError("intent_score must be in [0, 1]")
        if self.latency_ms < 0:
            raise ValidationError("latency_ms must be non-negative")
        if (self.route is Route.REFUSED) != (not self.safe):
            raise ValidationError("route is refused iff safe is false")


def validate_decision(decision: RouteDecision, config: "ServiceConfig") -> None:
    """Assert the threshold coupling between scores and the chosen route."""
    safe = decision.safety_score < config.safety_threshold
    if decision.safe != safe:
        raise ValidationError("safe flag does not match safety threshold")
    if decision.safe:
        education = decision.intent_score >= config.intent_threshold
        if (decision.route is Route.EDUCATION) != education:
            raise ValidationError("route does not match intent threshold")


_ENV_PREFIX = "EDUROUTE_"

# Config keys overridable from the environment (EDUROUTE_<KEY uppercased>).
ENV_OVERRIDABLE = (
    "safety_threshold",
    "intent_threshold",
    "generation_endpoint",
    "embedding_endpoint",
    "reranker_endpoint",
    "safety_scorer_endpoint",
    "intent_scorer_endpoint",
)


@dataclass(frozen=True)
class ServiceConfig:
    """Immutable service configuration; see README for the key reference."""

    safety_threshold: float = 0.5
    intent_threshold: float = 0.5
    retrieve_k: int = 100
    rerank_m: int = 3
    history_window: int = 10

    feature_dim: int = 4096
    embed_dim: int = 64

    hnsw_m: int = 16
    hnsw_ef_construction: int = 200
    hnsw_ef_search: int = 128
    hnsw_seed: int = 0

    excerpt_budget: int = 800
    prompt_budget: int = 6000

    backend: str = "scripted_mock"
    generation_endpoint: str = ""
    embedding_endpoint: str = ""
    reranker_endpoint: str = ""
    safety_scorer_endpoint: str = ""
    intent_scorer_endpoint: str = ""

    safety_model_path: str = ""
    intent_model_path: str = ""
    corpus_path: str = ""
    index_path: str = ""
    session_log_path: str = ""
    trace_path: str = ""

    refusal_message: str = "很抱歉，我无法回答这个问题。(Sorry, I can't help with that request.)"
    auto_create_sessions: bool = True
    request_timeout_s: float = 30.0

    def __post_init__(self) -> None:
        if not 0.0 < self.safety_threshold < 1.0:
            raise ConfigError("safety_threshold must be in the open interval (0, 1)")
        if not 0.0 < self.intent_threshold < 1.0:
            raise ConfigError("intent_threshold must be in the open interval (0, 1)")
        for key in ("retrieve_k", "rerank_m", "history_window", "feature_dim", "embed_dim"):
            if getattr(self, key) < 1:
                raise ConfigError(f"{key} must be a positive integer")
        if self.rerank_m > self.retrieve_k:
            raise ConfigError("rerank_m must not exceed retrieve_k")
        if self.hnsw_ef_construction < self.hnsw_m:
            raise ConfigError("hnsw_ef_construction must be >= hnsw_m")
        if self.hnsw_ef_search < 1:
            raise ConfigError("hnsw_ef_search must be >= 1")


def load_config(path: str | os.PathLike, environ: dict[str, str] | None = None) -> ServiceConfig:
    """Load a TOML config file, apply env overrides, validate invariants.

    Unspecified keys take the defaults documented on ServiceConfig; unknown
    keys are rejected so typos fail loudly.
    """
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse failure in {path}: {exc}")

    known = {f.name: f.type for f in ServiceConfig.__dataclass_fields__.values()}
    values: dict[str, object] = {}
    for key, value in raw.items():
        if key not in known:
            raise ConfigError(f"unknown config key: {key}")
        values[key] = value

    env = os.environ if environ is None else environ
    for key in ENV_OVERRIDABLE:
        env_key = _ENV_PREFIX + key.upper()
        if env_key in env:
            values[key] = _coerce_like_default(key, env[env_key])

    try:
        return ServiceConfig(**values)
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}")


def _coerce_like_default(key: str, raw: str):
    default = getattr(ServiceConfig(), key)
    if isinstance(default, bool):
        return raw.lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def default_config(**overrides) -> ServiceConfig:
    """ServiceConfig with documented defaults, overridable per keyword."""
    return replace(ServiceConfig(), **overrides) if overrides else ServiceConfig()
