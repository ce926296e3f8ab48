"""eduroute: safety-gated chat routing between a retrieval-augmented
education agent and a multi-turn psychology agent."""

from .core import (
    ChatTurn,
    Role,
    Route,
    RouteDecision,
    ServiceConfig,
    Session,
    SessionStore,
    default_config,
    load_config,
)

__version__ = "0.1.0"

__all__ = [
    "ChatTurn",
    "Role",
    "Route",
    "RouteDecision",
    "ServiceConfig",
    "Session",
    "SessionStore",
    "default_config",
    "load_config",
    "__version__",
]
