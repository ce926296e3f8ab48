"""The reply shape both agents produce."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import Route
from ..errors import ValidationError


@dataclass(frozen=True)
class AgentReply:
    text: str
    route: Route
    contexts_used: tuple[str, ...] = ()
    backend_latency_ms: int = 0
    degraded: bool = False
    error: str | None = None

    def __post_init__(self) -> None:
        if self.route is Route.PSYCHOLOGY and self.contexts_used:
            raise ValidationError("psychology replies must not cite contexts")
        if self.backend_latency_ms < 0:
            raise ValidationError("backend_latency_ms must be non-negative")
