"""Pipeline orchestration and the HTTP service around it."""

from .pipeline import ChatOutcome, Orchestrator, PipelineTrace, TraceWriter
from .service import ServiceState, build_state, create_app

__all__ = [
    "ChatOutcome",
    "Orchestrator",
    "PipelineTrace",
    "ServiceState",
    "TraceWriter",
    "build_state",
    "create_app",
]
