"""Answering agents and their generation backends."""

from .backends import ConstantLetterBackend, RemoteBackend, ScriptedMockBackend, make_backend
from .education import EducationAgent, EducationRun, RetrievalHandle
from .prompts import (
    AssembledPrompt,
    ContextBlock,
    assemble_education_prompt,
    assemble_psychology_prompt,
)
from .psychology import PsychologyAgent, PsychologyRun
from .replies import AgentReply

__all__ = [
    "AgentReply",
    "AssembledPrompt",
    "ConstantLetterBackend",
    "ContextBlock",
    "EducationAgent",
    "EducationRun",
    "PsychologyAgent",
    "PsychologyRun",
    "RemoteBackend",
    "RetrievalHandle",
    "ScriptedMockBackend",
    "assemble_education_prompt",
    "assemble_psychology_prompt",
    "make_backend",
]
