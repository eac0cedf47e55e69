"""Typed protocol messages and replayable transcripts.

Interactive runs exchange JSON envelopes of kind "protocol-message"; a
transcript records every message of a session plus the final verdict, with
enough verifier disclosure appended that the verdict can be recomputed
offline from the transcript alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class ProtocolError(RuntimeError):
    """A message arrived out of order or from the wrong session."""


class TranscriptError(ValueError):
    """A transcript is truncated, inconsistent, or malformed."""


@dataclass(frozen=True)
class Message:
    session: str
    step: str
    payload: dict[str, Any]

    def to_dict(self) -> dict:
        return {"session": self.session, "step": self.step, "payload": self.payload}

    @staticmethod
    def from_dict(obj: Any) -> "Message":
        if not isinstance(obj, dict) or not {"session", "step", "payload"} <= set(obj):
            raise TranscriptError("protocol message needs session, step, payload")
        if not isinstance(obj["payload"], dict):
            raise TranscriptError("protocol message payload must be an object")
        return Message(str(obj["session"]), str(obj["step"]), obj["payload"])


@dataclass(frozen=True)
class Transcript:
    kind: str
    session: str
    messages: tuple[Message, ...]
    verdict: str

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "session": self.session,
            "messages": [m.to_dict() for m in self.messages],
            "verdict": self.verdict,
        }

    @staticmethod
    def from_dict(obj: Any) -> "Transcript":
        if not isinstance(obj, dict) or not {"kind", "session", "messages", "verdict"} <= set(obj):
            raise TranscriptError("transcript needs kind, session, messages, verdict")
        if not isinstance(obj["messages"], list):
            raise TranscriptError("transcript messages must be a list")
        return Transcript(
            str(obj["kind"]),
            str(obj["session"]),
            tuple(Message.from_dict(m) for m in obj["messages"]),
            str(obj["verdict"]),
        )


def take_step(messages: tuple[Message, ...], index: int, step: str, session: str) -> Message:
    """Fetch message ``index`` of a transcript, insisting on its step name."""
    if index >= len(messages):
        raise TranscriptError(f"transcript truncated: missing {step}")
    msg = messages[index]
    if msg.step != step:
        raise TranscriptError(f"expected {step} at position {index}, found {msg.step}")
    if msg.session != session:
        raise TranscriptError(f"message at position {index} belongs to session {msg.session!r}")
    return msg
