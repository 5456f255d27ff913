"""Tablet wire protocol: feedback messages out, tablet actions in.

Both directions are single-line JSON objects (UTF-8, no embedded newlines).
Encoding is canonical (sorted keys, compact separators) so message logs are
byte-comparable across runs.
"""

import json
from dataclasses import dataclass, field

from .tokens import GestureToken, token_from_mnemonic, UnknownTokenError

MESSAGE_TYPES = ("state", "warning", "approval_request", "progress", "error", "emergency")
ACTION_TYPES = ("gesture", "approve", "abort", "reset")


class ActionDecodeError(ValueError):
    """code is one of MALFORMED_JSON, UNKNOWN_TYPE, UNKNOWN_TOKEN."""

    def __init__(self, code, detail):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail


@dataclass(frozen=True)
class FeedbackMessage:
    type: str
    phase: str
    pending_tokens: tuple = ()
    commands: tuple = ()  # rows: {"index","text","status"}
    auv: dict = field(default_factory=lambda: {"x_m": 0.0, "y_m": 0.0, "z_m": 0.0,
                                               "heading_rad": 0.0})
    detail: str = ""
    seq: int = 0


@dataclass(frozen=True)
class TabletAction:
    type: str
    token: GestureToken | None = None


def encode_message(msg: FeedbackMessage) -> str:
    doc = {
        "type": msg.type,
        "phase": msg.phase,
        "pending_tokens": list(msg.pending_tokens),
        "commands": [dict(c) for c in msg.commands],
        "auv": msg.auv,
        "detail": msg.detail,
        "seq": msg.seq,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def decode_message(line: str) -> FeedbackMessage:
    doc = json.loads(line)
    return FeedbackMessage(
        type=doc["type"],
        phase=doc["phase"],
        pending_tokens=tuple(doc["pending_tokens"]),
        commands=tuple(doc["commands"]),
        auv=doc["auv"],
        detail=doc["detail"],
        seq=doc["seq"],
    )


def decode_action(line: str) -> TabletAction:
    """Parse one tablet frame; the token field is required iff type is gesture."""
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ActionDecodeError("MALFORMED_JSON", str(exc)) from None
    if not isinstance(doc, dict):
        raise ActionDecodeError("MALFORMED_JSON", "frame is not an object")
    action_type = doc.get("type")
    if action_type not in ACTION_TYPES:
        raise ActionDecodeError("UNKNOWN_TYPE", f"type={action_type!r}")
    if action_type == "gesture":
        if "token" not in doc:
            raise ActionDecodeError("MALFORMED_JSON", "gesture frame without token")
        try:
            token = token_from_mnemonic(doc["token"])
        except UnknownTokenError as exc:
            raise ActionDecodeError("UNKNOWN_TOKEN", str(exc)) from None
        return TabletAction("gesture", token)
    if "token" in doc:
        raise ActionDecodeError("MALFORMED_JSON", f"{action_type} frame carries a token")
    return TabletAction(action_type)


def encode_action(action: TabletAction) -> str:
    doc = {"type": action.type}
    if action.token is not None:
        doc["token"] = action.token.mnemonic
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
