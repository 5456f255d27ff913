"""Streaming phrase segmenter.

Groups incoming gesture tokens into phrases using the delimiter pairs
(START_COMM, START_COMM) for command continuation and
(START_COMM, END_COMM) for mission end. Anomalies are reported as events,
never as failures; OUT_OF_AIR bypasses segmentation entirely.
"""

from dataclasses import dataclass
from enum import Enum

from .tokens import GestureToken


class Terminator(Enum):
    CONTINUE = "continue"
    END_MISSION = "end_mission"


@dataclass(frozen=True)
class PhraseComplete:
    tokens: tuple
    terminator: Terminator


@dataclass(frozen=True)
class EmptyPhrase:
    terminator: Terminator


@dataclass(frozen=True)
class StrayToken:
    token: GestureToken


@dataclass(frozen=True)
class Emergency:
    pass


ParserEvent = PhraseComplete | EmptyPhrase | StrayToken | Emergency


@dataclass(frozen=True)
class SegmenterState:
    """open: a START_COMM has been seen and not yet closed. buffer empty iff not open."""

    open: bool = False
    buffer: tuple = ()


def reset(state: SegmenterState = None) -> SegmenterState:
    return SegmenterState()


def feed(state: SegmenterState, token: GestureToken):
    """Advance the segmenter by one token; returns (state, events)."""
    if token is GestureToken.OUT_OF_AIR:
        return SegmenterState(), [Emergency()]

    if not state.open:
        if token is GestureToken.START_COMM:
            return SegmenterState(open=True, buffer=()), []
        return state, [StrayToken(token)]

    if token is GestureToken.START_COMM:
        event = (
            PhraseComplete(state.buffer, Terminator.CONTINUE)
            if state.buffer
            else EmptyPhrase(Terminator.CONTINUE)
        )
        return SegmenterState(open=True, buffer=()), [event]
    if token is GestureToken.END_COMM:
        event = (
            PhraseComplete(state.buffer, Terminator.END_MISSION)
            if state.buffer
            else EmptyPhrase(Terminator.END_MISSION)
        )
        return SegmenterState(), [event]
    return SegmenterState(open=True, buffer=state.buffer + (token,)), []
