"""Approval-gated mission dispatcher.

A pure state machine: step() maps (state, input) to (state, effects) and
performs no I/O itself. Commands validated by the syntax checker queue up
while composing; a mission executes only after an explicit Approve, can be
aborted at any time, and OUT_OF_AIR forces the absorbing EMERGENCY phase
that only Reset leaves.
"""

from dataclasses import dataclass, field, replace
from enum import Enum

from . import grammar, segmenter
from .commands import command_text
from .grammar import SyntaxFault
from .segmenter import SegmenterState, Terminator
from .tokens import GestureToken, mnemonic_from_token


class PipelinePhase(Enum):
    IDLE = "IDLE"
    COMPOSING = "COMPOSING"
    AWAITING_APPROVAL = "AWAITING_APPROVAL"
    EXECUTING = "EXECUTING"
    EMERGENCY = "EMERGENCY"


# ---------------------------------------------------------------------------
# Inputs (gesture events from the channel, actions from the tablet,
# completion callbacks from the simulator)


@dataclass(frozen=True)
class GestureEvent:
    token: GestureToken


@dataclass(frozen=True)
class Approve:
    pass


@dataclass(frozen=True)
class Abort:
    pass


@dataclass(frozen=True)
class Reset:
    pass


@dataclass(frozen=True)
class SimDone:
    command_index: int


@dataclass(frozen=True)
class SimMissionComplete:
    pass


PipelineInput = GestureEvent | Approve | Abort | Reset | SimDone | SimMissionComplete


# ---------------------------------------------------------------------------
# Effects (instructions to the host; the state machine performs no I/O)


@dataclass(frozen=True)
class Feedback:
    """Message for the tablet; the host stamps pose and sequence number."""

    kind: str  # state | warning | approval_request | progress | emergency
    detail: str


@dataclass(frozen=True)
class StartMission:
    commands: tuple


@dataclass(frozen=True)
class AbortMission:
    pass


@dataclass(frozen=True)
class EmergencySurface:
    pass


Effect = Feedback | StartMission | AbortMission | EmergencySurface


@dataclass(frozen=True)
class PipelineState:
    phase: PipelinePhase = PipelinePhase.IDLE
    segmenter: SegmenterState = field(default_factory=SegmenterState)
    queue: tuple = ()  # validated, undispatched ParsedCommands
    executing_index: int | None = None
    error_log: tuple = ()  # (tick, SyntaxFault) pairs


def initial_state() -> PipelineState:
    return PipelineState()


def pending_mnemonics(state: PipelineState):
    """Mnemonics of the currently open phrase, for the tablet token strip."""
    return [mnemonic_from_token(t) for t in state.segmenter.buffer]


def command_rows(state: PipelineState):
    """Queued commands with their execution status, for display."""
    rows = []
    for i, cmd in enumerate(state.queue):
        if state.executing_index is None:
            status = "queued"
        elif i < state.executing_index:
            status = "done"
        elif i == state.executing_index:
            status = "running"
        else:
            status = "queued"
        rows.append({"index": i, "text": command_text(cmd), "status": status})
    return rows


def _close_mission(state: PipelineState, effects):
    """Mission delimiter seen: request approval, or warn on an empty mission."""
    if state.queue:
        state = replace(state, phase=PipelinePhase.AWAITING_APPROVAL)
        effects.append(
            Feedback("approval_request", f"mission ready: {len(state.queue)} command(s)")
        )
    else:
        state = replace(state, phase=PipelinePhase.IDLE)
        effects.append(Feedback("warning", "mission ended with no valid commands"))
    return state


def _enter_emergency(state: PipelineState, effects):
    state = replace(state, phase=PipelinePhase.EMERGENCY, segmenter=SegmenterState(),
                    executing_index=None)
    effects.append(EmergencySurface())
    effects.append(Feedback("emergency", "out of air: surfacing"))
    return state


def _feed_gesture(state: PipelineState, token: GestureToken, tick: int):
    effects = []
    seg_state, events = segmenter.feed(state.segmenter, token)
    state = replace(state, segmenter=seg_state)
    if not events and seg_state.open and state.phase in (
        PipelinePhase.IDLE,
        PipelinePhase.COMPOSING,
        PipelinePhase.AWAITING_APPROVAL,
    ):
        # Token opened or extended a phrase: keep the tablet strip live.
        state = replace(state, phase=PipelinePhase.COMPOSING)
        effects.append(Feedback("state", f"gesture {mnemonic_from_token(token)}"))
        return state, effects

    for event in events:
        if isinstance(event, segmenter.Emergency):
            return _enter_emergency(state, effects), effects
        if isinstance(event, segmenter.StrayToken):
            effects.append(
                Feedback(
                    "warning",
                    f"stray gesture {mnemonic_from_token(event.token)} outside a phrase",
                )
            )
            continue
        if isinstance(event, segmenter.EmptyPhrase):
            effects.append(Feedback("warning", "empty phrase"))
            if event.terminator is Terminator.END_MISSION:
                state = _close_mission(state, effects)
            continue
        # PhraseComplete
        result = grammar.check(event.tokens)
        if isinstance(result, SyntaxFault):
            state = replace(state, error_log=state.error_log + ((tick, result),))
            effects.append(
                Feedback(
                    "warning",
                    f"invalid command: {result.code.value} at token {result.position}"
                    f" ({result.detail})",
                )
            )
        else:
            state = replace(state, queue=state.queue + (result,))
            effects.append(Feedback("state", f"command accepted: {command_text(result)}"))
        if event.terminator is Terminator.END_MISSION:
            state = _close_mission(state, effects)
        else:
            state = replace(state, phase=PipelinePhase.COMPOSING)
    return state, effects


def step(state: PipelineState, inp: PipelineInput, tick: int = 0):
    """Advance the dispatcher; returns (state, effects). Total and deterministic."""
    if state.phase is PipelinePhase.EMERGENCY:
        if isinstance(inp, Reset):
            return initial_state(), [AbortMission(), Feedback("state", "reset; idle")]
        return state, [Feedback("warning", "in emergency: reset required")]

    if isinstance(inp, GestureEvent):
        if state.phase is PipelinePhase.EXECUTING:
            if inp.token is GestureToken.OUT_OF_AIR:
                effects = []
                return _enter_emergency(state, effects), effects
            return state, [
                Feedback("warning", "mission in progress: gesture ignored")
            ]
        return _feed_gesture(state, inp.token, tick)

    if isinstance(inp, Approve):
        if state.phase is PipelinePhase.AWAITING_APPROVAL:
            state = replace(state, phase=PipelinePhase.EXECUTING, executing_index=0)
            return state, [
                StartMission(state.queue),
                Feedback("state", f"mission approved: executing {len(state.queue)} command(s)"),
            ]
        return state, [Feedback("warning", "nothing to approve")]

    if isinstance(inp, Abort):
        effects = []
        if state.phase is PipelinePhase.EXECUTING:
            effects.append(AbortMission())
        state = replace(
            state,
            phase=PipelinePhase.IDLE,
            segmenter=SegmenterState(),
            queue=(),
            executing_index=None,
        )
        effects.append(Feedback("state", "aborted; idle"))
        return state, effects

    if isinstance(inp, Reset):
        effects = []
        if state.phase is PipelinePhase.EXECUTING:
            effects.append(AbortMission())
        return initial_state(), effects + [Feedback("state", "reset; idle")]

    if isinstance(inp, SimDone):
        if state.phase is PipelinePhase.EXECUTING and inp.command_index == state.executing_index:
            nxt = min(inp.command_index + 1, len(state.queue) - 1)
            state = replace(state, executing_index=nxt)
            return state, [
                Feedback(
                    "progress",
                    f"command {inp.command_index + 1}/{len(state.queue)} done",
                )
            ]
        return state, [Feedback("warning", "stale simulator event")]

    if isinstance(inp, SimMissionComplete):
        if state.phase is PipelinePhase.EXECUTING:
            state = replace(
                state,
                phase=PipelinePhase.IDLE,
                queue=(),
                executing_index=None,
            )
            return state, [Feedback("state", "mission complete")]
        return state, [Feedback("warning", "stale simulator event")]

    raise TypeError(f"not a pipeline input: {inp!r}")
