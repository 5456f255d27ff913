"""Session engine: wires channel, segmenter, checker, pipeline and simulator.

One totally ordered input queue feeds the pipeline; effects are executed
here after each step. Time advances only through tick(), so a scripted run
with a fixed config and seed is reproducible byte-for-byte.
"""

import json
from collections import deque
from dataclasses import dataclass

from . import pipeline
from .channel import (
    NO_HAND,
    Debouncer,
    FrameObservation,
    NoiseModel,
    NoisyChannel,
    identity_confusion,
    symmetric_confusion,
)
from .config import SessionConfig
from .pipeline import (
    Abort,
    AbortMission,
    Approve,
    EmergencySurface,
    Feedback,
    GestureEvent,
    PipelinePhase,
    Reset,
    StartMission,
)
from .sim import (
    CommandDone,
    MissionComplete,
    MissionSim,
    PhotoTaken,
    Surfaced,
    WaypointReached,
)
from .tokens import GestureToken, token_from_mnemonic
from .wire import FeedbackMessage, TabletAction, encode_message


class Session:
    """Owns pipeline state, simulator, debouncer and the message sequence."""

    def __init__(self, config: SessionConfig = None):
        self.config = config or SessionConfig()
        self.state = pipeline.initial_state()
        self.sim = MissionSim(self.config.sim)
        self.debouncer = Debouncer(self.config.debounce)
        self.tick_count = 0
        self.seq = 0
        self.log = []
        self.listeners = []
        self.commands_validated = 0
        self.commands_rejected = 0
        self.missions_completed = 0
        self._inputs = deque()
        self._skips_seen = 0

    # -- input side ----------------------------------------------------------

    def submit_action(self, action: TabletAction):
        """Queue a tablet action; processed on the next tick."""
        if action.type == "gesture":
            self._inputs.append(GestureEvent(action.token))
        elif action.type == "approve":
            self._inputs.append(Approve())
        elif action.type == "abort":
            self._inputs.append(Abort())
        elif action.type == "reset":
            self._inputs.append(Reset())
        else:
            raise ValueError(f"not a tablet action: {action!r}")

    def submit_token(self, token: GestureToken):
        """Queue a recognized gesture; processed on the next tick."""
        self._inputs.append(GestureEvent(token))

    def push_frame(self, frame: FrameObservation):
        """Debounce one channel frame; a detected gesture joins the input queue."""
        token = self.debouncer.push(frame)
        if token is not None:
            self.submit_token(token)
        return token

    # -- stepping -------------------------------------------------------------

    def tick(self):
        """Advance one step: drain queued inputs, then move the simulator."""
        while self._inputs:
            self._step(self._inputs.popleft())
        for event in self.sim.tick():
            self._on_sim_event(event)
        for index, reason in self.sim.skipped[self._skips_seen:]:
            self._broadcast("warning", f"command {index + 1} skipped: {reason}")
            self._skips_seen += 1
        self.tick_count += 1

    def run_until_idle(self, max_ticks: int = 500_000):
        """Tick until the mission settles (sim idle and not EXECUTING)."""
        ticks = 0
        while (
            self.sim.mission_active
            or self.state.phase is PipelinePhase.EXECUTING
            or self._inputs
        ):
            if ticks >= max_ticks:
                break
            self.tick()
            ticks += 1
        return ticks

    def _step(self, inp):
        before = self.state
        self.state, effects = pipeline.step(self.state, inp, tick=self.tick_count)
        self.commands_validated += max(0, len(self.state.queue) - len(before.queue))
        self.commands_rejected += max(
            0, len(self.state.error_log) - len(before.error_log)
        )
        for effect in effects:
            self._execute(effect)

    def _execute(self, effect):
        if isinstance(effect, Feedback):
            self._broadcast(effect.kind, effect.detail)
        elif isinstance(effect, StartMission):
            self.sim.start_mission(effect.commands)
            self._skips_seen = 0
        elif isinstance(effect, AbortMission):
            self.sim.abort()
        elif isinstance(effect, EmergencySurface):
            self.sim.emergency_surface()
        else:
            raise TypeError(f"not an effect: {effect!r}")

    def _on_sim_event(self, event):
        if isinstance(event, CommandDone):
            self._step(pipeline.SimDone(event.command_index))
        elif isinstance(event, MissionComplete):
            self.missions_completed += 1
            self._step(pipeline.SimMissionComplete())
        elif isinstance(event, WaypointReached):
            self._broadcast("progress", f"waypoint {event.index + 1} reached")
        elif isinstance(event, PhotoTaken):
            x, y, z, _ = event.pose
            self._broadcast("progress", f"photo taken at ({x:.2f}, {y:.2f}, {z:.2f})")
        elif isinstance(event, Surfaced):
            if self.state.phase is PipelinePhase.EMERGENCY:
                self._broadcast("emergency", "surfaced; reset to continue")
            else:
                self._broadcast("state", "surfaced")

    # -- output side -----------------------------------------------------------

    def _message(self, kind: str, detail: str) -> FeedbackMessage:
        auv = self.sim.state
        return FeedbackMessage(
            type=kind,
            phase=self.state.phase.value,
            pending_tokens=tuple(pipeline.pending_mnemonics(self.state)),
            commands=tuple(pipeline.command_rows(self.state)),
            auv={
                "x_m": round(auv.x_m, 6),
                "y_m": round(auv.y_m, 6),
                "z_m": round(auv.z_m, 6),
                "heading_rad": round(auv.heading_rad, 6),
            },
            detail=detail,
            seq=self.seq + 1,
        )

    def _broadcast(self, kind: str, detail: str):
        msg = self._message(kind, detail)
        self.seq = msg.seq
        line = encode_message(msg)
        self.log.append(line)
        for listener in self.listeners:
            listener(line)
        return msg

    def broadcast_state(self, detail: str = "state snapshot"):
        """Push a full state snapshot to every listener (used on client connect)."""
        return self._broadcast("state", detail)

    def broadcast_error(self, detail: str):
        return self._broadcast("error", detail)


# ---------------------------------------------------------------------------
# Scripted scenarios


@dataclass(frozen=True)
class ScenarioStep:
    kind: str  # gesture | approve | abort | reset | wait
    token: GestureToken | None = None
    ticks: int = 0


_ACTION_WORDS = ("approve", "abort", "reset")


def load_scenario(path):
    """Scenario file: one item per line (mnemonic, action word, or `wait N`)."""
    steps = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            steps.append(parse_scenario_item(line))
    return steps


def parse_scenario_item(item: str) -> ScenarioStep:
    parts = item.split()
    if parts[0] == "wait":
        if len(parts) != 2 or not parts[1].isdigit():
            raise ValueError(f"bad wait step: {item!r}")
        return ScenarioStep("wait", ticks=int(parts[1]))
    if len(parts) != 1:
        raise ValueError(f"bad scenario item: {item!r}")
    if parts[0] in _ACTION_WORDS:
        return ScenarioStep(parts[0])
    return ScenarioStep("gesture", token=token_from_mnemonic(parts[0]))


def noise_model_from_config(config: SessionConfig) -> NoiseModel:
    confusion = (
        symmetric_confusion(config.noise.error_rate)
        if config.noise.error_rate > 0
        else identity_confusion()
    )
    return NoiseModel(confusion, config.noise.dropout_p, config.seed)


def run_scenario(
    steps,
    config: SessionConfig = None,
    frames_per_gesture: int = 15,
    gap_frames: int = 5,
    max_ticks: int = 500_000,
    session: Session = None,
):
    """Run a scripted scenario; returns (session, report dict)."""
    config = config or SessionConfig()
    session = session or Session(config)
    channel = NoisyChannel(noise_model_from_config(config))
    gestures_sent = 0
    events_recognized = 0
    span_errors = 0
    for step in steps:
        if step.kind == "gesture":
            gestures_sent += 1
            true = [FrameObservation(step.token, 1.0)] * frames_per_gesture + [
                FrameObservation(NO_HAND, 0.0)
            ] * gap_frames
            span_events = []
            for frame in channel.corrupt(true):
                token = session.push_frame(frame)
                if token is not None:
                    span_events.append(token)
                session.tick()
            events_recognized += len(span_events)
            if span_events != [step.token]:
                span_errors += 1
        elif step.kind == "wait":
            for _ in range(step.ticks):
                session.tick()
        else:
            session.submit_action(TabletAction(step.kind))
            session.tick()
    session.run_until_idle(max_ticks)
    report = {
        "gestures_sent": gestures_sent,
        "events_recognized": events_recognized,
        "commands_validated": session.commands_validated,
        "commands_rejected": session.commands_rejected,
        "missions_completed": session.missions_completed,
        "event_error_rate": (span_errors / gestures_sent) if gestures_sent else 0.0,
    }
    return session, report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
