import random

from caddy import pipeline as pl
from caddy.commands import GoDown, GoUp
from caddy.grammar import check, serialize
from caddy.pipeline import (
    Abort,
    AbortMission,
    Approve,
    EmergencySurface,
    Feedback,
    GestureEvent,
    PipelinePhase,
    Reset,
    SimDone,
    SimMissionComplete,
    StartMission,
    step,
)
from caddy.tokens import ALPHABET, GestureToken as T


def drive(tokens, state=None):
    state = state or pl.initial_state()
    effects = []
    for tok in tokens:
        state, evs = step(state, GestureEvent(tok))
        effects.extend(evs)
    return state, effects


MISSION = [T.START_COMM, T.GO_DOWN, T.DIGIT_1, T.END_COMM]


def test_valid_mission_awaits_approval():
    state, effects = drive(MISSION)
    assert state.phase is PipelinePhase.AWAITING_APPROVAL
    assert state.queue == (GoDown(1),)
    assert any(isinstance(e, Feedback) and e.kind == "approval_request" for e in effects)


def test_invalid_phrase_discarded_composing_continues():
    state, effects = drive([T.START_COMM, T.MOSAIC, T.START_COMM])
    assert state.phase is PipelinePhase.COMPOSING
    assert state.queue == ()
    assert len(state.error_log) == 1
    warnings = [e for e in effects if isinstance(e, Feedback) and e.kind == "warning"]
    assert warnings, "invalid command must warn the diver"


def test_end_mission_with_empty_queue_goes_idle():
    state, effects = drive([T.START_COMM, T.MOSAIC, T.END_COMM])
    assert state.phase is PipelinePhase.IDLE
    assert state.queue == ()
    assert any(isinstance(e, Feedback) and e.kind == "warning" for e in effects)


def test_approve_starts_mission():
    state, _ = drive(MISSION)
    state, effects = step(state, Approve())
    assert state.phase is PipelinePhase.EXECUTING
    assert state.executing_index == 0
    starts = [e for e in effects if isinstance(e, StartMission)]
    assert starts == [StartMission((GoDown(1),))]


def test_approve_when_idle_warns():
    state, effects = step(pl.initial_state(), Approve())
    assert state.phase is PipelinePhase.IDLE
    assert effects == [Feedback("warning", "nothing to approve")]


def test_abort_during_execution():
    state, _ = drive(MISSION)
    state, _ = step(state, Approve())
    state, effects = step(state, Abort())
    assert state.phase is PipelinePhase.IDLE
    assert state.queue == ()
    assert any(isinstance(e, AbortMission) for e in effects)


def test_abort_clears_pending_queue():
    state, _ = drive(MISSION)
    state, effects = step(state, Abort())
    assert state.phase is PipelinePhase.IDLE
    assert state.queue == ()
    assert not any(isinstance(e, AbortMission) for e in effects)


def test_emergency_from_any_phase():
    for prefix in ([], MISSION, MISSION + [None]):
        state = pl.initial_state()
        for tok in prefix:
            if tok is None:
                state, _ = step(state, Approve())
            else:
                state, _ = step(state, GestureEvent(tok))
        state, effects = step(state, GestureEvent(T.OUT_OF_AIR))
        assert state.phase is PipelinePhase.EMERGENCY
        assert sum(isinstance(e, EmergencySurface) for e in effects) == 1


def test_emergency_absorbs_everything_but_reset():
    state, _ = drive([T.OUT_OF_AIR])
    for inp in (GestureEvent(T.START_COMM), Approve(), Abort(), SimDone(0),
                SimMissionComplete(), GestureEvent(T.OUT_OF_AIR)):
        state, effects = step(state, inp)
        assert state.phase is PipelinePhase.EMERGENCY
        assert not any(isinstance(e, EmergencySurface) for e in effects)
    state, _ = step(state, Reset())
    assert state.phase is PipelinePhase.IDLE


def test_sim_done_advances_progress():
    state, _ = drive([T.START_COMM, T.GO_DOWN, T.DIGIT_1, T.START_COMM,
                      T.GO_UP, T.DIGIT_1, T.END_COMM])
    state, _ = step(state, Approve())
    state, effects = step(state, SimDone(0))
    assert state.executing_index == 1
    assert any(isinstance(e, Feedback) and e.kind == "progress" for e in effects)
    state, effects = step(state, SimMissionComplete())
    assert state.phase is PipelinePhase.IDLE
    assert state.queue == ()


def test_stale_sim_events_warn():
    state, effects = step(pl.initial_state(), SimDone(3))
    assert state.phase is PipelinePhase.IDLE
    assert effects == [Feedback("warning", "stale simulator event")]


def test_gestures_ignored_while_executing():
    state, _ = drive(MISSION)
    state, _ = step(state, Approve())
    state, effects = step(state, GestureEvent(T.START_COMM))
    assert state.phase is PipelinePhase.EXECUTING
    assert effects == [Feedback("warning", "mission in progress: gesture ignored")]


def test_composing_resumes_from_awaiting_approval():
    state, _ = drive(MISSION)
    state, _ = step(state, GestureEvent(T.START_COMM))
    assert state.phase is PipelinePhase.COMPOSING
    state, _ = drive([T.GO_UP, T.DIGIT_2, T.END_COMM], state)
    assert state.phase is PipelinePhase.AWAITING_APPROVAL
    assert state.queue == (GoDown(1), GoUp(2))


def random_input(rng):
    roll = rng.random()
    if roll < 0.70:
        return GestureEvent(rng.choice(ALPHABET))
    if roll < 0.78:
        return Approve()
    if roll < 0.84:
        return Abort()
    if roll < 0.88:
        return Reset()
    if roll < 0.94:
        return SimDone(rng.randrange(4))
    return SimMissionComplete()


def test_safety_gate_model_check_100k_steps():
    rng = random.Random(1234)
    state = pl.initial_state()
    for i in range(100_000):
        inp = random_input(rng)
        prev = state
        state, effects = step(state, inp, tick=i)
        for effect in effects:
            if isinstance(effect, StartMission):
                # Gate: only an Approve out of AWAITING_APPROVAL may start.
                assert isinstance(inp, Approve)
                assert prev.phase is PipelinePhase.AWAITING_APPROVAL
                assert len(effect.commands) > 0
                for cmd in effect.commands:
                    assert check(serialize(cmd)) == cmd
        # AWAITING_APPROVAL implies a non-empty validated queue.
        if state.phase is PipelinePhase.AWAITING_APPROVAL:
            assert len(state.queue) > 0
        # executing_index present iff EXECUTING, and in range.
        if state.phase is PipelinePhase.EXECUTING:
            assert state.executing_index is not None
            assert state.executing_index < len(state.queue)
        else:
            assert state.executing_index is None


def test_queue_grows_only_on_valid_phrase_completion():
    rng = random.Random(555)
    state = pl.initial_state()
    for _ in range(20_000):
        inp = random_input(rng)
        prev = state
        state, _ = step(state, inp)
        delta = len(state.queue) - len(prev.queue)
        if delta > 0:
            assert delta == 1
            assert isinstance(inp, GestureEvent)
            assert inp.token in (T.START_COMM, T.END_COMM)
            assert prev.phase in (PipelinePhase.COMPOSING, PipelinePhase.IDLE,
                                  PipelinePhase.AWAITING_APPROVAL)
            assert check(serialize(state.queue[-1])) == state.queue[-1]


def test_step_is_deterministic():
    rng = random.Random(777)
    inputs = [random_input(rng) for _ in range(5_000)]

    def run():
        state = pl.initial_state()
        trace = []
        for i, inp in enumerate(inputs):
            state, effects = step(state, inp, tick=i)
            trace.append((state, tuple(effects)))
        return trace

    assert run() == run()
