import json

import pytest

from caddy.config import parse_config
from caddy.pipeline import PipelinePhase
from caddy.session import (
    Session,
    load_scenario,
    parse_scenario_item,
    run_scenario,
)
from caddy.tokens import GestureToken as T
from caddy.wire import TabletAction, decode_message

CLEAN = {
    "noise": {"error_rate": 0.0, "dropout_p": 0.0},
    "debounce": {"min_confidence": 0.5},
    "seed": 1,
}

GO_DOWN_MISSION = "start_comm go_down digit_1 end_comm approve".split()
MOSAIC_MISSION = (
    "start_comm mosaic digit_1 digit_0 sep digit_1 digit_2 "
    "start_comm go_down digit_1 end_comm approve"
).split()


def steps_of(items):
    return [parse_scenario_item(i) for i in items]


def test_clean_go_down_mission():
    session, report = run_scenario(steps_of(GO_DOWN_MISSION), parse_config(CLEAN))
    assert session.state.phase is PipelinePhase.IDLE
    assert session.sim.state.z_m == pytest.approx(1.0, abs=0.05)
    assert report["gestures_sent"] == 4
    assert report["events_recognized"] == 4
    assert report["commands_validated"] == 1
    assert report["commands_rejected"] == 0
    assert report["missions_completed"] == 1
    assert report["event_error_rate"] == 0.0


def test_clean_mosaic_mission_lanes():
    session, report = run_scenario(steps_of(MOSAIC_MISSION), parse_config(CLEAN))
    assert report["missions_completed"] == 1
    assert session.sim.state.z_m == pytest.approx(1.0, abs=0.05)
    lanes = sorted({round(x, 6) for x, _, _ in session.sim.waypoint_log})
    assert lanes == [0.0, 2.0, 4.0, 6.0, 8.0, 10.0]
    assert len(session.sim.waypoint_log) == 12


def test_abort_mid_mosaic():
    items = MOSAIC_MISSION + ["wait 200", "abort"]
    session, report = run_scenario(steps_of(items), parse_config(CLEAN))
    assert session.state.phase is PipelinePhase.IDLE
    assert report["missions_completed"] == 0
    assert not session.sim.mission_active
    waypoints_at_abort = len(session.sim.waypoint_log)
    for _ in range(500):
        session.tick()
    assert len(session.sim.waypoint_log) == waypoints_at_abort


def test_invalid_command_rejected_and_logged():
    items = "start_comm mosaic end_comm".split()
    session, report = run_scenario(steps_of(items), parse_config(CLEAN))
    assert report["commands_validated"] == 0
    assert report["commands_rejected"] == 1
    assert report["missions_completed"] == 0
    warnings = [decode_message(l) for l in session.log if '"warning"' in l]
    assert any("MISSING_PARAMETER" in m.detail for m in warnings)


def test_emergency_scenario_surfaces_and_locks():
    steps = steps_of("start_comm go_down digit_5 end_comm approve".split())
    steps += [parse_scenario_item("wait 300"), parse_scenario_item("out_of_air")]
    session, _ = run_scenario(steps, parse_config(CLEAN))
    assert session.state.phase is PipelinePhase.EMERGENCY
    assert session.sim.state.z_m <= 0.05
    emergencies = [decode_message(l) for l in session.log if '"emergency"' in l]
    assert any("out of air" in m.detail for m in emergencies)
    assert any("surfaced" in m.detail for m in emergencies)
    # only reset leaves emergency
    session.submit_action(TabletAction("approve"))
    session.tick()
    assert session.state.phase is PipelinePhase.EMERGENCY
    session.submit_action(TabletAction("reset"))
    session.tick()
    assert session.state.phase is PipelinePhase.IDLE


def test_message_log_deterministic():
    def run():
        session, report = run_scenario(steps_of(MOSAIC_MISSION), parse_config(CLEAN))
        return "\n".join(session.log), json.dumps(report, sort_keys=True)

    assert run() == run()


def test_seq_strictly_ascending_no_gaps():
    session, _ = run_scenario(steps_of(MOSAIC_MISSION), parse_config(CLEAN))
    seqs = [decode_message(line).seq for line in session.log]
    assert seqs == list(range(1, len(seqs) + 1))


def test_every_action_produces_feedback_within_one_tick():
    session = Session(parse_config(CLEAN))
    for action in ("approve", "abort", "reset"):
        before = len(session.log)
        session.submit_action(TabletAction(action))
        session.tick()
        assert len(session.log) > before
    before = len(session.log)
    session.submit_action(TabletAction("gesture", T.START_COMM))
    session.tick()
    assert len(session.log) > before


def test_phase_field_matches_pipeline_phase():
    session, _ = run_scenario(steps_of(GO_DOWN_MISSION), parse_config(CLEAN))
    last = decode_message(session.log[-1])
    assert last.phase == session.state.phase.value == "IDLE"
    assert last.detail == "mission complete"


def test_approval_request_message_lists_commands():
    session = Session(parse_config(CLEAN))
    for tok in (T.START_COMM, T.GO_DOWN, T.DIGIT_1, T.END_COMM):
        session.submit_token(tok)
        session.tick()
    approvals = [decode_message(l) for l in session.log if '"approval_request"' in l]
    assert approvals
    assert approvals[-1].commands[0]["text"] == "go down 1 m"
    assert approvals[-1].commands[0]["status"] == "queued"


def test_load_scenario_file(tmp_path):
    path = tmp_path / "scenario.txt"
    path.write_text("# demo\nstart_comm\ngo_down\ndigit_1\nend_comm\napprove\nwait 10\nabort\n")
    steps = load_scenario(path)
    assert [s.kind for s in steps] == [
        "gesture", "gesture", "gesture", "gesture", "approve", "wait", "abort"
    ]
    assert steps[0].token is T.START_COMM
    assert steps[5].ticks == 10


def test_bad_scenario_items():
    with pytest.raises(ValueError):
        parse_scenario_item("wait x")
    with pytest.raises(ValueError):
        parse_scenario_item("go_down digit_1")
