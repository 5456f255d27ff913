import json

import pytest

from caddy.tokens import GestureToken as T
from caddy.wire import (
    ActionDecodeError,
    FeedbackMessage,
    TabletAction,
    decode_action,
    decode_message,
    encode_action,
    encode_message,
)


def sample_message(seq=1):
    return FeedbackMessage(
        type="approval_request",
        phase="AWAITING_APPROVAL",
        pending_tokens=("go_down", "digit_1"),
        commands=({"index": 0, "text": "go down 1 m", "status": "queued"},),
        auv={"x_m": 1.0, "y_m": 2.0, "z_m": 3.0, "heading_rad": 0.5},
        detail="mission ready: 1 command(s)",
        seq=seq,
    )


def test_message_round_trip():
    msg = sample_message()
    assert decode_message(encode_message(msg)) == msg


def test_encoding_is_single_line_json():
    line = encode_message(sample_message())
    assert "\n" not in line
    doc = json.loads(line)
    assert doc["type"] == "approval_request"
    assert doc["commands"] == [{"index": 0, "text": "go down 1 m", "status": "queued"}]


def test_state_message_with_empty_queue():
    line = encode_message(FeedbackMessage(type="state", phase="IDLE"))
    assert json.loads(line)["commands"] == []


def test_encoding_is_canonical():
    a = encode_message(sample_message())
    b = encode_message(sample_message())
    assert a == b


@pytest.mark.parametrize(
    "line,expected",
    [
        ('{"type":"gesture","token":"out_of_air"}', TabletAction("gesture", T.OUT_OF_AIR)),
        ('{"type":"gesture","token":"mosaic"}', TabletAction("gesture", T.MOSAIC)),
        ('{"type":"approve"}', TabletAction("approve")),
        ('{"type":"abort"}', TabletAction("abort")),
        ('{"type":"reset"}', TabletAction("reset")),
    ],
)
def test_decode_action(line, expected):
    assert decode_action(line) == expected


@pytest.mark.parametrize(
    "line,code",
    [
        ("not json", "MALFORMED_JSON"),
        ("[1,2]", "MALFORMED_JSON"),
        ('{"type":"fly"}', "UNKNOWN_TYPE"),
        ('{"type":"gesture"}', "MALFORMED_JSON"),
        ('{"type":"gesture","token":"xyz"}', "UNKNOWN_TOKEN"),
        ('{"type":"approve","token":"mosaic"}', "MALFORMED_JSON"),
    ],
)
def test_decode_action_errors(line, code):
    with pytest.raises(ActionDecodeError) as exc:
        decode_action(line)
    assert exc.value.code == code


def test_action_round_trip():
    for action in (TabletAction("gesture", T.SEP), TabletAction("abort")):
        assert decode_action(encode_action(action)) == action
