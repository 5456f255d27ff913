"""Syntax checker: validates one phrase against the command grammar.

Grammar (one command per phrase, LL(1)):

    command := MOSAIC num SEP num | PHOTO [num] | GO_DOWN num | GO_UP num
             | GO_TO place | CARRY EQUIPMENT place
    num     := 1-3 digit tokens, value 1..=999
    place   := BOAT | HERE

check() is total over arbitrary token lists and reports the first error in
a left-to-right scan; serialize() is its exact inverse on valid commands.
"""

from dataclasses import dataclass
from enum import Enum

from . import tokens as tk
from .commands import Carry, GoDown, GoTo, GoUp, Mosaic, ParsedCommand, Photo
from .tokens import GestureToken


class FaultCode(Enum):
    EMPTY_COMMAND = "EMPTY_COMMAND"
    UNKNOWN_ACTION = "UNKNOWN_ACTION"
    MISSING_PARAMETER = "MISSING_PARAMETER"
    TRAILING_TOKENS = "TRAILING_TOKENS"
    BAD_NUMBER = "BAD_NUMBER"
    BAD_PLACE = "BAD_PLACE"


@dataclass(frozen=True)
class SyntaxFault:
    """Why a phrase was rejected and where.

    position indexes into the phrase; for MISSING_PARAMETER it is the index
    where the absent token would sit, which may equal the phrase length.
    """

    code: FaultCode
    position: int
    detail: str = ""


_ACTIONS = (
    GestureToken.MOSAIC,
    GestureToken.PHOTO,
    GestureToken.GO_DOWN,
    GestureToken.GO_UP,
    GestureToken.GO_TO,
    GestureToken.CARRY,
)


class _Scan:
    """Cursor over the phrase; helpers return SyntaxFault on the first error."""

    def __init__(self, phrase):
        self.phrase = list(phrase)
        self.pos = 0

    @property
    def done(self):
        return self.pos >= len(self.phrase)

    def peek(self):
        return self.phrase[self.pos]

    def number(self, what):
        if self.done:
            return SyntaxFault(FaultCode.MISSING_PARAMETER, self.pos, f"expected {what}")
        if not tk.is_digit(self.peek()):
            return SyntaxFault(FaultCode.BAD_NUMBER, self.pos, f"expected digit for {what}")
        start = self.pos
        value = 0
        while not self.done and tk.is_digit(self.peek()):
            if self.pos - start == 3:
                return SyntaxFault(FaultCode.BAD_NUMBER, self.pos, f"{what} longer than 3 digits")
            value = value * 10 + tk.digit_value(self.peek())
            self.pos += 1
        if value == 0:
            return SyntaxFault(FaultCode.BAD_NUMBER, start, f"{what} is zero meters")
        return value

    def separator(self):
        if self.done:
            return SyntaxFault(FaultCode.MISSING_PARAMETER, self.pos, "expected separator")
        if self.peek() is not GestureToken.SEP:
            return SyntaxFault(FaultCode.MISSING_PARAMETER, self.pos, "expected separator")
        self.pos += 1
        return None

    def place(self, what):
        if self.done:
            return SyntaxFault(FaultCode.MISSING_PARAMETER, self.pos, f"expected {what}")
        token = self.peek()
        if token not in (GestureToken.BOAT, GestureToken.HERE):
            return SyntaxFault(FaultCode.BAD_PLACE, self.pos, f"expected boat or here for {what}")
        self.pos += 1
        return token


def check(phrase) -> ParsedCommand | SyntaxFault:
    """Validate a delimiter-free phrase; first error in left-to-right scan wins."""
    scan = _Scan(phrase)
    if scan.done:
        return SyntaxFault(FaultCode.EMPTY_COMMAND, 0, "empty phrase")
    action = scan.peek()
    if action not in _ACTIONS:
        return SyntaxFault(
            FaultCode.UNKNOWN_ACTION, 0, f"{action.mnemonic} does not start a command"
        )
    scan.pos += 1

    if action is GestureToken.MOSAIC:
        x = scan.number("x dimension")
        if isinstance(x, SyntaxFault):
            return x
        fault = scan.separator()
        if fault is not None:
            return fault
        y = scan.number("y dimension")
        if isinstance(y, SyntaxFault):
            return y
        cmd = Mosaic(x, y)
    elif action is GestureToken.PHOTO:
        if scan.done:
            cmd = Photo(None)
        else:
            alt = scan.number("altitude")
            if isinstance(alt, SyntaxFault):
                # Optional slot: a non-digit here is trailing junk, not a bad
                # number, unless it started with a digit.
                if alt.code is FaultCode.BAD_NUMBER and not tk.is_digit(scan.phrase[alt.position]):
                    return SyntaxFault(
                        FaultCode.TRAILING_TOKENS, alt.position, "photo takes only an altitude"
                    )
                return alt
            cmd = Photo(alt)
    elif action is GestureToken.GO_DOWN or action is GestureToken.GO_UP:
        d = scan.number("distance")
        if isinstance(d, SyntaxFault):
            return d
        cmd = GoDown(d) if action is GestureToken.GO_DOWN else GoUp(d)
    elif action is GestureToken.GO_TO:
        place = scan.place("destination")
        if isinstance(place, SyntaxFault):
            return place
        cmd = GoTo(place)
    else:  # CARRY
        if scan.done:
            return SyntaxFault(FaultCode.MISSING_PARAMETER, scan.pos, "expected equipment")
        if scan.peek() is not GestureToken.EQUIPMENT:
            return SyntaxFault(FaultCode.MISSING_PARAMETER, scan.pos, "expected equipment")
        scan.pos += 1
        place = scan.place("destination")
        if isinstance(place, SyntaxFault):
            return place
        cmd = Carry(GestureToken.EQUIPMENT, place)

    if not scan.done:
        return SyntaxFault(
            FaultCode.TRAILING_TOKENS, scan.pos, f"{len(scan.phrase) - scan.pos} extra tokens"
        )
    return cmd


def serialize(cmd: ParsedCommand):
    """Token list for a command; check(serialize(cmd)) == cmd."""
    if isinstance(cmd, Mosaic):
        return (
            [GestureToken.MOSAIC]
            + tk.digits_from_number(cmd.x_m)
            + [GestureToken.SEP]
            + tk.digits_from_number(cmd.y_m)
        )
    if isinstance(cmd, Photo):
        out = [GestureToken.PHOTO]
        if cmd.altitude_m is not None:
            out += tk.digits_from_number(cmd.altitude_m)
        return out
    if isinstance(cmd, GoDown):
        return [GestureToken.GO_DOWN] + tk.digits_from_number(cmd.d_m)
    if isinstance(cmd, GoUp):
        return [GestureToken.GO_UP] + tk.digits_from_number(cmd.d_m)
    if isinstance(cmd, GoTo):
        return [GestureToken.GO_TO, cmd.place]
    if isinstance(cmd, Carry):
        return [GestureToken.CARRY, GestureToken.EQUIPMENT, cmd.place]
    raise TypeError(f"not a command: {cmd!r}")
