"""Validated command AST: one node per executable diver command.

Construction enforces the parameter contracts (positive meter distances,
known places), so a ParsedCommand in hand is always dispatchable.
"""

from dataclasses import dataclass

from .tokens import GestureToken, MAX_METERS, NumberOutOfRangeError


def _check_meters(value, what):
    if not isinstance(value, int) or not 1 <= value <= MAX_METERS:
        raise NumberOutOfRangeError(f"{what}={value!r} not in 1..={MAX_METERS}")


def _check_place(place):
    if place not in (GestureToken.BOAT, GestureToken.HERE):
        raise ValueError(f"not a place token: {place}")


@dataclass(frozen=True)
class Mosaic:
    """Survey an x_m by y_m rectangle (lawnmower pattern)."""

    x_m: int
    y_m: int

    def __post_init__(self):
        _check_meters(self.x_m, "x_m")
        _check_meters(self.y_m, "y_m")


@dataclass(frozen=True)
class Photo:
    """Take a photo, optionally at a given altitude above the seafloor."""

    altitude_m: int | None = None

    def __post_init__(self):
        if self.altitude_m is not None:
            _check_meters(self.altitude_m, "altitude_m")


@dataclass(frozen=True)
class GoDown:
    d_m: int

    def __post_init__(self):
        _check_meters(self.d_m, "d_m")


@dataclass(frozen=True)
class GoUp:
    d_m: int

    def __post_init__(self):
        _check_meters(self.d_m, "d_m")


@dataclass(frozen=True)
class GoTo:
    place: GestureToken

    def __post_init__(self):
        _check_place(self.place)


@dataclass(frozen=True)
class Carry:
    """Fetch the equipment and bring it to a place."""

    object: GestureToken
    place: GestureToken

    def __post_init__(self):
        if self.object is not GestureToken.EQUIPMENT:
            raise ValueError(f"not a carryable object: {self.object}")
        _check_place(self.place)


ParsedCommand = Mosaic | Photo | GoDown | GoUp | GoTo | Carry

COMMAND_TYPES = (Mosaic, Photo, GoDown, GoUp, GoTo, Carry)


def command_text(cmd: ParsedCommand) -> str:
    """Stable human-readable form used on the tablet and in reports."""
    if isinstance(cmd, Mosaic):
        return f"mosaic {cmd.x_m}x{cmd.y_m} m"
    if isinstance(cmd, Photo):
        if cmd.altitude_m is None:
            return "photo here"
        return f"photo at {cmd.altitude_m} m altitude"
    if isinstance(cmd, GoDown):
        return f"go down {cmd.d_m} m"
    if isinstance(cmd, GoUp):
        return f"go up {cmd.d_m} m"
    if isinstance(cmd, GoTo):
        return f"go to {cmd.place.mnemonic}"
    if isinstance(cmd, Carry):
        return f"carry equipment to {cmd.place.mnemonic}"
    raise TypeError(f"not a command: {cmd!r}")
