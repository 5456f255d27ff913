"""Tick-based AUV simulator.

Maps validated commands onto motion primitives (waypoints, depth changes,
photos, surfacing) and advances a first-order point-mass vehicle at a
constant cruise speed. Depth is positive down and clamped at the surface.
"""

import math
from dataclasses import dataclass, replace

from .commands import Carry, GoDown, GoTo, GoUp, Mosaic, ParsedCommand, Photo
from .tokens import GestureToken


class InfeasibleCommandError(ValueError):
    """The command would drive the vehicle above the surface."""


@dataclass(frozen=True)
class AuvState:
    x_m: float = 0.0
    y_m: float = 0.0
    z_m: float = 0.0  # depth, positive down
    heading_rad: float = 0.0
    speed_mps: float = 0.5


@dataclass(frozen=True)
class SimConfig:
    speed_mps: float = 0.5
    dt_s: float = 0.1
    arrival_tol_m: float = 0.05
    lane_spacing_m: float = 2.0
    seafloor_depth_m: float = 10.0
    boat_pose: tuple = (0.0, 0.0, 0.0)
    equipment_pose: tuple = (5.0, 5.0, 2.0)


# ---------------------------------------------------------------------------
# Primitives


@dataclass(frozen=True)
class GotoWaypoint:
    x_m: float
    y_m: float
    z_m: float

    def __post_init__(self):
        if self.z_m < 0:
            raise InfeasibleCommandError(f"waypoint above surface: z={self.z_m}")


@dataclass(frozen=True)
class ChangeDepth:
    delta_m: float  # signed, positive down


@dataclass(frozen=True)
class TakePhoto:
    pass


@dataclass(frozen=True)
class Surface:
    pass


Primitive = GotoWaypoint | ChangeDepth | TakePhoto | Surface


# ---------------------------------------------------------------------------
# Events


@dataclass(frozen=True)
class WaypointReached:
    index: int


@dataclass(frozen=True)
class PhotoTaken:
    pose: tuple  # (x_m, y_m, z_m, heading_rad)


@dataclass(frozen=True)
class CommandDone:
    command_index: int


@dataclass(frozen=True)
class MissionComplete:
    pass


@dataclass(frozen=True)
class Surfaced:
    pass


SimEvent = WaypointReached | PhotoTaken | CommandDone | MissionComplete | Surfaced


def lawnmower_lanes(x_m: float, y_m: float, spacing_m: float):
    """Lane x-offsets for an x_m-wide survey: {0, s, 2s, ..., floor(x/s)*s}."""
    count = math.floor(x_m / spacing_m) + 1
    return [i * spacing_m for i in range(count)]


def command_to_primitives(cmd: ParsedCommand, state: AuvState, cfg: SimConfig):
    """Expand one validated command into motion primitives at the current pose."""
    if isinstance(cmd, GoDown):
        return [ChangeDepth(float(cmd.d_m))]
    if isinstance(cmd, GoUp):
        if state.z_m - cmd.d_m < 0:
            raise InfeasibleCommandError(
                f"go up {cmd.d_m} m from depth {state.z_m} m crosses the surface"
            )
        return [ChangeDepth(-float(cmd.d_m))]
    if isinstance(cmd, Photo):
        prims = []
        if cmd.altitude_m is not None:
            target_z = cfg.seafloor_depth_m - cmd.altitude_m
            if target_z < 0:
                raise InfeasibleCommandError(
                    f"altitude {cmd.altitude_m} m exceeds seafloor depth "
                    f"{cfg.seafloor_depth_m} m"
                )
            prims.append(ChangeDepth(target_z - state.z_m))
        prims.append(TakePhoto())
        return prims
    if isinstance(cmd, GoTo):
        if cmd.place is GestureToken.HERE:
            return []
        return [GotoWaypoint(*cfg.boat_pose)]
    if isinstance(cmd, Carry):
        here = (state.x_m, state.y_m, state.z_m)
        dest = cfg.boat_pose if cmd.place is GestureToken.BOAT else here
        return [GotoWaypoint(*cfg.equipment_pose), GotoWaypoint(*dest)]
    if isinstance(cmd, Mosaic):
        prims = []
        for i, dx in enumerate(lawnmower_lanes(cmd.x_m, cmd.y_m, cfg.lane_spacing_m)):
            x = state.x_m + dx
            near = state.y_m
            far = state.y_m + cmd.y_m
            ys = (near, far) if i % 2 == 0 else (far, near)
            for y in ys:
                prims.append(GotoWaypoint(x, y, state.z_m))
        return prims
    raise TypeError(f"not a command: {cmd!r}")


class MissionSim:
    """Owns the vehicle state and the active plan; tick() is the only mover."""

    def __init__(self, cfg: SimConfig = None, state: AuvState = None):
        self.cfg = cfg or SimConfig()
        self.state = state or AuvState(speed_mps=self.cfg.speed_mps)
        self._commands = None  # list of ParsedCommand while a mission runs
        self._command_index = 0
        self._primitives = []
        self._bound_target = None  # (x, y, z) captured when the head primitive starts
        self._waypoint_count = 0
        self._surfacing = False
        self.skipped = []  # (command_index, reason) for infeasible commands
        self.waypoint_log = []  # (x, y, z) of every reached waypoint

    @property
    def mission_active(self) -> bool:
        return self._commands is not None or bool(self._primitives)

    def start_mission(self, commands):
        """Load a validated command list; execution begins on the next tick."""
        self._commands = list(commands)
        self._command_index = 0
        self._primitives = []
        self._bound_target = None
        self._waypoint_count = 0
        self._surfacing = False
        self.skipped = []

    def abort(self):
        """Drop the plan; the vehicle holds position. Emits nothing."""
        self._commands = None
        self._primitives = []
        self._bound_target = None
        self._surfacing = False
        return []

    def emergency_surface(self):
        """Replace the plan with a single ascent to the surface. Idempotent."""
        if self._surfacing:
            return []
        self._commands = None
        self._primitives = [Surface()]
        self._bound_target = None
        self._surfacing = True
        return []

    def tick(self, dt_s: float = None):
        """Advance one step; returns the events that fired this tick."""
        dt = self.cfg.dt_s if dt_s is None else dt_s
        if dt <= 0:
            raise ValueError("dt_s must be positive")
        events = []
        if self._commands is not None and not self._primitives:
            self._activate_next_command(events)
        step = self.state.speed_mps * dt
        moved = False
        # At most one motion step per tick; instantaneous and already-satisfied
        # primitives resolve within the same tick.
        while self._primitives:
            prim = self._primitives[0]
            if isinstance(prim, TakePhoto):
                self._finish_primitive(events)
                continue
            target = self._head_target(prim)
            if self._distance_to(target) <= self.cfg.arrival_tol_m:
                self._finish_primitive(events)
                continue
            if moved:
                break
            self._move_toward(target, step)
            moved = True
            if self._distance_to(target) <= self.cfg.arrival_tol_m:
                self._finish_primitive(events)
                continue
            break
        self._clamp_surface()
        return events

    # -- internals ---------------------------------------------------------

    def _activate_next_command(self, events):
        """Expand commands until one yields primitives or the mission ends."""
        while not self._primitives and self._commands is not None:
            if self._command_index >= len(self._commands):
                self._commands = None
                events.append(MissionComplete())
                return
            cmd = self._commands[self._command_index]
            try:
                self._primitives = command_to_primitives(cmd, self.state, self.cfg)
            except InfeasibleCommandError as exc:
                self.skipped.append((self._command_index, str(exc)))
                self._primitives = []
            if not self._primitives:
                events.append(CommandDone(self._command_index))
                self._command_index += 1

    def _head_target(self, prim):
        """Target of the head primitive, captured once when it becomes active."""
        if self._bound_target is None:
            if isinstance(prim, GotoWaypoint):
                self._bound_target = (prim.x_m, prim.y_m, prim.z_m)
            elif isinstance(prim, ChangeDepth):
                self._bound_target = (
                    self.state.x_m,
                    self.state.y_m,
                    max(self.state.z_m + prim.delta_m, 0.0),
                )
            elif isinstance(prim, Surface):
                self._bound_target = (self.state.x_m, self.state.y_m, 0.0)
            else:
                raise TypeError(f"no target for {prim!r}")
        return self._bound_target

    def _finish_primitive(self, events):
        prim = self._primitives.pop(0)
        self._bound_target = None
        if isinstance(prim, GotoWaypoint):
            self._waypoint_count += 1
            self.waypoint_log.append((prim.x_m, prim.y_m, prim.z_m))
            events.append(WaypointReached(self._waypoint_count - 1))
        elif isinstance(prim, TakePhoto):
            events.append(
                PhotoTaken(
                    (self.state.x_m, self.state.y_m, self.state.z_m,
                     self.state.heading_rad)
                )
            )
        elif isinstance(prim, Surface):
            self._surfacing = False
            events.append(Surfaced())
        if self._commands is not None and not self._primitives:
            events.append(CommandDone(self._command_index))
            self._command_index += 1
            self._activate_next_command(events)

    def _distance_to(self, target):
        dx = target[0] - self.state.x_m
        dy = target[1] - self.state.y_m
        dz = target[2] - self.state.z_m
        return math.sqrt(dx * dx + dy * dy + dz * dz)

    def _move_toward(self, target, step):
        dx = target[0] - self.state.x_m
        dy = target[1] - self.state.y_m
        dz = target[2] - self.state.z_m
        dist = math.sqrt(dx * dx + dy * dy + dz * dz)
        if dist <= step:
            new = (target[0], target[1], target[2])
        else:
            f = step / dist
            new = (
                self.state.x_m + f * dx,
                self.state.y_m + f * dy,
                self.state.z_m + f * dz,
            )
        heading = self.state.heading_rad
        if abs(dx) > 1e-12 or abs(dy) > 1e-12:
            heading = math.atan2(dy, dx) % (2 * math.pi)
        self.state = replace(
            self.state, x_m=new[0], y_m=new[1], z_m=new[2], heading_rad=heading
        )

    def _clamp_surface(self):
        if self.state.z_m < 0:
            self.state = replace(self.state, z_m=0.0)
