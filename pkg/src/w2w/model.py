"""Core mission domain types: commands, missions, and validation.

Every command is an immutable dataclass whose constructor enforces the
parameter ranges, so an in-range `Command` is the only kind that can exist.
The seven commands and their one/two-letter symbols:

    Start (S), End (E), Move (Mv), Track (Tr), Adjust (Az),
    Circle (Cr), Spiral (Sp)

Longitude is stored east-positive signed decimal degrees; hemisphere
letters (N/S/E/W) are a presentation concern of the language front end and UI.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union


def _require_finite(name: str, value: float) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{name} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return float(value)


class VerticalMode(enum.Enum):
    DEPTH = "d"
    ALTITUDE = "a"
    NO_CHANGE = "n"


class Rotation(enum.Enum):
    CW = "cw"
    CCW = "ccw"


class TrackDir(enum.Enum):
    LEFT = "l"
    RIGHT = "r"


@dataclass(frozen=True)
class VerticalSetting:
    """Target depth or altitude in meters, or "no change" (retain current)."""

    mode: VerticalMode
    value: float | None = None

    def __post_init__(self) -> None:
        if self.mode is VerticalMode.NO_CHANGE:
            if self.value is not None:
                raise ValueError("no-change vertical setting carries no value")
        else:
            if self.value is None:
                raise ValueError(f"{self.mode.name} vertical setting requires a value")
            v = _require_finite("vertical value", self.value)
            if v < 0:
                raise ValueError(f"vertical value must be >= 0, got {v}")
            object.__setattr__(self, "value", v)

    @classmethod
    def depth(cls, meters: float) -> "VerticalSetting":
        return cls(VerticalMode.DEPTH, meters)

    @classmethod
    def altitude(cls, meters: float) -> "VerticalSetting":
        return cls(VerticalMode.ALTITUDE, meters)

    @classmethod
    def no_change(cls) -> "VerticalSetting":
        return cls(VerticalMode.NO_CHANGE)

    @property
    def is_no_change(self) -> bool:
        return self.mode is VerticalMode.NO_CHANGE


NO_CHANGE = VerticalSetting.no_change()


@dataclass(frozen=True)
class GeoPoint:
    """Position in signed decimal degrees, north/east positive."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        lat = _require_finite("lat", self.lat)
        lon = _require_finite("lon", self.lon)
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"lat must be in [-90, 90], got {lat}")
        if not -180.0 <= lon <= 180.0:
            raise ValueError(f"lon must be in [-180, 180], got {lon}")
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", lon)


@dataclass(frozen=True)
class Start:
    SYMBOL = "S"
    point: GeoPoint


@dataclass(frozen=True)
class End:
    SYMBOL = "E"
    point: GeoPoint


@dataclass(frozen=True)
class Move:
    """Travel `distance` meters at `bearing` degrees (clockwise from true North)."""

    SYMBOL = "Mv"
    bearing: float
    distance: float
    speed: float = 1.0
    vertical: VerticalSetting = NO_CHANGE

    def __post_init__(self) -> None:
        b = _require_finite("bearing", self.bearing)
        if not 0.0 <= b < 360.0:
            raise ValueError(f"bearing must be in [0, 360), got {b}")
        d = _require_finite("distance", self.distance)
        if d <= 0:
            raise ValueError(f"distance must be > 0, got {d}")
        s = _require_finite("speed", self.speed)
        if s <= 0:
            raise ValueError(f"speed must be > 0, got {s}")
        object.__setattr__(self, "bearing", b)
        object.__setattr__(self, "distance", d)
        object.__setattr__(self, "speed", s)


@dataclass(frozen=True)
class Track:
    """Boustrophedon legs orthogonal to the current heading.

    `spacing` is the gap between passes (symbol tab), `extent` the total
    lateral distance to cover (symbol end). The leg length comes from the
    preceding Move at compile time.
    """

    SYMBOL = "Tr"
    direction: TrackDir
    spacing: float
    extent: float
    vertical: VerticalSetting = NO_CHANGE

    def __post_init__(self) -> None:
        sp = _require_finite("spacing", self.spacing)
        if sp <= 0:
            raise ValueError(f"spacing must be > 0, got {sp}")
        ex = _require_finite("extent", self.extent)
        if ex <= 0:
            raise ValueError(f"extent must be > 0, got {ex}")
        object.__setattr__(self, "spacing", sp)
        object.__setattr__(self, "extent", ex)


@dataclass(frozen=True)
class Adjust:
    """Change target depth or altitude at the current position."""

    SYMBOL = "Az"
    vertical: VerticalSetting

    def __post_init__(self) -> None:
        if self.vertical.is_no_change:
            raise ValueError("Adjust requires a depth or altitude setting")


@dataclass(frozen=True)
class Circle:
    SYMBOL = "Cr"
    turns: float
    radius: float
    rotation: Rotation
    vertical: VerticalSetting = NO_CHANGE

    def __post_init__(self) -> None:
        t = _require_finite("turns", self.turns)
        if t <= 0:
            raise ValueError(f"turns must be > 0, got {t}")
        r = _require_finite("radius", self.radius)
        if r <= 0:
            raise ValueError(f"radius must be > 0, got {r}")
        object.__setattr__(self, "turns", t)
        object.__setattr__(self, "radius", r)


@dataclass(frozen=True)
class Spiral:
    """Archimedean spiral growing from the current point out to `radius`."""

    SYMBOL = "Sp"
    turns: float
    radius: float
    rotation: Rotation
    vertical: VerticalSetting = NO_CHANGE

    def __post_init__(self) -> None:
        t = _require_finite("turns", self.turns)
        if t <= 0:
            raise ValueError(f"turns must be > 0, got {t}")
        r = _require_finite("radius", self.radius)
        if r <= 0:
            raise ValueError(f"radius must be > 0, got {r}")
        object.__setattr__(self, "turns", t)
        object.__setattr__(self, "radius", r)


Command = Union[Start, End, Move, Track, Adjust, Circle, Spiral]

COMMAND_TYPES: tuple[type, ...] = (Start, End, Move, Track, Adjust, Circle, Spiral)
COMMAND_TYPE_NAMES: tuple[str, ...] = tuple(t.__name__ for t in COMMAND_TYPES)


@dataclass(frozen=True)
class Mission:
    """Ordered command sequence. `name`/`id` are metadata, excluded from equality."""

    commands: tuple[Command, ...]
    name: str = field(default="", compare=False)
    id: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "commands", tuple(self.commands))


@dataclass(frozen=True)
class MissionState:
    """Vehicle state folded over commands during compilation.

    Defaults give a well-defined state before the first Move: speed 1 m/s,
    depth 0 m, heading due north.
    """

    position: GeoPoint | None = None
    heading: float = 0.0
    vertical: VerticalSetting = VerticalSetting.depth(0.0)
    speed: float = 1.0
    last_leg_length: float | None = None

    def __post_init__(self) -> None:
        if self.speed <= 0:
            raise ValueError(f"speed must be > 0, got {self.speed}")
        if self.vertical.is_no_change:
            raise ValueError("mission state vertical must be resolved")
        if not 0.0 <= self.heading < 360.0:
            raise ValueError(f"heading must be in [0, 360), got {self.heading}")


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str
    command_index: int | None = None

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "commandIndex": self.command_index,
        }


def _error(code: str, message: str, index: int | None = None) -> Diagnostic:
    return Diagnostic("error", code, message, index)


def _warning(code: str, message: str, index: int | None = None) -> Diagnostic:
    return Diagnostic("warning", code, message, index)


def validate_mission(mission: Mission) -> list[Diagnostic]:
    """Check structural invariants; returns errors and warnings, never raises.

    Errors: missing/duplicate Start or End, Track with no usable leg.
    Warnings: zero-leg missions, Track extent below spacing (no full pass).
    """
    diags: list[Diagnostic] = []
    cmds = mission.commands

    if not cmds or not isinstance(cmds[0], Start):
        diags.append(_error("missing_start", "mission must begin with a Start command"))
    if not cmds or not isinstance(cmds[-1], End):
        diags.append(_error("missing_end", "mission must finish with an End command"))

    starts = [i for i, c in enumerate(cmds) if isinstance(c, Start)]
    ends = [i for i, c in enumerate(cmds) if isinstance(c, End)]
    if len(starts) > 1:
        diags.append(_error("duplicate_start", "mission must contain exactly one Start", starts[1]))
    if len(ends) > 1:
        diags.append(_error("duplicate_end", "mission must contain exactly one End", ends[1]))

    # Track needs a leg length from an earlier Move, with no pattern command
    # (Track/Circle/Spiral) in between to invalidate it.
    have_leg = False
    for i, cmd in enumerate(cmds):
        if isinstance(cmd, Move):
            have_leg = True
        elif isinstance(cmd, Track):
            if not have_leg:
                diags.append(
                    _error(
                        "track_without_move",
                        "Track without preceding Move: no leg length to sweep",
                        i,
                    )
                )
            have_leg = False
            if cmd.extent < cmd.spacing:
                diags.append(
                    _warning(
                        "track_degenerate",
                        f"Track extent {cmd.extent} m is below spacing {cmd.spacing} m;"
                        " no full lateral pass fits",
                        i,
                    )
                )
        elif isinstance(cmd, (Circle, Spiral)):
            have_leg = False

    if len(cmds) == 2 and isinstance(cmds[0], Start) and isinstance(cmds[1], End):
        diags.append(_warning("zero_leg", "mission has no movement between Start and End"))

    return diags


def command_type_name(cmd: Command) -> str:
    return type(cmd).__name__


def vertical_to_dict(v: VerticalSetting) -> dict:
    if v.is_no_change:
        return {"mode": "no_change"}
    mode = "depth" if v.mode is VerticalMode.DEPTH else "altitude"
    return {"mode": mode, "value_m": v.value}


def command_to_dict(cmd: Command) -> dict:
    """JSON-friendly view of a command, used by the HTTP API and CLI."""
    if isinstance(cmd, (Start, End)):
        return {"type": command_type_name(cmd), "lat": cmd.point.lat, "lon": cmd.point.lon}
    if isinstance(cmd, Move):
        return {
            "type": "Move",
            "bearing_deg": cmd.bearing,
            "distance_m": cmd.distance,
            "speed_mps": cmd.speed,
            "vertical": vertical_to_dict(cmd.vertical),
        }
    if isinstance(cmd, Track):
        return {
            "type": "Track",
            "direction": "left" if cmd.direction is TrackDir.LEFT else "right",
            "spacing_m": cmd.spacing,
            "extent_m": cmd.extent,
            "vertical": vertical_to_dict(cmd.vertical),
        }
    if isinstance(cmd, Adjust):
        return {"type": "Adjust", "vertical": vertical_to_dict(cmd.vertical)}
    if isinstance(cmd, (Circle, Spiral)):
        return {
            "type": command_type_name(cmd),
            "turns": cmd.turns,
            "radius_m": cmd.radius,
            "rotation": cmd.rotation.value,
            "vertical": vertical_to_dict(cmd.vertical),
        }
    raise TypeError(f"unknown command {cmd!r}")
