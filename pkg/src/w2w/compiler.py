"""Compile missions into geodesic waypoint lists plus statistics.

Pattern expansion happens here: Track unrolls into boustrophedon passes,
Circle and Spiral are discretized into arc points every 15 degrees of sweep
(configurable). Output waypoints always carry a resolved vertical setting
(the most recent depth/altitude commanded) and a speed, so exports are
directly executable.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace

from w2w.geo import geodesic_destination, haversine_distance, normalize_bearing
from w2w.model import (
    Adjust,
    Circle,
    End,
    GeoPoint,
    Mission,
    MissionState,
    Move,
    Rotation,
    Spiral,
    Start,
    Track,
    TrackDir,
    VerticalMode,
    VerticalSetting,
    validate_mission,
)

EXPORT_FORMAT_VERSION = "w2w-mission/1"

DEFAULT_ARC_STEP_DEG = 15.0

# End points closer than this to the vehicle need no transit leg.
END_SNAP_M = 1.0


class WaypointKind(enum.Enum):
    TRANSIT = "Transit"
    TRACK_CORNER = "TrackCorner"
    CIRCLE_ARC = "CircleArc"
    SPIRAL_ARC = "SpiralArc"
    ADJUST_MARK = "AdjustMark"
    START_MARK = "StartMark"
    END_MARK = "EndMark"


@dataclass(frozen=True)
class Waypoint:
    point: GeoPoint
    vertical: VerticalSetting  # always resolved: depth or altitude with value
    speed: float
    kind: WaypointKind
    source_index: int

    def to_dict(self) -> dict:
        mode = "depth" if self.vertical.mode is VerticalMode.DEPTH else "altitude"
        return {
            "lat": self.point.lat,
            "lon": self.point.lon,
            "mode": mode,
            "value_m": self.vertical.value,
            "speed_mps": self.speed,
            "kind": self.kind.value,
            "src": self.source_index,
        }


@dataclass(frozen=True)
class MissionStats:
    path_length_m: float
    duration_s: float
    waypoint_count: int
    min_lat: float
    min_lon: float
    max_lat: float
    max_lon: float

    def to_dict(self) -> dict:
        return {
            "pathLength": self.path_length_m,
            "estimatedDuration": self.duration_s,
            "waypointCount": self.waypoint_count,
            "boundingBox": {
                "minLat": self.min_lat,
                "minLon": self.min_lon,
                "maxLat": self.max_lat,
                "maxLon": self.max_lon,
            },
        }


class CompileError(Exception):
    """Raised when a structurally valid mission cannot be expanded."""

    def __init__(self, code: str, message: str, command_index: int | None = None):
        super().__init__(message)
        self.code = code
        self.command_index = command_index


def _sweep_angles(total_deg: float, step_deg: float) -> list[float]:
    """Angles 0, step, 2*step, ... covering [0, total], endpoint included."""
    count = int(total_deg / step_deg)
    angles = [i * step_deg for i in range(count + 1)]
    if angles[-1] < total_deg - 1e-9:
        angles.append(total_deg)
    return angles


def compile_mission(
    mission: Mission, arc_step_deg: float = DEFAULT_ARC_STEP_DEG
) -> tuple[list[Waypoint], MissionStats]:
    """Expand a validated mission into waypoints and summary statistics.

    Folds the vehicle state over commands: Move sets heading/speed and the
    last leg length, Track sweeps floor(extent/spacing) lateral passes of
    that leg, Circle orbits the current position (exiting back at it),
    Spiral grows outward from it, Adjust changes the vertical setting in
    place. Raises CompileError for a Track with no usable leg
    (track_without_leg) or with extent < spacing (track_degenerate).
    """
    if arc_step_deg <= 0:
        raise ValueError(f"arc_step_deg must be > 0, got {arc_step_deg}")
    errors = [d for d in validate_mission(mission) if d.severity == "error"]
    if errors:
        raise ValueError("cannot compile invalid mission: " + "; ".join(d.message for d in errors))

    state = MissionState()
    waypoints: list[Waypoint] = []

    def emit(point: GeoPoint, kind: WaypointKind, index: int) -> None:
        waypoints.append(Waypoint(point, state.vertical, state.speed, kind, index))

    def absorb_vertical(v: VerticalSetting) -> None:
        nonlocal state
        if not v.is_no_change:
            state = replace(state, vertical=v)

    for i, cmd in enumerate(mission.commands):
        if isinstance(cmd, Start):
            state = replace(state, position=cmd.point)
            emit(cmd.point, WaypointKind.START_MARK, i)

        elif isinstance(cmd, Move):
            absorb_vertical(cmd.vertical)
            dest = geodesic_destination(state.position, cmd.bearing, cmd.distance)
            state = replace(
                state,
                position=dest,
                heading=normalize_bearing(cmd.bearing),
                speed=cmd.speed,
                last_leg_length=cmd.distance,
            )
            emit(dest, WaypointKind.TRANSIT, i)

        elif isinstance(cmd, Track):
            absorb_vertical(cmd.vertical)
            if state.last_leg_length is None:
                raise CompileError(
                    "track_without_leg",
                    "Track has no preceding Move to supply a leg length",
                    i,
                )
            steps = math.floor(cmd.extent / cmd.spacing)
            if steps < 1:
                raise CompileError(
                    "track_degenerate",
                    f"Track extent {cmd.extent} m below spacing {cmd.spacing} m: no pass fits",
                    i,
                )
            leg = state.last_leg_length
            base = state.heading
            offset = -90.0 if cmd.direction is TrackDir.LEFT else 90.0
            lateral = normalize_bearing(base + offset)
            pos = state.position
            leg_heading = base
            for k in range(1, steps + 1):
                pos = geodesic_destination(pos, lateral, cmd.spacing)
                emit(pos, WaypointKind.TRACK_CORNER, i)
                leg_heading = normalize_bearing(base + 180.0) if k % 2 == 1 else base
                pos = geodesic_destination(pos, leg_heading, leg)
                emit(pos, WaypointKind.TRACK_CORNER, i)
            state = replace(state, position=pos, heading=leg_heading, last_leg_length=None)

        elif isinstance(cmd, Adjust):
            absorb_vertical(cmd.vertical)
            emit(state.position, WaypointKind.ADJUST_MARK, i)

        elif isinstance(cmd, Circle):
            absorb_vertical(cmd.vertical)
            center = state.position
            sign = 1.0 if cmd.rotation is Rotation.CW else -1.0
            for sweep in _sweep_angles(360.0 * cmd.turns, arc_step_deg):
                bearing = normalize_bearing(state.heading + sign * sweep)
                emit(geodesic_destination(center, bearing, cmd.radius), WaypointKind.CIRCLE_ARC, i)
            state = replace(state, position=center, last_leg_length=None)

        elif isinstance(cmd, Spiral):
            absorb_vertical(cmd.vertical)
            center = state.position
            sign = 1.0 if cmd.rotation is Rotation.CW else -1.0
            total = 360.0 * cmd.turns
            last = center
            for sweep in _sweep_angles(total, arc_step_deg):
                r = cmd.radius * sweep / total
                bearing = normalize_bearing(state.heading + sign * sweep)
                last = geodesic_destination(center, bearing, r)
                emit(last, WaypointKind.SPIRAL_ARC, i)
            # Exit heading is the spiral tangent: radial bearing at the end
            # rotated by atan(total swept angle in radians) toward travel.
            tangent = math.degrees(math.atan(math.radians(total)))
            heading = normalize_bearing(state.heading + sign * (total + tangent))
            state = replace(state, position=last, heading=heading, last_leg_length=None)

        elif isinstance(cmd, End):
            if state.position is not None and haversine_distance(state.position, cmd.point) > END_SNAP_M:
                emit(cmd.point, WaypointKind.TRANSIT, i)
            state = replace(state, position=cmd.point)
            emit(cmd.point, WaypointKind.END_MARK, i)

        else:
            raise TypeError(f"unknown command {cmd!r}")

    return waypoints, _stats(waypoints)


def _stats(waypoints: list[Waypoint]) -> MissionStats:
    path = 0.0
    duration = 0.0
    for prev, cur in zip(waypoints, waypoints[1:]):
        seg = haversine_distance(prev.point, cur.point)
        path += seg
        duration += seg / cur.speed
    lats = [w.point.lat for w in waypoints]
    lons = [w.point.lon for w in waypoints]
    return MissionStats(
        path_length_m=path,
        duration_s=duration,
        waypoint_count=len(waypoints),
        min_lat=min(lats) if lats else 0.0,
        min_lon=min(lons) if lons else 0.0,
        max_lat=max(lats) if lats else 0.0,
        max_lon=max(lons) if lons else 0.0,
    )


def export_waypoints(
    waypoints: list[Waypoint],
    stats: MissionStats,
    fmt: str,
    tokens: str = "",
) -> bytes:
    """Serialize compiled output to the open export formats.

    JSON ("w2w-mission/1") embeds the source tokens and stats; CSV is the
    bare waypoint table. Both are byte-stable given identical input.
    """
    if fmt == "json":
        doc = {
            "version": EXPORT_FORMAT_VERSION,
            "tokens": tokens,
            "waypoints": [w.to_dict() for w in waypoints],
            "stats": stats.to_dict(),
        }
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")
    if fmt == "csv":
        lines = ["lat,lon,mode,value_m,speed_mps,kind"]
        for w in waypoints:
            d = w.to_dict()
            lines.append(
                f"{d['lat']},{d['lon']},{d['mode']},{d['value_m']},{d['speed_mps']},{d['kind']}"
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r} (expected 'json' or 'csv')")
