"""w2w: natural-language mission programming toolkit for waypoint surveys.

Translates English mission descriptions into a compact bracketed command
token language, compiles tokens into geodesic waypoint missions (lawnmower,
polygonal, ripple, and spiral patterns), scores translations with BLEU /
METEOR and a token-error taxonomy, and serves an HTTP API + map UI backend
for operator confirmation before deployment.
"""

from w2w.model import (
    Adjust,
    Circle,
    Command,
    Diagnostic,
    End,
    GeoPoint,
    Mission,
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
from w2w.tokens import (
    TOKEN_FORMAT_VERSION,
    PositionedSyntaxError,
    SemanticError,
    parse_tokens,
    render,
    tokenize_for_metrics,
)
from w2w.nl import ClauseParseError, GrammarTranslator, StubTranslator, parse_nl
from w2w.compiler import (
    CompileError,
    MissionStats,
    Waypoint,
    WaypointKind,
    compile_mission,
    export_waypoints,
)
from w2w.geo import EARTH_RADIUS_M, geodesic_destination, haversine_distance

__version__ = "0.1.0"

__all__ = [
    "Adjust",
    "Circle",
    "ClauseParseError",
    "Command",
    "CompileError",
    "Diagnostic",
    "EARTH_RADIUS_M",
    "End",
    "GeoPoint",
    "GrammarTranslator",
    "Mission",
    "MissionStats",
    "Move",
    "PositionedSyntaxError",
    "Rotation",
    "SemanticError",
    "Spiral",
    "Start",
    "StubTranslator",
    "TOKEN_FORMAT_VERSION",
    "Track",
    "TrackDir",
    "VerticalMode",
    "VerticalSetting",
    "Waypoint",
    "WaypointKind",
    "compile_mission",
    "export_waypoints",
    "geodesic_destination",
    "haversine_distance",
    "parse_nl",
    "parse_tokens",
    "render",
    "tokenize_for_metrics",
    "validate_mission",
]
