"""Deterministic English mission grammar.

Translates free-form mission text like

    "Start at 38.7969 N, 75.1538 W. Circle for a turn at a radius of 10 m
     in a clockwise direction at an altitude of 1 m. Move south 30 m and
     then Track left for 100 m at a spacing of 14 m. End at ..."

into a Mission plus a per-clause trace (source spans, template id, slot
values) for UI highlighting. Parsing is two-phase: the text is first split
into clauses wherever a command verb follows a sentence boundary, comma, or
"and"/"then" joiner, then each clause is matched against its command
template. Errors localize to the failing clause and carry the nearest
template as a hint.

The same text-to-tokens contract is exposed as a small translator port so a
learned model could replace the grammar engine behind one interface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol

from w2w.model import (
    Adjust,
    Circle,
    Command,
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
)
from w2w.tokens import parse_tokens, render

CARDINAL_BEARINGS = {
    "north": 0.0,
    "northeast": 45.0,
    "east": 90.0,
    "southeast": 135.0,
    "south": 180.0,
    "southwest": 225.0,
    "west": 270.0,
    "northwest": 315.0,
}

UNIT_FACTORS = {
    "m": 1.0,
    "meter": 1.0,
    "meters": 1.0,
    "metre": 1.0,
    "metres": 1.0,
    "km": 1000.0,
    "ft": 0.3048,
    "feet": 0.3048,
}

TEMPLATES = {
    "start": "start at <lat>[°] N|S, <lon>[°] E|W",
    "end": "end at <lat>[°] N|S, <lon>[°] E|W",
    "move": (
        "move <cardinal | at a bearing of <deg> degrees> [for] <distance><unit> "
        "[at <speed> m/s | at a speed of <speed>] [at a depth|altitude of <value><unit>]"
    ),
    "track": (
        "track left|right [for] <extent><unit> with|at a spacing of <spacing><unit> "
        "[at a depth|altitude of <value><unit>]"
    ),
    "adjust": "adjust to a depth|altitude of <value><unit>",
    "circle": (
        "circle [for] <a turn | <n> turn(s)> at a radius of <radius><unit> "
        "in a clockwise|counterclockwise direction [at a depth|altitude of <value><unit>]"
    ),
    "spiral": (
        "spiral [for] <a turn | <n> turn(s)> at a radius of <radius><unit> "
        "in a clockwise|counterclockwise direction [at a depth|altitude of <value><unit>]"
    ),
}


class ClauseParseError(ValueError):
    """A clause did not match any command template.

    Carries the clause text, the absolute character offset of the failure,
    and the nearest template as a usage hint.
    """

    def __init__(self, clause: str, offset: int, message: str, hint: str):
        super().__init__(f"offset {offset}: {message} (expected: {hint})")
        self.clause = clause
        self.offset = offset
        self.reason = message
        self.hint = hint


@dataclass(frozen=True)
class ClauseTrace:
    span: tuple[int, int]  # character offsets into the source utterance
    template_id: str
    slots: dict

    def to_dict(self) -> dict:
        return {"span": list(self.span), "templateId": self.template_id, "slots": self.slots}


ParseTrace = list[ClauseTrace]


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _nearest_template(word: str) -> str:
    best = min(TEMPLATES, key=lambda verb: levenshtein(word.lower(), verb))
    return TEMPLATES[best]


# --- clause segmentation ---------------------------------------------------

_VERB_RE = re.compile(r"(start|end|move|track|adjust|circle|spiral)\b", re.I)
_JOINER_BEFORE_RE = re.compile(r"(?:\band\s+then|\bthen|\band)\s*$", re.I)
_TRAILER_RE = re.compile(r"(?:\s*(?:\band\s+then\b|\bthen\b|\band\b|[.,;!])\s*)+$", re.I)


def split_clauses(text: str) -> list[tuple[int, int]]:
    """Spans of command clauses: a verb starts a clause when it follows the
    start of text, sentence punctuation, a comma/semicolon, or an and/then
    joiner. Trailing separators are trimmed from each span."""
    starts = []
    for m in _VERB_RE.finditer(text):
        prefix = text[: m.start()].rstrip()
        if not prefix or prefix.endswith((".", ",", ";")) or _JOINER_BEFORE_RE.search(prefix):
            starts.append(m.start())
    spans = []
    for i, begin in enumerate(starts):
        end = starts[i + 1] if i + 1 < len(starts) else len(text)
        chunk = text[begin:end]
        trimmed = _TRAILER_RE.sub("", chunk).rstrip()
        if trimmed:
            spans.append((begin, begin + len(trimmed)))
    return spans


# --- slot matching ---------------------------------------------------------

_NUM = r"(-?\d+(?:\.\d+)?)"
_DEG_MARK = r"(?:\s*(?:°|\bdegrees?\b))?"
_UNIT = r"(m|meters?|metres?|km|ft|feet)\b(?!\s*/)"

_COORD_RE = re.compile(
    rf"at\s+{_NUM}{_DEG_MARK}\s*(n|s)\b\s*,\s*{_NUM}{_DEG_MARK}\s*(e|w)\b", re.I
)
_CARDINAL_RE = re.compile(
    r"(northeast|northwest|southeast|southwest|north|south|east|west)\b", re.I
)
_BEARING_RE = re.compile(rf"at\s+a\s+bearing\s+of\s+{_NUM}{_DEG_MARK}", re.I)
_FOR_RE = re.compile(r"for\b", re.I)
_DISTANCE_RE = re.compile(rf"{_NUM}\s*{_UNIT}", re.I)
_SPEED_WORDY_RE = re.compile(
    rf"at\s+a\s+speed\s+of\s+{_NUM}(?:\s*(?:m/s|mps|meters?\s+per\s+second|metres?\s+per\s+second))?",
    re.I,
)
_SPEED_BARE_RE = re.compile(rf"at\s+{_NUM}\s*(?:m/s|mps)\b", re.I)
_VERTICAL_RE = re.compile(rf"at\s+an?\s+(depth|altitude)\s+of\s+{_NUM}\s*{_UNIT}", re.I)
_TRACK_DIR_RE = re.compile(r"(left|right)\b", re.I)
_SPACING_RE = re.compile(rf"(?:(?:with|at)\s+)?a\s+spacing\s+of\s+{_NUM}\s*{_UNIT}", re.I)
_ADJUST_RE = re.compile(rf"to\s+an?\s+(depth|altitude)\s+of\s+{_NUM}\s*{_UNIT}", re.I)
_TURNS_A_RE = re.compile(r"(?:a|one)\s+turn\b", re.I)
_TURNS_N_RE = re.compile(rf"{_NUM}\s+turns?\b", re.I)
_RADIUS_RE = re.compile(rf"at\s+a\s+radius\s+of\s+{_NUM}\s*{_UNIT}", re.I)
_ROTATION_RE = re.compile(
    r"in\s+an?\s+(counter[\s-]?clockwise|anticlockwise|ccw|clockwise|cw)\s+direction\b", re.I
)


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def take(self, pattern: re.Pattern) -> re.Match | None:
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _meters(value: str, unit: str) -> float:
    return float(value) * UNIT_FACTORS[unit.lower()]


def _fail(cur: _Cursor, base: int, verb: str, message: str) -> ClauseParseError:
    return ClauseParseError(cur.text, base + cur.pos, message, TEMPLATES[verb])


def _take_vertical(cur: _Cursor) -> tuple[VerticalSetting, dict] | None:
    m = cur.take(_VERTICAL_RE)
    if not m:
        return None
    mode = VerticalMode.DEPTH if m.group(1).lower() == "depth" else VerticalMode.ALTITUDE
    value = _meters(m.group(2), m.group(3))
    return VerticalSetting(mode, value), {"verticalMode": mode.name.lower(), "verticalM": value}


def _parse_point(cur: _Cursor, base: int, verb: str) -> tuple[GeoPoint, dict]:
    m = cur.take(_COORD_RE)
    if not m:
        raise _fail(cur, base, verb, "expected coordinates like '38.7969 N, 75.1538 W'")
    lat = float(m.group(1)) * (1.0 if m.group(2).lower() == "n" else -1.0)
    lon = float(m.group(3)) * (1.0 if m.group(4).lower() == "e" else -1.0)
    try:
        point = GeoPoint(lat, lon)
    except ValueError as exc:
        raise ClauseParseError(cur.text, base, str(exc), TEMPLATES[verb]) from None
    return point, {"lat": lat, "lon": lon}


def _parse_move(cur: _Cursor, base: int) -> tuple[Command, dict]:
    slots: dict = {}
    m = cur.take(_CARDINAL_RE)
    if m:
        bearing = CARDINAL_BEARINGS[m.group(1).lower()]
        slots["direction"] = m.group(1).lower()
    else:
        m = cur.take(_BEARING_RE)
        if not m:
            raise _fail(cur, base, "move", "expected a cardinal direction or 'at a bearing of <deg>'")
        bearing = float(m.group(1)) % 360.0
    slots["bearingDeg"] = bearing
    cur.take(_FOR_RE)
    m = cur.take(_DISTANCE_RE)
    if not m:
        raise _fail(cur, base, "move", "expected a distance like '30 m'")
    distance = _meters(m.group(1), m.group(2))
    slots["distanceM"] = distance

    speed = 1.0
    vertical = VerticalSetting.no_change()
    while not cur.at_end():
        v = _take_vertical(cur)
        if v:
            vertical, vslots = v
            slots.update(vslots)
            continue
        m = cur.take(_SPEED_WORDY_RE) or cur.take(_SPEED_BARE_RE)
        if m:
            speed = float(m.group(1))
            slots["speedMps"] = speed
            continue
        raise _fail(cur, base, "move", "unexpected text after the move clause")
    try:
        return Move(bearing, distance, speed, vertical), slots
    except ValueError as exc:
        raise ClauseParseError(cur.text, base, str(exc), TEMPLATES["move"]) from None


def _parse_track(cur: _Cursor, base: int) -> tuple[Command, dict]:
    m = cur.take(_TRACK_DIR_RE)
    if not m:
        raise _fail(cur, base, "track", "expected 'left' or 'right'")
    direction = TrackDir.LEFT if m.group(1).lower() == "left" else TrackDir.RIGHT
    cur.take(_FOR_RE)
    m = cur.take(_DISTANCE_RE)
    if not m:
        raise _fail(cur, base, "track", "expected an extent like '100 m'")
    extent = _meters(m.group(1), m.group(2))
    m = cur.take(_SPACING_RE)
    if not m:
        raise _fail(cur, base, "track", "expected 'with a spacing of <value><unit>'")
    spacing = _meters(m.group(1), m.group(2))
    vertical = VerticalSetting.no_change()
    v = _take_vertical(cur)
    slots = {"direction": direction.name.lower(), "extentM": extent, "spacingM": spacing}
    if v:
        vertical, vslots = v
        slots.update(vslots)
    if not cur.at_end():
        raise _fail(cur, base, "track", "unexpected text after the track clause")
    try:
        return Track(direction, spacing, extent, vertical), slots
    except ValueError as exc:
        raise ClauseParseError(cur.text, base, str(exc), TEMPLATES["track"]) from None


def _parse_adjust(cur: _Cursor, base: int) -> tuple[Command, dict]:
    m = cur.take(_ADJUST_RE)
    if not m:
        raise _fail(cur, base, "adjust", "expected 'to a depth|altitude of <value><unit>'")
    mode = VerticalMode.DEPTH if m.group(1).lower() == "depth" else VerticalMode.ALTITUDE
    value = _meters(m.group(2), m.group(3))
    if not cur.at_end():
        raise _fail(cur, base, "adjust", "unexpected text after the adjust clause")
    try:
        return Adjust(VerticalSetting(mode, value)), {
            "verticalMode": mode.name.lower(),
            "verticalM": value,
        }
    except ValueError as exc:
        raise ClauseParseError(cur.text, base, str(exc), TEMPLATES["adjust"]) from None


def _parse_orbit(cur: _Cursor, base: int, verb: str) -> tuple[Command, dict]:
    cur.take(_FOR_RE)
    m = cur.take(_TURNS_A_RE)
    if m:
        turns = 1.0
    else:
        m = cur.take(_TURNS_N_RE)
        if not m:
            raise _fail(cur, base, verb, "expected 'a turn' or '<n> turns'")
        turns = float(m.group(1))
    m = cur.take(_RADIUS_RE)
    if not m:
        raise _fail(cur, base, verb, "expected 'at a radius of <value><unit>'")
    radius = _meters(m.group(1), m.group(2))
    m = cur.take(_ROTATION_RE)
    if not m:
        raise _fail(cur, base, verb, "expected 'in a clockwise|counterclockwise direction'")
    word = m.group(1).lower()
    rotation = Rotation.CW if word in ("cw", "clockwise") else Rotation.CCW
    vertical = VerticalSetting.no_change()
    slots = {"turns": turns, "radiusM": radius, "rotation": rotation.value}
    v = _take_vertical(cur)
    if v:
        vertical, vslots = v
        slots.update(vslots)
    if not cur.at_end():
        raise _fail(cur, base, verb, f"unexpected text after the {verb} clause")
    cls = Circle if verb == "circle" else Spiral
    try:
        return cls(turns, radius, rotation, vertical), slots
    except ValueError as exc:
        raise ClauseParseError(cur.text, base, str(exc), TEMPLATES[verb]) from None


def parse_clause(clause: str, base_offset: int = 0) -> tuple[Command, str, dict]:
    """Match one clause against the command templates.

    Returns (command, template id, slot values); raises ClauseParseError
    with the failure offset and the nearest template as a hint.
    """
    cur = _Cursor(clause)
    m = cur.take(_VERB_RE)
    if not m:
        first_word = clause.split()[0] if clause.split() else ""
        raise ClauseParseError(
            clause, base_offset, f"unrecognized command {first_word!r}", _nearest_template(first_word)
        )
    verb = m.group(1).lower()
    if verb in ("start", "end"):
        point, slots = _parse_point(cur, base_offset, verb)
        if not cur.at_end():
            raise _fail(cur, base_offset, verb, f"unexpected text after the {verb} clause")
        cmd: Command = Start(point) if verb == "start" else End(point)
        return cmd, verb, slots
    if verb == "move":
        cmd, slots = _parse_move(cur, base_offset)
        return cmd, verb, slots
    if verb == "track":
        cmd, slots = _parse_track(cur, base_offset)
        return cmd, verb, slots
    if verb == "adjust":
        cmd, slots = _parse_adjust(cur, base_offset)
        return cmd, verb, slots
    cmd, slots = _parse_orbit(cur, base_offset, verb)
    return cmd, verb, slots


def parse_nl(text: str) -> tuple[Mission, ParseTrace]:
    """Parse an English mission description into a Mission plus trace.

    Structural mission problems (missing Start, Track before any Move, ...)
    are not raised here; run validate_mission on the result for diagnostics.
    """
    spans = split_clauses(text)
    if not spans:
        first_word = text.split()[0] if text.split() else ""
        raise ClauseParseError(
            text.strip(), 0, "no command clauses found", _nearest_template(first_word)
        )
    commands: list[Command] = []
    trace: ParseTrace = []
    for begin, end in spans:
        clause = text[begin:end]
        cmd, template_id, slots = parse_clause(clause, begin)
        commands.append(cmd)
        trace.append(ClauseTrace((begin, end), template_id, slots))
    return Mission(tuple(commands)), trace


# --- translator port --------------------------------------------------------


class Translator(Protocol):
    """Text in, canonical mission tokens out. Implementations must be
    deterministic under a fixed configuration."""

    name: str

    def translate(self, text: str) -> str: ...


class GrammarTranslator:
    """Grammar-engine translator; canonical token input passes through."""

    name = "grammar"

    def translate(self, text: str) -> str:
        if text.lstrip().startswith("["):
            return render(parse_tokens(text))
        mission, _ = parse_nl(text)
        return render(mission)


class StubTranslator:
    """Test double returning a fixed string for every input."""

    name = "stub"

    def __init__(self, output: str = ""):
        self.output = output

    def translate(self, text: str) -> str:
        return self.output
