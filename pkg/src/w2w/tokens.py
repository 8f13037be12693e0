"""Canonical bracketed token codec (wire format "w2w-tokens/1").

Grammar, one token per command, tokens joined by "; ":

    [S: <lat>, <lon>]
    [E: <lat>, <lon>]
    [Mv: <bearing>, <dist>, <speed>, <v>]
    [Tr: <l|r>, <spacing>, <extent>, <v>]
    [Az: <d|a>, <value>]
    [Cr: <turns>, <radius>, <cw|ccw>, <v>]
    [Sp: <turns>, <radius>, <cw|ccw>, <v>]

where <v> is "n" (no change) or "<d|a>, <value>". Numbers use the shortest
decimal form with "." as separator and no trailing zeros: at most 4
fractional digits for latitude/longitude, 2 for everything else (meters,
speed, turns, bearing degrees). Parsing tolerates arbitrary whitespace
around delimiters and case-insensitive symbols; rendering is canonical and
byte-stable.
"""

from __future__ import annotations

import re

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
    validate_mission,
)

TOKEN_FORMAT_VERSION = "w2w-tokens/1"

SEPARATOR = "; "


class PositionedSyntaxError(ValueError):
    """Malformed token text; carries the character offset of the problem."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset
        self.reason = message


class SemanticError(ValueError):
    """Well-formed token with an out-of-range or inconsistent value."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset
        self.reason = message


def format_number(value: float, max_decimals: int) -> str:
    s = f"{value:.{max_decimals}f}"
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    if s in ("-0", ""):
        s = "0"
    return s


def _fmt_coord(value: float) -> str:
    return format_number(value, 4)


def _fmt(value: float) -> str:
    return format_number(value, 2)


def _render_vertical(v: VerticalSetting) -> str:
    if v.is_no_change:
        return "n"
    return f"{v.mode.value}, {_fmt(v.value)}"


def render_command(cmd: Command) -> str:
    if isinstance(cmd, (Start, End)):
        return f"[{cmd.SYMBOL}: {_fmt_coord(cmd.point.lat)}, {_fmt_coord(cmd.point.lon)}]"
    if isinstance(cmd, Move):
        return (
            f"[Mv: {_fmt(cmd.bearing)}, {_fmt(cmd.distance)}, {_fmt(cmd.speed)}, "
            f"{_render_vertical(cmd.vertical)}]"
        )
    if isinstance(cmd, Track):
        return (
            f"[Tr: {cmd.direction.value}, {_fmt(cmd.spacing)}, {_fmt(cmd.extent)}, "
            f"{_render_vertical(cmd.vertical)}]"
        )
    if isinstance(cmd, Adjust):
        return f"[Az: {cmd.vertical.mode.value}, {_fmt(cmd.vertical.value)}]"
    if isinstance(cmd, (Circle, Spiral)):
        return (
            f"[{cmd.SYMBOL}: {_fmt(cmd.turns)}, {_fmt(cmd.radius)}, {cmd.rotation.value}, "
            f"{_render_vertical(cmd.vertical)}]"
        )
    raise TypeError(f"unknown command {cmd!r}")


def render(mission: Mission) -> str:
    """Serialize a valid mission to canonical token text.

    Raises ValueError if the mission has validation errors.
    """
    errors = [d for d in validate_mission(mission) if d.severity == "error"]
    if errors:
        details = "; ".join(d.message for d in errors)
        raise ValueError(f"cannot render invalid mission: {details}")
    return SEPARATOR.join(render_command(c) for c in mission.commands)


_NUMBER_RE = re.compile(r"-?(?:\d+(?:\.\d*)?|\.\d+)$")

_SYMBOLS = {"s": Start, "e": End, "mv": Move, "tr": Track, "az": Adjust, "cr": Circle, "sp": Spiral}


class _Field:
    __slots__ = ("text", "offset")

    def __init__(self, text: str, offset: int):
        self.text = text
        self.offset = offset


def _scan_token(text: str, pos: int) -> tuple[str, list[_Field], int]:
    """Scan one bracketed token starting at `pos` (which must point at '[').

    Returns (symbol, fields, position after ']').
    """
    open_pos = pos
    pos += 1
    colon = text.find(":", pos)
    close = text.find("]", pos)
    if close == -1:
        raise PositionedSyntaxError(open_pos, "unterminated token: missing ']'")
    if colon == -1 or colon > close:
        raise PositionedSyntaxError(open_pos, "malformed token: missing ':' after symbol")
    symbol = text[pos:colon].strip().lower()
    if symbol not in _SYMBOLS:
        raise PositionedSyntaxError(pos, f"unknown command symbol {symbol!r}")
    fields: list[_Field] = []
    body_start = colon + 1
    body = text[body_start:close]
    if body.strip():
        cursor = 0
        for piece in body.split(","):
            stripped = piece.strip()
            field_off = body_start + cursor + piece.index(stripped) if stripped else body_start + cursor
            if not stripped:
                raise PositionedSyntaxError(body_start + cursor, "empty field")
            fields.append(_Field(stripped, field_off))
            cursor += len(piece) + 1
    return symbol, fields, close + 1


def _number(field: _Field) -> float:
    if not _NUMBER_RE.match(field.text):
        raise PositionedSyntaxError(field.offset, f"expected a number, got {field.text!r}")
    return float(field.text)


def _vertical_tail(fields: list[_Field], start: int, token_off: int) -> VerticalSetting:
    tail = fields[start:]
    if len(tail) == 1:
        if tail[0].text.lower() == "n":
            return VerticalSetting.no_change()
        raise PositionedSyntaxError(
            tail[0].offset, f"expected 'n' or 'd|a, <value>', got {tail[0].text!r}"
        )
    if len(tail) == 2:
        mode_f, value_f = tail
        mode = mode_f.text.lower()
        if mode not in ("d", "a"):
            raise PositionedSyntaxError(mode_f.offset, f"expected 'd', 'a' or 'n', got {mode_f.text!r}")
        value = _number(value_f)
        try:
            return VerticalSetting(VerticalMode(mode), value)
        except ValueError as exc:
            raise SemanticError(value_f.offset, str(exc)) from None
    raise PositionedSyntaxError(
        token_off, f"expected vertical setting 'n' or 'd|a, <value>', got {len(tail)} field(s)"
    )


def _arity(symbol: str, fields: list[_Field], allowed: tuple[int, ...], token_off: int) -> None:
    if len(fields) not in allowed:
        want = " or ".join(str(a) for a in allowed)
        raise PositionedSyntaxError(
            token_off, f"wrong arity for [{symbol}]: expected {want} fields, got {len(fields)}"
        )


def _build_command(symbol: str, fields: list[_Field], token_off: int) -> Command:
    try:
        if symbol in ("s", "e"):
            _arity(symbol, fields, (2,), token_off)
            point = GeoPoint(_number(fields[0]), _number(fields[1]))
            return Start(point) if symbol == "s" else End(point)
        if symbol == "mv":
            _arity(symbol, fields, (4, 5), token_off)
            return Move(
                bearing=_number(fields[0]),
                distance=_number(fields[1]),
                speed=_number(fields[2]),
                vertical=_vertical_tail(fields, 3, token_off),
            )
        if symbol == "tr":
            _arity(symbol, fields, (4, 5), token_off)
            d = fields[0].text.lower()
            if d not in ("l", "r"):
                raise PositionedSyntaxError(fields[0].offset, f"expected 'l' or 'r', got {fields[0].text!r}")
            return Track(
                direction=TrackDir(d),
                spacing=_number(fields[1]),
                extent=_number(fields[2]),
                vertical=_vertical_tail(fields, 3, token_off),
            )
        if symbol == "az":
            _arity(symbol, fields, (2,), token_off)
            v = _vertical_tail(fields, 0, token_off)
            return Adjust(v)
        if symbol in ("cr", "sp"):
            _arity(symbol, fields, (4, 5), token_off)
            rot = fields[2].text.lower()
            if rot not in ("cw", "ccw"):
                raise PositionedSyntaxError(fields[2].offset, f"expected 'cw' or 'ccw', got {fields[2].text!r}")
            cls = Circle if symbol == "cr" else Spiral
            return cls(
                turns=_number(fields[0]),
                radius=_number(fields[1]),
                rotation=Rotation(rot),
                vertical=_vertical_tail(fields, 3, token_off),
            )
    except (PositionedSyntaxError, SemanticError):
        raise
    except ValueError as exc:
        # range violation from a command constructor
        raise SemanticError(token_off, str(exc)) from None
    raise PositionedSyntaxError(token_off, f"unknown command symbol {symbol!r}")


def scan_commands(text: str) -> list[Command]:
    """Parse a token sequence into commands without mission-level validation.

    Used wherever structurally-invalid sequences must still parse (the
    error-taxonomy classifier, service-side diagnostics).
    """
    commands: list[Command] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace() or ch == ";":
            pos += 1
            continue
        if ch != "[":
            raise PositionedSyntaxError(pos, f"expected '[' starting a token, got {ch!r}")
        symbol, fields, pos = _scan_token(text, pos)
        commands.append(_build_command(symbol, fields, pos))
    return commands


def parse_tokens(text: str) -> Mission:
    """Parse canonical (or loosely formatted) token text into a Mission.

    Inverse of `render` on canonical input. Raises PositionedSyntaxError on
    grammar violations, SemanticError on out-of-range values or structural
    mission errors.
    """
    commands = scan_commands(text)
    mission = Mission(tuple(commands))
    errors = [d for d in validate_mission(mission) if d.severity == "error"]
    if errors:
        raise SemanticError(0, "; ".join(d.message for d in errors))
    return mission


def tokenize_for_metrics(text: str) -> list[str]:
    """Split token text for BLEU/METEOR: space out [ ] : , then lowercase-split.

    Works on any text including malformed predictions; pure and total.
    """
    for ch in "[]:,":
        text = text.replace(ch, f" {ch} ")
    return text.lower().split()
