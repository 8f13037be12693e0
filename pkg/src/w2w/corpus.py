"""Seeded mission/utterance corpus generation.

Each sample pairs an English mission description with its reference token
string. Samples are drawn from five pattern families (lawnmower, polygonal,
ripple, spiral, mixed survey) assigned round-robin so every command type
appears in any corpus of a handful of samples or more. Phrasings vary:
verb capitalization, optional "for", unit words, clause joiners, optional
speed and vertical clauses, cardinal versus numeric bearings.

The generator builds the Mission first and derives both the utterance and
the reference from it, so the grammar front end inverts every sample by
construction. All numeric slots use the exact unit conversions of the NL
grammar, keeping token rendering bit-identical on both paths.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

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
    VerticalSetting,
)
from w2w.nl import CARDINAL_BEARINGS, UNIT_FACTORS
from w2w.tokens import format_number, render

FAMILIES = ("lawnmower", "polygonal", "ripple", "spiral", "survey_mix")

_JOINERS = (". ", " and then ", " then ", ", ", " and ")
_METER_WORDS = ("m", "meters", "metres")
_CW_WORDS = ("clockwise", "cw")
_CCW_WORDS = ("counterclockwise", "counter clockwise", "anticlockwise", "ccw")


@dataclass(frozen=True)
class CorpusSample:
    id: str
    utterance: str
    reference: str
    template_id: str
    seed: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "utterance": self.utterance,
            "reference": self.reference,
            "templateId": self.template_id,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CorpusSample":
        return cls(d["id"], d["utterance"], d["reference"], d["templateId"], d["seed"])


def _num(value: float, places: int = 2) -> str:
    return format_number(value, places)


def _coord_text(rng: random.Random, point: GeoPoint) -> str:
    deg = rng.choice(("", "°"))
    ns = "N" if point.lat >= 0 else "S"
    ew = "E" if point.lon >= 0 else "W"
    return (
        f"{_num(abs(point.lat), 4)}{deg} {ns}, {_num(abs(point.lon), 4)}{deg} {ew}"
    )


def _rand_point(rng: random.Random) -> GeoPoint:
    return GeoPoint(round(rng.uniform(-84.0, 84.0), 4), round(rng.uniform(-179.0, 179.0), 4))


def _nearby_point(rng: random.Random, origin: GeoPoint) -> GeoPoint:
    lat = round(min(84.0, max(-84.0, origin.lat + rng.uniform(-0.005, 0.005))), 4)
    lon = round(min(179.0, max(-179.0, origin.lon + rng.uniform(-0.005, 0.005))), 4)
    return GeoPoint(lat, lon)


def _distance_phrase(rng: random.Random, lo: float = 5.0, hi: float = 400.0) -> tuple[float, str]:
    """Pick a distance and its surface form; returns (meters, text)."""
    unit = rng.choice(("m", "m", "m", "word", "km", "ft"))
    if unit == "km":
        value = rng.choice((0.1, 0.2, 0.5, 1.0, 1.5, 2.0))
        return value * UNIT_FACTORS["km"], f"{_num(value)} km"
    if unit == "ft":
        value = float(rng.randint(10, 300))
        word = rng.choice(("ft", "feet"))
        return value * UNIT_FACTORS["ft"], f"{_num(value)} {word}"
    value = float(rng.randint(int(lo), int(hi)))
    word = rng.choice(_METER_WORDS)
    if word == "m" and rng.random() < 0.3:
        return value, f"{_num(value)}m"  # attached unit, as in "30m"
    return value, f"{_num(value)} {word}"


def _vertical_phrase(rng: random.Random) -> tuple[VerticalSetting, str]:
    mode = rng.choice(("depth", "altitude"))
    value = rng.randint(1, 60) / 2.0
    article = "a" if mode == "depth" else "an"
    text = f" at {article} {mode} of {_num(value)} {rng.choice(_METER_WORDS)}"
    setting = VerticalSetting.depth(value) if mode == "depth" else VerticalSetting.altitude(value)
    return setting, text


def _maybe_vertical(rng: random.Random, p: float = 0.35) -> tuple[VerticalSetting, str]:
    if rng.random() < p:
        return _vertical_phrase(rng)
    return VerticalSetting.no_change(), ""


def _verb(rng: random.Random, word: str) -> str:
    return word.capitalize() if rng.random() < 0.6 else word


def _move(rng: random.Random) -> tuple[Command, str]:
    if rng.random() < 0.75:
        direction = rng.choice(tuple(CARDINAL_BEARINGS))
        bearing = CARDINAL_BEARINGS[direction]
        head = f"{_verb(rng, 'move')} {direction}"
    else:
        bearing = float(rng.randint(0, 359))
        head = f"{_verb(rng, 'move')} at a bearing of {_num(bearing)} degrees"
    distance, dist_text = _distance_phrase(rng)
    body = f"{head} {'for ' if rng.random() < 0.5 else ''}{dist_text}"
    speed = 1.0
    if rng.random() < 0.4:
        speed = rng.choice((0.5, 1.5, 2.0, 2.5, 3.0))
        body += rng.choice((f" at {_num(speed)} m/s", f" at a speed of {_num(speed)} m/s"))
    vertical, vtext = _maybe_vertical(rng)
    return Move(bearing, distance, speed, vertical), body + vtext


def _track(rng: random.Random) -> tuple[Command, str]:
    direction = rng.choice((TrackDir.LEFT, TrackDir.RIGHT))
    spacing = float(rng.randint(5, 30))
    extent = float(rng.randint(int(spacing), 300))
    vertical, vtext = _maybe_vertical(rng, 0.25)
    text = (
        f"{_verb(rng, 'track')} {'left' if direction is TrackDir.LEFT else 'right'} "
        f"{'for ' if rng.random() < 0.6 else ''}{_num(extent)} {rng.choice(_METER_WORDS)} "
        f"{rng.choice(('with', 'at'))} a spacing of {_num(spacing)} {rng.choice(_METER_WORDS)}"
        f"{vtext}"
    )
    return Track(direction, spacing, extent, vertical), text


def _adjust(rng: random.Random) -> tuple[Command, str]:
    vertical, _ = _vertical_phrase(rng)
    mode = "depth" if vertical.mode.value == "d" else "altitude"
    article = "a" if mode == "depth" else "an"
    attached = rng.random() < 0.3
    unit = "m" if attached else rng.choice(_METER_WORDS)
    sep = "" if attached else " "
    text = f"{_verb(rng, 'adjust')} to {article} {mode} of {_num(vertical.value)}{sep}{unit}"
    return Adjust(vertical), text


def _orbit(rng: random.Random, verb: str) -> tuple[Command, str]:
    turns = rng.choice((0.5, 1.0, 1.0, 1.5, 2.0, 3.0))
    if turns == 1.0:
        turns_text = rng.choice(("a turn", "one turn", "1 turn"))
    else:
        turns_text = f"{_num(turns)} turns"
    radius = float(rng.randint(5, 50))
    rotation = rng.choice((Rotation.CW, Rotation.CCW))
    rot_word = rng.choice(_CW_WORDS if rotation is Rotation.CW else _CCW_WORDS)
    vertical, vtext = _maybe_vertical(rng, 0.3)
    text = (
        f"{_verb(rng, verb)} {'for ' if rng.random() < 0.7 else ''}{turns_text} "
        f"at a radius of {_num(radius)} {rng.choice(_METER_WORDS)} "
        f"in a {rot_word} direction{vtext}"
    )
    cls = Circle if verb == "circle" else Spiral
    return cls(turns, radius, rotation, vertical), text


def _build_sample(index: int, family: str, sample_seed: int) -> CorpusSample:
    rng = random.Random(sample_seed)
    start = _rand_point(rng)
    parts: list[tuple[Command, str]] = [
        (Start(start), f"{_verb(rng, 'start')} at {_coord_text(rng, start)}")
    ]

    if family == "lawnmower":
        parts.append(_move(rng))
        parts.append(_track(rng))
    elif family == "polygonal":
        for _ in range(rng.randint(3, 6)):
            parts.append(_move(rng))
    elif family == "ripple":
        parts.append(_orbit(rng, "circle"))
        for _ in range(rng.randint(1, 2)):
            parts.append(_adjust(rng))
            parts.append(_orbit(rng, "circle"))
    elif family == "spiral":
        if rng.random() < 0.5:
            parts.append(_move(rng))
        parts.append(_orbit(rng, "spiral"))
    else:  # survey_mix
        parts.append(_orbit(rng, rng.choice(("circle", "spiral"))))
        parts.append(_move(rng))
        parts.append(_move(rng))
        parts.append(_track(rng))
        if rng.random() < 0.5:
            parts.append(_adjust(rng))

    endpoint = _nearby_point(rng, start)
    parts.append((End(endpoint), f"{_verb(rng, 'end')} at {_coord_text(rng, endpoint)}"))

    mission = Mission(tuple(cmd for cmd, _ in parts))
    utterance = parts[0][1]
    for _, clause in parts[1:]:
        utterance += rng.choice(_JOINERS) + clause
    if rng.random() < 0.7:
        utterance += "."
    return CorpusSample(
        id=f"s{index:05d}",
        utterance=utterance,
        reference=render(mission),
        template_id=family,
        seed=sample_seed,
    )


def generate_corpus(n: int, seed: int) -> list[CorpusSample]:
    """Generate `n` deterministic samples from the template families.

    Families rotate round-robin, so all 7 command types and all four
    mission patterns appear in any corpus with at least 5 samples. Every
    reference renders from a validated Mission.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = random.Random(seed)
    samples = []
    for i in range(n):
        sample_seed = rng.randrange(2**32)
        samples.append(_build_sample(i, FAMILIES[i % len(FAMILIES)], sample_seed))
    return samples


def write_corpus(samples: list[CorpusSample], path: str | Path) -> None:
    """Write one JSON record per line (UTF-8)."""
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            fh.write(json.dumps(s.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")


def read_corpus(path: str | Path) -> list[CorpusSample]:
    samples = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                samples.append(CorpusSample.from_dict(json.loads(line)))
    return samples


def random_mission(rng: random.Random, max_middle: int = 8) -> Mission:
    """Random structurally valid mission with token-grid parameter values.

    Every numeric parameter is quantized to what the token codec renders
    exactly (4 decimals for coordinates, 2 elsewhere), so missions from
    this generator round-trip bit-identically through render/parse.
    """
    commands: list[Command] = [Start(_rand_point(rng))]
    have_leg = False
    for _ in range(rng.randint(0, max_middle)):
        kind = rng.choice(("move", "move", "track", "adjust", "circle", "spiral"))
        if kind == "track" and not have_leg:
            kind = "move"
        if kind == "move":
            commands.append(
                Move(
                    bearing=round(rng.uniform(0, 359.99), 2),
                    distance=round(rng.uniform(0.5, 2000), 2),
                    speed=round(rng.uniform(0.1, 5), 2),
                    vertical=_rand_vertical(rng, allow_none=True),
                )
            )
            have_leg = True
        elif kind == "track":
            spacing = round(rng.uniform(1, 50), 2)
            commands.append(
                Track(
                    direction=rng.choice((TrackDir.LEFT, TrackDir.RIGHT)),
                    spacing=spacing,
                    extent=round(rng.uniform(spacing, 500), 2),
                    vertical=_rand_vertical(rng, allow_none=True),
                )
            )
            have_leg = False
        elif kind == "adjust":
            commands.append(Adjust(_rand_vertical(rng, allow_none=False)))
        else:
            cls = Circle if kind == "circle" else Spiral
            commands.append(
                cls(
                    turns=round(rng.uniform(0.25, 4), 2),
                    radius=round(rng.uniform(1, 100), 2),
                    rotation=rng.choice((Rotation.CW, Rotation.CCW)),
                    vertical=_rand_vertical(rng, allow_none=True),
                )
            )
            have_leg = False
    commands.append(End(_rand_point(rng)))
    return Mission(tuple(commands))


def _rand_vertical(rng: random.Random, allow_none: bool) -> VerticalSetting:
    choices = ["d", "a"] + (["n", "n"] if allow_none else [])
    mode = rng.choice(choices)
    if mode == "n":
        return VerticalSetting.no_change()
    value = round(rng.uniform(0, 60), 2)
    return VerticalSetting.depth(value) if mode == "d" else VerticalSetting.altitude(value)
