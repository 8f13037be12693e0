"""Acceptance suite: one test per criterion, run at the stated tolerances.

The inverse-move half of the geodesy criterion fails by design of the
geometry itself: a reciprocal compass bearing is not the true back-azimuth
on a sphere, and the out-and-back miss grows as d^2*tan(lat)/R (1.79 m at
lat 85, d 1 km), so the 0.5 m bound cannot hold over the stated |lat| <= 85
domain. The check is implemented faithfully anyway; see
test_geo.py::test_inverse_move_miss_matches_convergence_law for the
numerical verification of that law.
"""

import json
import math
import random
import socket
import subprocess
import sys
import time
from pathlib import Path

import httpx
import pytest

from golden_data import (
    SURVEY_A_COMMAND_COUNT,
    SURVEY_A_TEXT,
    SURVEY_A_TOKENS,
    SURVEY_B_COMMAND_COUNT,
    SURVEY_B_TEXT,
    SURVEY_B_TOKENS,
)
from perturb import CATEGORIES, mission_containing, perturb
from w2w.compiler import WaypointKind, compile_mission, export_waypoints
from w2w.corpus import generate_corpus, random_mission
from w2w.evaluation import (
    LATENCY_BUDGET_MS,
    bleu,
    classify_token_errors,
    meteor,
    run_eval,
)
from w2w.geo import geodesic_destination, haversine_distance
from w2w.model import (
    COMMAND_TYPE_NAMES,
    Circle,
    End,
    GeoPoint,
    Mission,
    Move,
    Rotation,
    Spiral,
    Start,
    Track,
    TrackDir,
    validate_mission,
)
from w2w.nl import GrammarTranslator, parse_nl
from w2w.tokens import PositionedSyntaxError, SemanticError, parse_tokens, render

GOLDENS = Path(__file__).parent / "goldens"


def test_golden_missions():
    """Both field-survey texts parse, compile, and export byte-stably."""
    t0 = time.perf_counter()
    for name, text, tokens, count in (
        ("survey_a", SURVEY_A_TEXT, SURVEY_A_TOKENS, SURVEY_A_COMMAND_COUNT),
        ("survey_b", SURVEY_B_TEXT, SURVEY_B_TOKENS, SURVEY_B_COMMAND_COUNT),
    ):
        mission, _ = parse_nl(text)
        assert len(mission.commands) == count
        assert render(mission) == tokens  # exact token match
        waypoints, stats = compile_mission(mission)
        assert stats.waypoint_count > 0
        assert export_waypoints(waypoints, stats, "json", tokens=tokens) == (
            GOLDENS / f"{name}.json"
        ).read_bytes()
        assert export_waypoints(waypoints, stats, "csv") == (GOLDENS / f"{name}.csv").read_bytes()
    assert time.perf_counter() - t0 < 1.0


def test_codec_round_trip_and_fuzz():
    """1,000 random missions round-trip; 100k random inputs never crash."""
    t0 = time.perf_counter()
    rng = random.Random(424242)
    for _ in range(1000):
        mission = random_mission(rng)
        assert parse_tokens(render(mission)) == mission

    seeds = "[]SEMvTrAzCrSp:,.;0123456789 -naclwd\n\t"
    for _ in range(100_000):
        text = "".join(rng.choice(seeds) for _ in range(rng.randint(0, 40)))
        try:
            parse_tokens(text)
        except (PositionedSyntaxError, SemanticError):
            pass
    assert time.perf_counter() - t0 < 30.0


def test_corpus_fidelity():
    """1110-sample corpus: exact grammar inversion; references all compile."""
    t0 = time.perf_counter()
    corpus = generate_corpus(1110, 7)
    assert len(corpus) == 1110
    for sample in corpus:
        mission = parse_tokens(sample.reference)
        assert [d for d in validate_mission(mission) if d.severity == "error"] == []
        compile_mission(mission)
    report = run_eval(GrammarTranslator(), corpus)
    assert report.exact_match_rate == 1.0
    assert report.bleu >= 0.999
    assert report.meteor >= 0.99
    assert time.perf_counter() - t0 < 60.0


def test_latency_budget():
    """Mean translate+compile stays within the interactive budget (200 samples)."""
    corpus = generate_corpus(200, 11)
    report = run_eval(GrammarTranslator(), corpus)
    assert report.mean_latency_ms <= LATENCY_BUDGET_MS


def _geodesy_cases(seed, count, max_dist):
    rng = random.Random(seed)
    for _ in range(count):
        origin = GeoPoint(rng.uniform(-85, 85), rng.uniform(-180, 180))
        yield origin, rng.uniform(0, 360), rng.uniform(0, max_dist)


def test_geodesy_oracle_distance_consistency():
    """10,000 random cases: |haversine(p, dest) - d| <= max(1 cm, 1e-4 d)."""
    for origin, bearing, dist in _geodesy_cases(1001, 10_000, 10_000):
        dest = geodesic_destination(origin, bearing, dist)
        assert abs(haversine_distance(origin, dest) - dist) <= max(0.01, 1e-4 * dist)


def test_geodesy_oracle_inverse_move():
    """Faithful check of the stated bound; unattainable (see module docstring)."""
    worst = 0.0
    for origin, bearing, dist in _geodesy_cases(1002, 10_000, 1_000):
        there = geodesic_destination(origin, bearing, dist)
        back = geodesic_destination(there, bearing + 180.0, dist)
        worst = max(worst, haversine_distance(origin, back))
    assert worst <= 0.5, (
        f"worst inverse-move miss {worst:.3f} m exceeds 0.5 m; reciprocal-bearing "
        "returns inherently miss by d^2*tan(lat)/R, up to 1.79 m at |lat| = 85"
    )


def test_pattern_geometry():
    """Circle closure/chord-sum, spiral monotonicity, track expansion count."""
    origin = GeoPoint(38.7969, -75.1538)

    # integer-turn circle closure within 1 cm
    for turns in (1, 2, 3):
        mission = Mission((Start(origin), Circle(turns, 20, Rotation.CW), End(origin)))
        wps, _ = compile_mission(mission)
        arc = [w.point for w in wps if w.kind == WaypointKind.CIRCLE_ARC]
        assert haversine_distance(arc[0], arc[-1]) < 0.01

    # chord-sum within 0.5% of 2*pi*r*turns at 15-degree steps
    for turns, radius in ((1, 10), (2, 35), (0.5, 80)):
        mission = Mission((Start(origin), Circle(turns, radius, Rotation.CCW), End(origin)))
        wps, _ = compile_mission(mission)
        arc = [w.point for w in wps if w.kind == WaypointKind.CIRCLE_ARC]
        chord_sum = sum(haversine_distance(a, b) for a, b in zip(arc, arc[1:]))
        expected = 2 * math.pi * radius * turns
        assert abs(chord_sum - expected) / expected < 0.005

    # spiral radial monotonicity on 1,000 random spirals
    rng = random.Random(2002)
    for _ in range(1000):
        spiral = Spiral(
            turns=round(rng.uniform(0.25, 4), 2),
            radius=round(rng.uniform(1, 100), 2),
            rotation=rng.choice((Rotation.CW, Rotation.CCW)),
        )
        center = GeoPoint(rng.uniform(-80, 80), rng.uniform(-179, 179))
        mission = Mission((Start(center), spiral, End(center)))
        wps, _ = compile_mission(mission)
        radii = [
            haversine_distance(center, w.point)
            for w in wps
            if w.kind == WaypointKind.SPIRAL_ARC
        ]
        assert all(b >= a - 1e-6 for a, b in zip(radii, radii[1:]))

    # Track (extent 100, spacing 14) -> exactly 7 lateral steps
    mission = Mission(
        (Start(origin), Move(180, 100, 1), Track(TrackDir.LEFT, 14, 100), End(origin))
    )
    wps, _ = compile_mission(mission)
    corners = [w for w in wps if w.kind == WaypointKind.TRACK_CORNER]
    assert len(corners) == 2 * 7


def test_error_taxonomy_oracle():
    """500 single perturbations classify as exactly the constructed error."""
    rng = random.Random(3003)
    combos = [(t, c) for t in COMMAND_TYPE_NAMES for c in CATEGORIES]
    for case in range(500):
        type_name, category = combos[case % len(combos)]
        mission = mission_containing(rng, type_name)
        predicted = perturb(rng, mission, type_name, category)
        counts = classify_token_errors(mission, predicted)
        for name, c in counts.items():
            for cat in CATEGORIES:
                expected = 1 if (name, cat) == (type_name, category) else 0
                assert getattr(c, cat) == expected, (
                    f"case {case}: {type_name}/{category} -> {name}.{cat} = "
                    f"{getattr(c, cat)}, expected {expected}"
                )


def test_metric_sanity():
    """Identity, reversal, and range behavior of BLEU and METEOR."""
    refs = [s.reference for s in generate_corpus(50, 21)]
    assert bleu(refs, refs) == 1.0
    for ref in refs:
        assert meteor(ref, ref) >= 0.999

    ten = "k1 k2 k3 k4 k5 k6 k7 k8 k9 k10"
    assert meteor(ten, " ".join(reversed(ten.split()))) == pytest.approx(0.5, rel=1e-9)

    rng = random.Random(5005)
    vocabulary = ["[", "]", ":", ",", "s", "mv", "tr", "az", "cr", "sp", "0", "1", "180", "n"]
    for _ in range(10_000):
        ref = " ".join(rng.choices(vocabulary, k=rng.randint(1, 15)))
        hyp = " ".join(rng.choices(vocabulary, k=rng.randint(0, 15)))
        b = bleu([ref], [hyp])
        m = meteor(ref, hyp)
        assert 0.0 <= b <= 1.0
        assert 0.0 <= m <= 1.0


class _LiveService:
    def __init__(self, data_dir: Path):
        sock = socket.socket()
        sock.bind(("127.0.0.1", 0))
        self.port = sock.getsockname()[1]
        sock.close()
        self.base = f"http://127.0.0.1:{self.port}"
        self.proc = subprocess.Popen(
            [
                sys.executable,
                "-m",
                "w2w.cli",
                "serve",
                "--addr",
                f"127.0.0.1:{self.port}",
                "--data-dir",
                str(data_dir),
            ],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        deadline = time.time() + 15
        while time.time() < deadline:
            try:
                httpx.get(self.base + "/api/v1/missions", timeout=0.5)
                return
            except httpx.HTTPError:
                time.sleep(0.1)
        raise RuntimeError("service did not come up")

    def stop(self):
        self.proc.terminate()
        self.proc.wait(timeout=10)


def test_service_integration(tmp_path):
    """create -> fetch -> conflicting update -> export against a live server,
    with file persistence surviving a restart."""
    data_dir = tmp_path / "missions"
    service = _LiveService(data_dir)
    try:
        created = httpx.post(
            service.base + "/api/v1/missions",
            json={"name": "integration", "tokens": SURVEY_A_TOKENS},
        )
        assert created.status_code == 201
        mission_id = created.json()["id"]

        fetched = httpx.get(f"{service.base}/api/v1/missions/{mission_id}")
        assert fetched.status_code == 200
        assert fetched.json()["tokens"] == SURVEY_A_TOKENS

        ok = httpx.put(
            f"{service.base}/api/v1/missions/{mission_id}",
            json={"revision": 1, "name": "renamed"},
        )
        assert ok.status_code == 200
        stale = httpx.put(
            f"{service.base}/api/v1/missions/{mission_id}",
            json={"revision": 1, "name": "loser"},
        )
        assert stale.status_code == 409

        export = httpx.get(
            f"{service.base}/api/v1/missions/{mission_id}/export", params={"format": "json"}
        )
        assert export.status_code == 200
        assert export.json()["version"] == "w2w-mission/1"
        assert export.json()["stats"]["pathLength"] > 0
    finally:
        service.stop()

    # restart on the same data directory: stored mission must still be there
    service = _LiveService(data_dir)
    try:
        listed = httpx.get(service.base + "/api/v1/missions").json()["missions"]
        assert [m["id"] for m in listed] == [mission_id]
        assert listed[0]["name"] == "renamed"
        assert listed[0]["revision"] == 2
    finally:
        service.stop()
