import random
from collections import Counter

from w2w.compiler import compile_mission
from w2w.corpus import FAMILIES, generate_corpus, random_mission, read_corpus, write_corpus
from w2w.model import command_type_name, validate_mission
from w2w.nl import parse_nl
from w2w.tokens import parse_tokens, render


class TestGenerateCorpus:
    def test_determinism(self):
        assert generate_corpus(25, 31) == generate_corpus(25, 31)

    def test_single_sample_determinism(self):
        assert generate_corpus(1, 9)[0] == generate_corpus(1, 9)[0]

    def test_different_seeds_differ(self):
        assert generate_corpus(5, 1) != generate_corpus(5, 2)

    def test_references_validate(self):
        for sample in generate_corpus(100, 3):
            mission = parse_tokens(sample.reference)
            assert [d for d in validate_mission(mission) if d.severity == "error"] == []

    def test_references_compile(self):
        for sample in generate_corpus(100, 4):
            wps, stats = compile_mission(parse_tokens(sample.reference))
            assert stats.waypoint_count == len(wps) >= 2

    def test_command_type_coverage_in_200_samples(self):
        seen = Counter()
        for sample in generate_corpus(200, 5):
            for cmd in parse_tokens(sample.reference).commands:
                seen[command_type_name(cmd)] += 1
        assert set(seen) == {"Start", "End", "Move", "Track", "Adjust", "Circle", "Spiral"}

    def test_pattern_families_rotate(self):
        ids = [s.template_id for s in generate_corpus(10, 6)]
        assert ids == list(FAMILIES) * 2

    def test_grammar_inverts_generator(self):
        for sample in generate_corpus(120, 8):
            mission, _ = parse_nl(sample.utterance)
            assert render(mission) == sample.reference


class TestCorpusFile:
    def test_round_trip(self, tmp_path):
        samples = generate_corpus(30, 12)
        path = tmp_path / "corpus.jsonl"
        write_corpus(samples, path)
        assert read_corpus(path) == samples

    def test_line_delimited(self, tmp_path):
        samples = generate_corpus(7, 1)
        path = tmp_path / "corpus.jsonl"
        write_corpus(samples, path)
        lines = path.read_text(encoding="utf-8").strip().splitlines()
        assert len(lines) == 7


class TestRandomMission:
    def test_always_valid(self):
        rng = random.Random(2)
        for _ in range(200):
            mission = random_mission(rng)
            assert [d for d in validate_mission(mission) if d.severity == "error"] == []

    def test_renderable(self):
        rng = random.Random(3)
        for _ in range(100):
            assert render(random_mission(rng))
