import json

import pytest

from golden_data import SURVEY_A_TEXT, SURVEY_A_TOKENS
from w2w.cli import EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_USAGE, run


class TestParseCommand:
    def test_golden_text_prints_tokens(self, capsys):
        assert run(["parse", "--text", SURVEY_A_TEXT]) == EXIT_OK
        assert capsys.readouterr().out.strip() == SURVEY_A_TOKENS

    def test_json_output(self, capsys):
        assert run(["parse", "--text", "Start at 0 N, 0 E. End at 0 N, 0 E.", "--json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["tokens"] == "[S: 0, 0]; [E: 0, 0]"
        assert len(doc["mission"]["commands"]) == 2

    def test_file_input(self, tmp_path, capsys):
        path = tmp_path / "mission.txt"
        path.write_text(SURVEY_A_TEXT, encoding="utf-8")
        assert run(["parse", "--file", str(path)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == SURVEY_A_TOKENS

    def test_bad_text_exit_2(self, capsys):
        assert run(["parse", "--text", "dance a jig"]) == EXIT_PARSE

    def test_missing_input_exit_1(self, capsys):
        assert run(["parse"]) == EXIT_USAGE
        assert run(["parse", "--text", "x", "--file", "y"]) == EXIT_USAGE

    def test_missing_file_exit_3(self, capsys):
        assert run(["parse", "--file", "/nonexistent/mission.txt"]) == EXIT_IO


class TestCompileCommand:
    def test_csv_to_stdout(self, capsys):
        assert run(["compile", "--tokens", "[S: 0, 0]; [E: 0, 0]", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "lat,lon,mode,value_m,speed_mps,kind"
        assert len(lines) == 3

    def test_json_to_file(self, tmp_path, capsys):
        out = tmp_path / "mission.json"
        code = run(["compile", "--tokens", SURVEY_A_TOKENS, "--out", str(out)])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["version"] == "w2w-mission/1"

    def test_bad_tokens_exit_2(self, capsys):
        assert run(["compile", "--tokens", "[Mv: nope]"]) == EXIT_PARSE

    def test_byte_identical_runs(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["compile", "--tokens", SURVEY_A_TOKENS, "--out", str(a)])
        run(["compile", "--tokens", SURVEY_A_TOKENS, "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestCorpusAndEval:
    def test_gen_corpus_and_eval(self, tmp_path, capsys):
        corpus = tmp_path / "corpus.jsonl"
        assert run(["gen-corpus", "--n", "40", "--seed", "7", "--out", str(corpus)]) == EXIT_OK
        assert len(corpus.read_text().strip().splitlines()) == 40

        report = tmp_path / "report.json"
        code = run(
            ["eval", "--corpus", str(corpus), "--translator", "grammar", "--report", str(report)]
        )
        assert code == EXIT_OK
        doc = json.loads(report.read_text())
        assert doc["exactMatchRate"] == 1.0
        out = capsys.readouterr().out
        assert "bleu" in out

    def test_eval_deterministic_flag(self, tmp_path):
        corpus = tmp_path / "corpus.jsonl"
        run(["gen-corpus", "--n", "10", "--seed", "3", "--out", str(corpus)])
        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        run(["eval", "--corpus", str(corpus), "--deterministic", "--report", str(r1)])
        run(["eval", "--corpus", str(corpus), "--deterministic", "--report", str(r2)])
        assert r1.read_bytes() == r2.read_bytes()

    def test_stub_translator(self, tmp_path):
        corpus = tmp_path / "corpus.jsonl"
        run(["gen-corpus", "--n", "5", "--seed", "3", "--out", str(corpus)])
        report = tmp_path / "report.json"
        run(["eval", "--corpus", str(corpus), "--translator", "stub", "--report", str(report)])
        assert json.loads(report.read_text())["bleu"] == 0.0


def test_unknown_subcommand_exit_1(capsys):
    assert run(["frobnicate"]) == EXIT_USAGE
