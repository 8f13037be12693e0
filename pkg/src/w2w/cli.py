"""Command-line entry point.

    w2w parse --text "Start at 0 N, 0 E. End at 0 N, 0 E."
    w2w compile --tokens "[S: 0, 0]; [E: 0, 0]" --format csv
    w2w gen-corpus --n 1110 --seed 7 --out corpus.jsonl
    w2w eval --corpus corpus.jsonl --translator grammar --report report.json
    w2w serve --addr 127.0.0.1:8080 --data-dir ./missions

Exit codes: 0 success, 1 usage error, 2 parse/compile error, 3 I/O error.
Canonical token text is the default output so commands compose in shell
pipelines; --json switches parse to the full structured payload.
"""

from __future__ import annotations

import argparse
import json
import sys

from w2w.compiler import CompileError, compile_mission, export_waypoints
from w2w.corpus import generate_corpus, read_corpus, write_corpus
from w2w.evaluation import run_eval
from w2w.model import command_to_dict, validate_mission
from w2w.nl import ClauseParseError, GrammarTranslator, StubTranslator, parse_nl
from w2w.tokens import parse_tokens, render

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


def _read_input(text: str | None, path: str | None) -> str:
    if (text is None) == (path is None):
        raise _UsageError("exactly one of --text/--tokens or --file is required")
    if text is not None:
        return text
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_parse(args) -> int:
    text = _read_input(args.text, args.file)
    if text.lstrip().startswith("["):
        mission, trace = parse_tokens(text), []
    else:
        mission, trace = parse_nl(text)
    diagnostics = validate_mission(mission)
    errors = [d for d in diagnostics if d.severity == "error"]
    if errors:
        for d in errors:
            print(f"error: {d.message}", file=sys.stderr)
        return EXIT_PARSE
    tokens = render(mission)
    if args.json:
        payload = {
            "tokens": tokens,
            "mission": {"commands": [command_to_dict(c) for c in mission.commands]},
            "trace": [t.to_dict() for t in trace],
            "diagnostics": [d.to_dict() for d in diagnostics],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(tokens)
    return EXIT_OK


def _cmd_compile(args) -> int:
    text = _read_input(args.tokens, args.file)
    mission = parse_tokens(text)
    waypoints, stats = compile_mission(mission)
    payload = export_waypoints(waypoints, stats, args.format, tokens=render(mission))
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def _cmd_gen_corpus(args) -> int:
    samples = generate_corpus(args.n, args.seed)
    write_corpus(samples, args.out)
    print(f"wrote {len(samples)} samples to {args.out}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    corpus = read_corpus(args.corpus)
    translator = GrammarTranslator() if args.translator == "grammar" else StubTranslator()
    report = run_eval(translator, corpus)
    if args.deterministic:
        report.mean_latency_ms = 0.0
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    print(report.to_table())
    return EXIT_OK


def _cmd_serve(args) -> int:
    import os

    import uvicorn

    from w2w.service import create_app

    host, _, port = args.addr.rpartition(":")
    if not port.isdigit():
        raise _UsageError(f"--addr must look like host:port, got {args.addr!r}")
    if args.static_dir and not os.path.isdir(args.static_dir):
        raise _UsageError(f"--static-dir {args.static_dir!r} is not a directory")
    app = create_app(args.data_dir, static_dir=args.static_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="w2w", description="mission token toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="translate mission text to canonical tokens")
    p.add_argument("--text", help="mission text (English or token passthrough)")
    p.add_argument("--file", help="read mission text from a file")
    p.add_argument("--json", action="store_true", help="print the full structured payload")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("compile", help="compile tokens to waypoints")
    p.add_argument("--tokens", help="token text")
    p.add_argument("--file", help="read token text from a file")
    p.add_argument("--out", help="output file (stdout when omitted)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("gen-corpus", help="generate an evaluation corpus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_corpus)

    p = sub.add_parser("eval", help="score a translator against a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--translator", choices=("grammar", "stub"), default="grammar")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument(
        "--deterministic",
        action="store_true",
        help="zero out timing fields for byte-identical CI output",
    )
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the mission HTTP service")
    p.add_argument("--addr", default="127.0.0.1:8080")
    p.add_argument("--data-dir", required=True)
    p.add_argument("--static-dir", help="UI bundle directory to serve at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClauseParseError, CompileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
