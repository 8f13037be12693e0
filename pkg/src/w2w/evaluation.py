"""Translation quality metrics and the evaluation harness.

BLEU here is corpus-level with uniform 1..4-gram weights, geometric mean,
and the standard brevity penalty; zero n-gram match counts are smoothed
with epsilon = 1e-9 so short missions do not zero the score. METEOR uses
exact-match unigram alignment only (the tokens are formal symbols, so no
stemming/synonym stages), the 9:1 recall-weighted harmonic mean, and the
cubed chunk-fragmentation penalty.

Token errors are classified by aligning predicted against reference
commands with a longest-common-subsequence over command types, preferring
parameter-equal pairs on ties. Aligned-but-unequal pairs are erroneous,
unmatched reference commands are missed, unmatched predictions are
hallucinated, bucketed per command type.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from dataclasses import dataclass, field

from w2w.compiler import CompileError, compile_mission
from w2w.corpus import CorpusSample
from w2w.model import Command, Mission, COMMAND_TYPE_NAMES, command_type_name
from w2w.nl import Translator
from w2w.tokens import parse_tokens, scan_commands, tokenize_for_metrics

BLEU_SMOOTHING_EPS = 1e-9

# Per-sample translate+compile budget (ms) for interactive mission
# programming on desktop hardware; the grammar engine runs well under 1 ms.
LATENCY_BUDGET_MS = 70.5

# Bucket for unparseable predicted tokens beyond the reference alignment.
UNKNOWN_TYPE = "Unknown"


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(references: list[str], hypotheses: list[str]) -> float:
    """Corpus-level BLEU on metric-tokenized strings; in [0, 1]."""
    if not references:
        raise ValueError("empty corpus")
    if len(references) != len(hypotheses):
        raise ValueError("references and hypotheses must have equal length")
    matched = [0] * 4
    total = [0] * 4
    ref_len = 0
    hyp_len = 0
    for ref, hyp in zip(references, hypotheses):
        ref_tokens = tokenize_for_metrics(ref)
        hyp_tokens = tokenize_for_metrics(hyp)
        ref_len += len(ref_tokens)
        hyp_len += len(hyp_tokens)
        for n in range(1, 5):
            hyp_counts = _ngram_counts(hyp_tokens, n)
            ref_counts = _ngram_counts(ref_tokens, n)
            total[n - 1] += sum(hyp_counts.values())
            matched[n - 1] += sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
    if hyp_len == 0:
        return 0.0
    log_sum = 0.0
    for m, t in zip(matched, total):
        num = m if m > 0 else BLEU_SMOOTHING_EPS
        den = t if t > 0 else BLEU_SMOOTHING_EPS
        log_sum += 0.25 * math.log(num / den)
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return min(1.0, brevity * math.exp(log_sum))


def meteor(reference: str, hypothesis: str) -> float:
    """Exact-match METEOR for a single reference/hypothesis pair; in [0, 1].

    Alignment is greedy left-to-right over the hypothesis, preferring the
    reference position that continues the previous match (minimizing
    chunks), each reference token used at most once.
    """
    ref_tokens = tokenize_for_metrics(reference)
    hyp_tokens = tokenize_for_metrics(hypothesis)
    if not ref_tokens or not hyp_tokens:
        return 0.0
    used = [False] * len(ref_tokens)
    pairs: list[tuple[int, int]] = []
    prev_ref = None
    for i, tok in enumerate(hyp_tokens):
        j = None
        if (
            prev_ref is not None
            and prev_ref + 1 < len(ref_tokens)
            and not used[prev_ref + 1]
            and ref_tokens[prev_ref + 1] == tok
        ):
            j = prev_ref + 1
        else:
            for k, rt in enumerate(ref_tokens):
                if not used[k] and rt == tok:
                    j = k
                    break
        if j is None:
            prev_ref = None
            continue
        used[j] = True
        pairs.append((i, j))
        prev_ref = j
    m = len(pairs)
    if m == 0:
        return 0.0
    chunks = 1
    for (i1, j1), (i2, j2) in zip(pairs, pairs[1:]):
        if i2 != i1 + 1 or j2 != j1 + 1:
            chunks += 1
    precision = m / len(hyp_tokens)
    recall = m / len(ref_tokens)
    f_mean = 10.0 * precision * recall / (recall + 9.0 * precision)
    penalty = 0.5 * (chunks / m) ** 3
    return f_mean * (1.0 - penalty)


@dataclass
class ErrorCounts:
    missed: int = 0
    erroneous: int = 0
    hallucinated: int = 0

    def to_dict(self) -> dict:
        return {"missed": self.missed, "erroneous": self.erroneous, "hallucinated": self.hallucinated}

    def add(self, other: "ErrorCounts") -> None:
        self.missed += other.missed
        self.erroneous += other.erroneous
        self.hallucinated += other.hallucinated

    @property
    def total(self) -> int:
        return self.missed + self.erroneous + self.hallucinated


def _lenient_commands(predicted: str) -> list[Command | None]:
    """Split predicted text into per-token commands, None where unparseable."""
    out: list[Command | None] = []
    pos = 0
    while pos < len(predicted):
        ch = predicted[pos]
        if ch != "[":
            pos += 1
            continue
        close = predicted.find("]", pos)
        chunk = predicted[pos : close + 1] if close != -1 else predicted[pos:]
        try:
            cmds = scan_commands(chunk)
            out.extend(cmds if cmds else [None])
        except ValueError:
            out.append(None)
        pos = (close + 1) if close != -1 else len(predicted)
    return out


def _align(ref: list[Command], pred: list[Command | None]) -> list[tuple[int, int]]:
    """LCS over command types, preferring parameter-equal pairs on ties.

    Returns aligned (ref_index, pred_index) pairs in order. Maximizes the
    number of type matches first, exact command matches second, so a single
    inserted/edited/dropped command perturbs exactly one alignment slot.
    """
    n, m = len(ref), len(pred)
    # score[i][j] = best (type_matches, exact_matches) for ref[i:], pred[j:]
    score = [[(0, 0)] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            best = max(score[i + 1][j], score[i][j + 1])
            pc = pred[j]
            if pc is not None and command_type_name(ref[i]) == command_type_name(pc):
                t, e = score[i + 1][j + 1]
                cand = (t + 1, e + (1 if ref[i] == pc else 0))
                best = max(best, cand)
            score[i][j] = best
    pairs = []
    i = j = 0
    while i < n and j < m:
        pc = pred[j]
        if pc is not None and command_type_name(ref[i]) == command_type_name(pc):
            t, e = score[i + 1][j + 1]
            if (t + 1, e + (1 if ref[i] == pc else 0)) == score[i][j]:
                pairs.append((i, j))
                i += 1
                j += 1
                continue
        if score[i + 1][j] >= score[i][j + 1]:
            i += 1
        else:
            j += 1
    return pairs


def classify_token_errors(reference: Mission, predicted: str) -> dict[str, ErrorCounts]:
    """Per-command-type missed/erroneous/hallucinated counts.

    The prediction may be malformed: unparseable predicted tokens count as
    erroneous at their position, or hallucinated (under "Unknown") when
    they fall beyond the reference alignment.
    """
    ref_cmds = list(reference.commands)
    pred_cmds = _lenient_commands(predicted)
    counts: dict[str, ErrorCounts] = {name: ErrorCounts() for name in COMMAND_TYPE_NAMES}

    pairs = _align(ref_cmds, pred_cmds)
    consumed_ref = {i for i, _ in pairs}
    matched_pred = {j for _, j in pairs}

    for i, j in pairs:
        if ref_cmds[i] != pred_cmds[j]:
            counts[command_type_name(ref_cmds[i])].erroneous += 1
    # Unparseable predictions consume the reference command at their own
    # position (erroneous) when that slot is still open; otherwise they are
    # extraneous garbage.
    for j, cmd in enumerate(pred_cmds):
        if j in matched_pred or cmd is not None:
            continue
        if j < len(ref_cmds) and j not in consumed_ref:
            counts[command_type_name(ref_cmds[j])].erroneous += 1
            consumed_ref.add(j)
        else:
            counts.setdefault(UNKNOWN_TYPE, ErrorCounts()).hallucinated += 1
    for i, cmd in enumerate(ref_cmds):
        if i not in consumed_ref:
            counts[command_type_name(cmd)].missed += 1
    for j, cmd in enumerate(pred_cmds):
        if j not in matched_pred and cmd is not None:
            counts[command_type_name(cmd)].hallucinated += 1
    return counts


@dataclass
class EvalReport:
    bleu: float
    meteor: float
    exact_match_rate: float
    per_command_errors: dict[str, ErrorCounts]
    mean_latency_ms: float
    sample_count: int
    failure_count: int = 0

    def to_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "meteor": self.meteor,
            "exactMatchRate": self.exact_match_rate,
            "perCommandErrors": {k: v.to_dict() for k, v in self.per_command_errors.items()},
            "meanLatency": self.mean_latency_ms,
            "sampleCount": self.sample_count,
            "failureCount": self.failure_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        lines = [
            f"samples          {self.sample_count}",
            f"bleu             {self.bleu:.4f}",
            f"meteor           {self.meteor:.4f}",
            f"exact match      {self.exact_match_rate:.4f}",
            f"mean latency     {self.mean_latency_ms:.3f} ms",
            f"failures         {self.failure_count}",
            "",
            f"{'command':<10} {'missed':>8} {'erroneous':>10} {'hallucinated':>13}",
        ]
        for name, c in self.per_command_errors.items():
            lines.append(f"{name:<10} {c.missed:>8} {c.erroneous:>10} {c.hallucinated:>13}")
        return "\n".join(lines) + "\n"


def run_eval(
    translator: Translator,
    corpus: list[CorpusSample],
    compile_predictions: bool = True,
) -> EvalReport:
    """Run a translator over the corpus and score it.

    Latency is wall-clock per sample for translate plus compile of the
    prediction (compile skipped when the prediction does not parse).
    Translator exceptions never abort the run: the sample scores as an
    empty prediction and bumps the failure count.
    """
    if not corpus:
        raise ValueError("empty corpus")
    references = [s.reference for s in corpus]
    predictions: list[str] = []
    failures = 0
    elapsed = 0.0
    for sample in corpus:
        t0 = time.perf_counter()
        try:
            predicted = translator.translate(sample.utterance)
        except Exception:
            predicted = ""
            failures += 1
        if compile_predictions:
            try:
                compile_mission(parse_tokens(predicted))
            except (ValueError, CompileError):
                pass
        elapsed += time.perf_counter() - t0
        predictions.append(predicted)

    exact = sum(1 for r, p in zip(references, predictions) if r == p)
    totals: dict[str, ErrorCounts] = {name: ErrorCounts() for name in COMMAND_TYPE_NAMES}
    meteor_sum = 0.0
    for sample, predicted in zip(corpus, predictions):
        meteor_sum += meteor(sample.reference, predicted)
        for name, c in classify_token_errors(parse_tokens(sample.reference), predicted).items():
            totals.setdefault(name, ErrorCounts()).add(c)
    return EvalReport(
        bleu=bleu(references, predictions),
        meteor=meteor_sum / len(corpus),
        exact_match_rate=exact / len(corpus),
        per_command_errors=totals,
        mean_latency_ms=1000.0 * elapsed / len(corpus),
        sample_count=len(corpus),
        failure_count=failures,
    )
