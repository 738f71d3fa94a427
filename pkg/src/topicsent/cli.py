"""Batch command-line front end.

Subcommands: score, baseline, consolidate, dedup, stats. Inputs and outputs
are explicit paths or ``-`` for the standard streams. Exit codes: 0 success,
1 input/validation error, 2 internal error. JSON output carries full-precision
values; TABLE output rounds to 3 decimals, half away from zero.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from decimal import ROUND_HALF_UP, Decimal
from typing import IO

from . import baselines, ingestion
from .annotation import consolidate
from .errors import ScoringError
from .evaluate import SUBTASKS, Mode, ScoreReport, SubtaskSpec, evaluate
from .model import Prevalence, Scale


def round_display(x: float, digits: int = 3) -> float:
    """Rounds half away from zero, the convention the score tables use."""
    q = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


@contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as f:
            yield f


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as f:
            yield f


def _report_payload(report: ScoreReport) -> dict:
    payload = {
        "subtask": report.subtask.id,
        "primary_metric": report.subtask.primary_metric,
        "higher_is_better": report.subtask.higher_is_better,
        "metrics": report.metrics,
        "metrics_display": {k: round_display(v) for k, v in report.metrics.items()},
        "per_topic": report.per_topic,
        "n_topics": report.n_topics,
        "warnings": report.warnings,
    }
    if report.pooled is not None:
        payload["pooled"] = report.pooled
        payload["pooled_display"] = {k: round_display(v) for k, v in report.pooled.items()}
    return payload


def _emit_report(report: ScoreReport, fmt: str, out: IO[str]) -> None:
    payload = _report_payload(report)
    if fmt == "json":
        json.dump(payload, out, sort_keys=True, indent=2)
        out.write("\n")
    elif fmt == "tsv":
        for name in sorted(report.metrics):
            out.write(f"{name}\t{report.metrics[name]!r}\n")
        if report.pooled is not None:
            for name in sorted(report.pooled):
                out.write(f"pooled_{name}\t{report.pooled[name]!r}\n")
        for topic in sorted(report.per_topic):
            for name in sorted(report.per_topic[topic]):
                out.write(f"{topic}\t{name}\t{report.per_topic[topic][name]!r}\n")
    else:  # table
        out.write(f"subtask {report.subtask.id}  (primary: {report.subtask.primary_metric})\n")
        for name in sorted(report.metrics):
            out.write(f"  {name:<10} {round_display(report.metrics[name]):.3f}\n")
        if report.pooled is not None:
            out.write("  pooled:\n")
            for name in sorted(report.pooled):
                out.write(f"    {name:<10} {round_display(report.pooled[name]):.3f}\n")
        if report.n_topics:
            out.write(f"  topics: {report.n_topics}\n")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)


def _load_predictions(spec: SubtaskSpec, path: str):
    with _open_in(path) as f:
        if spec.mode is Mode.CLASSIFICATION:
            return {"pred_labels": ingestion.parse_dataset(f, spec)}
        return {"pred_prevalences": ingestion.parse_prevalence_file(f, spec.scale)}


def cmd_score(args) -> int:
    spec = SUBTASKS[args.subtask]
    with _open_in(args.gold) as f:
        gold = ingestion.parse_dataset(f, spec)
    preds = _load_predictions(spec, args.pred)
    report = evaluate(spec, gold, pooled=args.pooled, **preds)
    with _open_out(args.output) as out:
        _emit_report(report, args.format, out)
    return 0


def _parse_prevalence_arg(scale: Scale, raw: str) -> Prevalence:
    parts = [float(v) for v in raw.split(",")]
    return Prevalence(scale, tuple(parts))


def _baseline_predictions(spec: SubtaskSpec, gold, args):
    kind, _, arg = args.kind.partition(":")
    if kind == "constant":
        c = spec.scale.parse_label(arg)
        if spec.mode is Mode.CLASSIFICATION:
            return {"pred_labels": baselines.constant_classifier(gold, c)}
        topics = sorted({it.topic for it in gold.items})
        p = baselines.point_mass(spec.scale, c)
        return {"pred_prevalences": baselines.constant_quantifier(topics, p)}
    if kind == "prevalence":
        if spec.mode is not Mode.QUANTIFICATION:
            raise ScoringError("prevalence baselines apply to subtasks D and E only")
        p = _parse_prevalence_arg(spec.scale, arg)
        topics = sorted({it.topic for it in gold.items})
        return {"pred_prevalences": baselines.constant_quantifier(topics, p)}
    if kind == "ml":
        if spec.mode is not Mode.QUANTIFICATION:
            raise ScoringError("the ML baseline applies to subtasks D and E only")
        if not args.train:
            raise ScoringError("the ML baseline requires --train")
        averaging = baselines.Averaging(arg or "micro")
        with _open_in(args.train) as f:
            train = ingestion.parse_dataset(f, spec)
        p = baselines.ml_quantifier(train, averaging)
        topics = sorted({it.topic for it in gold.items})
        return {"pred_prevalences": baselines.constant_quantifier(topics, p)}
    raise ScoringError(f"unknown baseline kind {args.kind!r}")


def cmd_baseline(args) -> int:
    spec = SUBTASKS[args.subtask]
    with _open_in(args.gold) as f:
        gold = ingestion.parse_dataset(f, spec)
    preds = _baseline_predictions(spec, gold, args)
    report = evaluate(spec, gold, pooled=args.pooled, **preds)
    with _open_out(args.output) as out:
        _emit_report(report, args.format, out)
    return 0


def cmd_consolidate(args) -> int:
    with _open_in(args.input) as f:
        annotations = ingestion.parse_annotations(f)
    with _open_out(args.output) as out:
        for a in annotations:
            topic = a.topic if a.topic is not None else ingestion.NO_TOPIC
            out.write(f"{a.item_id}\t{topic}\t{consolidate(a)}\n")
    return 0


def cmd_dedup(args) -> int:
    with _open_in(args.input) as f:
        records = ingestion.parse_raw_records(f)
    kept, removed = ingestion.dedup(records, threshold=args.threshold)
    with _open_out(args.output) as out:
        ingestion.serialize_raw_records(kept, out)
    if args.removed:
        with _open_out(args.removed) as out:
            for rec, hit in removed:
                out.write(f"{rec.id}\t{hit.id}\n")
    print(f"kept {len(kept)}, removed {len(removed)}", file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    spec = SUBTASKS[args.subtask]
    with _open_in(args.input) as f:
        d = ingestion.parse_dataset(f, spec)
    if args.min_size:
        d = ingestion.topic_filter(d, args.min_size)
    s = ingestion.stats(d)
    payload = {
        "per_class": {str(c): n for c, n in s.per_class.items()},
        "per_topic": s.per_topic,
        "n_topics": s.n_topics,
        "total": s.total,
    }
    with _open_out(args.output) as out:
        if args.format == "json":
            json.dump(payload, out, sort_keys=True, indent=2)
            out.write("\n")
        elif args.format == "tsv":
            for c, n in s.per_class.items():
                out.write(f"class\t{c}\t{n}\n")
            for t, n in s.per_topic.items():
                out.write(f"topic\t{t}\t{n}\n")
            out.write(f"total\t\t{s.total}\n")
        else:
            cols = "\t".join(str(c) for c in s.per_class)
            vals = "\t".join(str(n) for n in s.per_class.values())
            out.write(f"classes:\t{cols}\ncounts:\t{vals}\n")
            out.write(f"topics: {s.n_topics}\ntotal: {s.total}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicsent",
        description="Scoring toolkit for topic-based sentiment classification "
        "and quantification (subtasks A-E).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_subtask=True):
        if needs_subtask:
            p.add_argument("--subtask", required=True, choices=sorted(SUBTASKS))
        p.add_argument("--format", choices=["json", "tsv", "table"], default="json")
        p.add_argument("--output", default="-", help="output path or - for stdout")

    p = sub.add_parser("score", help="score a prediction file against gold")
    add_common(p)
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--pooled", action="store_true",
                   help="additionally report whole-set (non-macroaveraged) scores")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("baseline", help="score a trivial baseline against gold")
    add_common(p)
    p.add_argument("--gold", required=True)
    p.add_argument("--kind", required=True,
                   help="constant:<label> | prevalence:<f1,f2,...> | ml:micro | ml:macro")
    p.add_argument("--train", help="training file for the ML baseline")
    p.add_argument("--pooled", action="store_true")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("consolidate", help="consolidate crowd annotations into gold labels")
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_consolidate)

    p = sub.add_parser("dedup", help="drop near-duplicate records by bag-of-words cosine")
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.add_argument("--removed", help="optional path for removed-id\\tkept-id pairs")
    p.add_argument("--threshold", type=float, default=0.6)
    p.set_defaults(func=cmd_dedup)

    p = sub.add_parser("stats", help="per-class and per-topic count summary")
    add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--min-size", type=int, default=0, dest="min_size",
                   help="drop topics with fewer items before counting")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScoringError as exc:
        diag = {"error": exc.code, "message": str(exc)}
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": "IO_ERROR", "message": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - internal failure path
        print(json.dumps({"error": "INTERNAL", "message": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
