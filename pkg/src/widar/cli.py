"""Command-line interface: ``widar {score,weights,correlate,ablate,intercorr,bench}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from . import corpus as cp
from .bench import run_bench, synthetic_corpus
from .errors import WidarError
from .metaeval import (
    correlate,
    format_table,
    judgment_intercorrelation,
    rank_table,
    run_ablation,
)
from .metric import MetricConfig
from .records import DIMENSIONS

log = logging.getLogger("widar")


def _add_metric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--lambda-strategy", choices=["fixed", "max-cov", "mean-cov"], default="fixed")
    p.add_argument("--theta1", type=float, default=0.1)
    p.add_argument("--theta2", type=float, default=0.3)
    p.add_argument("--variant", choices=["1", "2", "L"], default="L")
    p.add_argument("--component", choices=["r", "p", "f"], default="f")
    p.add_argument("--agg", choices=["mean", "max"], default="mean")
    p.add_argument("--literal-eq56", action="store_true",
                   help="divide sentence-level ROUGE-L by sentence counts")


def _add_corpus_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("corpus", type=Path)
    p.add_argument("--format", choices=cp.FORMATS, default="jsonl")


def _config(args) -> MetricConfig:
    return MetricConfig(
        variant=args.variant,
        component=args.component,
        lam=args.lam,
        lambda_strategy=args.lambda_strategy.replace("-", "_"),
        theta1=args.theta1,
        theta2=args.theta2,
        multi_ref_agg=args.agg,
        literal_eq56=args.literal_eq56,
    )


def _write(path: Optional[Path], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _report_failures(failed, strict: bool) -> int:
    for rid, err in failed:
        log.warning("record %s failed: %s", rid, err)
    if failed:
        log.warning("%d record(s) failed", len(failed))
    return 1 if failed and strict else 0


def cmd_score(args) -> int:
    cfg = _config(args)
    records = cp.load_corpus(args.corpus, args.format)
    start = time.perf_counter()
    rows, failed = cp.score_records(records, cfg, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    header = cp.score_header(
        cfg,
        records=len(records),
        scored=len(rows),
        failed=len(failed),
        elapsed_s=round(elapsed, 6),
        created=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
    text = json.dumps(header, sort_keys=True) + "\n" + cp.format_score_jsonl(rows)
    _write(args.out, text)
    if args.csv:
        args.csv.write_text(cp.format_score_csv(rows), encoding="utf-8")
    return _report_failures(failed, args.strict)


def cmd_weights(args) -> int:
    cfg = _config(args)
    records = cp.load_corpus(args.corpus, args.format)
    rows, failed = cp.weight_rows(records, cfg, jobs=args.jobs)
    _write(args.out, "".join(json.dumps(r) + "\n" for r in rows))
    return _report_failures(failed, args.strict)


def _load_judgments(args):
    records = cp.load_corpus(args.judgments, args.format)
    judg = [r.judgments for r in records if r.judgments is not None]
    if not judg:
        raise WidarError(f"{args.judgments}: no record carries judgments")
    return judg, {r.record_id: r.system for r in records if r.system is not None}


def _emit_reports(reports, args) -> None:
    print(format_table(reports, with_ranks=True))
    if args.out:
        payload = [
            {"metric": name, **vals, "ranks": ranks}
            for name, vals, ranks in rank_table(reports)
        ]
        args.out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def cmd_correlate(args) -> int:
    judgments, systems = _load_judgments(args)
    groups = systems if args.system_level else None
    reports = {}
    for path in args.scores:
        for name, scores in cp.read_score_columns(path, args.component).items():
            key = name if name not in reports else f"{name} [{path.name}]"
            reports[key] = correlate(scores, judgments, args.tau, groups)
    _emit_reports(reports, args)
    return 0


def cmd_ablate(args) -> int:
    cfg = _config(args)
    records = cp.load_corpus(args.corpus, args.format)
    reports = run_ablation(records, cfg, args.tau)
    _emit_reports(reports, args)
    return 0


def cmd_intercorr(args) -> int:
    records = cp.load_corpus(args.corpus, args.format)
    mat = judgment_intercorrelation([r.judgments for r in records if r.judgments], args.tau)
    width = max(len(d) for d in DIMENSIONS) + 2
    print("".ljust(width) + "".join(d.rjust(width) for d in DIMENSIONS))
    for d, row in zip(DIMENSIONS, mat):
        print(d.ljust(width) + "".join(f"{v:.6f}".rjust(width) for v in row))
    return 0


def cmd_bench(args) -> int:
    cfg = _config(args)
    if args.records < 1:
        raise WidarError("--records must be at least 1")
    if args.corpus is None:
        records = synthetic_corpus(args.records, seed=args.seed)
    else:
        records = cp.load_corpus(args.corpus, args.format)
    report = run_bench(records, cfg, args.records)
    print(
        f"{report['metric']}: {report['records']} records in {report['total_s']:.6f} s "
        f"({report['per_record_s']:.6f} s/record)"
    )
    if args.out:
        args.out.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="widar", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score every record of a corpus")
    _add_corpus_flags(p)
    _add_metric_flags(p)
    p.add_argument("--out", type=Path)
    p.add_argument("--csv", type=Path, help="also write rows as CSV")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="exit nonzero if any record fails")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("weights", help="dump reference sentence weights")
    _add_corpus_flags(p)
    _add_metric_flags(p)
    p.add_argument("--out", type=Path)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("correlate", help="Kendall's tau of score files against judgments")
    p.add_argument("scores", type=Path, nargs="+")
    p.add_argument("--judgments", type=Path, required=True, help="corpus file with judgments")
    p.add_argument("--format", choices=cp.FORMATS, default="jsonl")
    p.add_argument("--component", choices=["r", "p", "f"], default="f")
    p.add_argument("--tau", choices=["untied", "b"], default="untied")
    p.add_argument("--system-level", action="store_true")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("ablate", help="correlations of each ablated variant")
    _add_corpus_flags(p)
    _add_metric_flags(p)
    p.add_argument("--tau", choices=["untied", "b"], default="untied")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("intercorr", help="Kendall's tau between judgment dimensions")
    _add_corpus_flags(p)
    p.add_argument("--tau", choices=["untied", "b"], default="untied")
    p.set_defaults(func=cmd_intercorr)

    p = sub.add_parser("bench", help="time end-to-end scoring")
    p.add_argument("corpus", type=Path, nargs="?", help="defaults to synthetic records")
    p.add_argument("--format", choices=cp.FORMATS, default="jsonl")
    _add_metric_flags(p)
    p.add_argument("--records", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
