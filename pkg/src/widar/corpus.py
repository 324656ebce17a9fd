"""Corpus loading, score rows and their on-disk formats.

Native corpus format is UTF-8 JSONL, one record per line::

    {"id": "a1", "document": "...", "references": ["...", "..."],
     "summary": "...", "judgments": {"coherence": 4, ...}}

``document``, ``summary`` and each reference may be a raw string (split
with the naive sentence splitter), a list of sentence strings, or a list
of token lists. Judgment values may be numbers or lists of expert scores,
which are averaged.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from statistics import fmean
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

from .errors import DuplicateId, MissingField, MixedConfig, ParseError, WidarError
from .metric import MetricConfig, WidarResult, widar_multi
from .records import DIMENSIONS, EvalRecord, JudgmentRecord
from .text import TextUnit, as_unit
from .weighting import sentence_weights

log = logging.getLogger(__name__)

FORMATS = ("jsonl", "summeval")


def _unit(value: Any, field: str, line: int) -> TextUnit:
    if isinstance(value, str):
        return as_unit(value)
    if isinstance(value, list) and all(isinstance(v, (str, list)) for v in value):
        return as_unit(value)
    raise ParseError(f"field {field!r} must be a string or a list of sentences", line)


def _mean_score(value: Any, where: str, line: int) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, list) and value and all(isinstance(v, (int, float)) for v in value):
        return fmean(value)
    raise ParseError(f"{where}: expected a number or a non-empty list of numbers", line)


def _judgments(rid: str, raw: Any, line: int) -> JudgmentRecord:
    if not isinstance(raw, dict):
        raise ParseError("'judgments' must be an object", line)
    vals = {}
    for dim in DIMENSIONS:
        if dim not in raw:
            raise MissingField(f"judgments.{dim}", line)
        vals[dim] = _mean_score(raw[dim], f"judgments.{dim}", line)
    try:
        return JudgmentRecord(rid, **vals)
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


def _iter_json_lines(path: Path) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, text in enumerate(fh, 1):
            if not text.strip():
                continue
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON ({exc.msg})", lineno) from None
            if not isinstance(obj, dict):
                raise ParseError("expected a JSON object", lineno)
            yield lineno, obj


def parse_record(obj: dict, line: int = 0) -> EvalRecord:
    for name in ("id", "document", "references", "summary"):
        if name not in obj:
            raise MissingField(name, line)
    refs = obj["references"]
    if isinstance(refs, str):
        refs = [refs]
    if not isinstance(refs, list) or not refs:
        raise ParseError("'references' must be a non-empty list", line)
    rid = str(obj["id"])
    judg = obj.get("judgments")
    return EvalRecord(
        record_id=rid,
        document=_unit(obj["document"], "document", line),
        references=tuple(_unit(r, "references", line) for r in refs),
        summary=_unit(obj["summary"], "summary", line),
        judgments=None if judg is None else _judgments(rid, judg, line),
        system=obj.get("system"),
    )


def _load_jsonl(path: Path) -> list[EvalRecord]:
    out = []
    seen: set[str] = set()
    for lineno, obj in _iter_json_lines(path):
        rec = parse_record(obj, lineno)
        if rec.record_id in seen:
            raise DuplicateId(f"duplicate id {rec.record_id!r}", lineno)
        seen.add(rec.record_id)
        out.append(rec)
    return out


def _load_summeval(path: Path, documents: Optional[dict[str, str]] = None) -> list[EvalRecord]:
    """Adapt the SummEval annotation file.

    Two layouts are accepted: the repository's ``model_annotations`` JSONL
    (one line per system output, ``expert_annotations`` a list of per-expert
    dicts, source article in ``text``) and the flattened per-article layout
    with ``machine_summaries`` and ``human_summaries`` lists plus one list of
    averaged scores per dimension.
    """
    out = []
    for lineno, obj in _iter_json_lines(path):
        if "machine_summaries" in obj:
            out.extend(_summeval_flat(obj, lineno))
            continue
        for name in ("id", "decoded", "references"):
            if name not in obj:
                raise MissingField(name, lineno)
        text = obj.get("text")
        if text is None and documents is not None:
            text = documents.get(obj["id"])
        if text is None:
            raise MissingField(
                "text (attach source articles with SummEval's pair_data.py "
                "or pass a documents mapping)",
                lineno,
            )
        system = str(obj.get("model_id", "unknown"))
        judg = None
        experts = obj.get("expert_annotations")
        if experts:
            try:
                vals = {d: fmean(float(e[d]) for e in experts) for d in DIMENSIONS}
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed expert_annotations ({exc})", lineno) from None
            judg = {d: vals[d] for d in DIMENSIONS}
        out.append(
            parse_record(
                {
                    "id": f"{obj['id']}#{system}",
                    "document": text,
                    "references": obj["references"],
                    "summary": obj["decoded"],
                    "judgments": judg,
                    "system": system,
                },
                lineno,
            )
        )
    return out


def _summeval_flat(obj: dict, lineno: int) -> list[EvalRecord]:
    for name in ("id", "text", "human_summaries"):
        if name not in obj:
            raise MissingField(name, lineno)
    summaries = obj["machine_summaries"]
    recs = []
    for k, summ in enumerate(summaries):
        judg = None
        if all(d in obj for d in DIMENSIONS):
            judg = {d: obj[d][k] for d in DIMENSIONS}
        recs.append(
            parse_record(
                {
                    "id": f"{obj['id']}#{k:02d}",
                    "document": obj["text"],
                    "references": obj["human_summaries"],
                    "summary": summ,
                    "judgments": judg,
                },
                lineno,
            )
        )
    return recs


def load_corpus(path, format: str = "jsonl", documents: Optional[dict[str, str]] = None) -> list[EvalRecord]:
    """Read a corpus file; record ids must be unique."""
    path = Path(path)
    if format == "jsonl":
        records = _load_jsonl(path)
    elif format == "summeval":
        records = _load_summeval(path, documents)
    else:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    seen: set[str] = set()
    for rec in records:
        if rec.record_id in seen:
            raise DuplicateId(f"duplicate id {rec.record_id!r}")
        seen.add(rec.record_id)
    return records


def record_to_json(rec: EvalRecord) -> dict:
    obj: dict = {
        "id": rec.record_id,
        "document": [list(s) for s in rec.document],
        "references": [[list(s) for s in r] for r in rec.references],
        "summary": [list(s) for s in rec.summary],
    }
    if rec.judgments is not None:
        obj["judgments"] = {d: rec.judgments.get(d) for d in DIMENSIONS}
    if rec.system is not None:
        obj["system"] = rec.system
    return obj


def write_corpus(records: Iterable[EvalRecord], path) -> None:
    """Canonical JSONL writer; sentences are stored as token lists."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(record_to_json(rec), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


# -- score rows ---------------------------------------------------------------

SCORE_FIELDS = (
    "record_id", "metric", "r", "p", "f", "idss",
    "rouge_w_r", "rouge_w_p", "rouge_w_f", "lambda_used", "config",
)


@dataclass(frozen=True)
class ScoreRow:
    record_id: str
    metric: str
    r: float
    p: float
    f: float
    idss: float
    rouge_w_r: float
    rouge_w_p: float
    rouge_w_f: float
    lambda_used: float
    config: str

    @classmethod
    def from_result(cls, rid: str, res: WidarResult, cfg: MetricConfig) -> "ScoreRow":
        return cls(
            rid, cfg.metric_name,
            res.widar.recall, res.widar.precision, res.widar.fscore,
            res.idss.fscore,
            res.rouge_w.recall, res.rouge_w.precision, res.rouge_w.fscore,
            res.lambda_used, cfg.fingerprint(),
        )

    def values(self) -> list:
        return [getattr(self, k) for k in SCORE_FIELDS]


def dumps_fixed(obj: dict) -> str:
    """JSON object with every float rendered with six decimals."""
    parts = []
    for k, v in obj.items():
        if isinstance(v, float):
            val = f"{v:.6f}"
        else:
            val = json.dumps(v, ensure_ascii=False)
        parts.append(f"{json.dumps(k)}: {val}")
    return "{" + ", ".join(parts) + "}"


def _score_one(args):
    rec, cfg = args
    try:
        return rec.record_id, ScoreRow.from_result(rec.record_id, widar_multi(rec, cfg), cfg), None
    except WidarError as exc:
        return rec.record_id, None, f"{type(exc).__name__}: {exc}"


def _weights_one(args):
    rec, cfg = args
    try:
        rows = []
        for k, ref in enumerate(rec.references):
            sw = sentence_weights(ref, rec.document, cfg.theta1, cfg.theta2)
            rows.append({"record_id": rec.record_id, "reference": k, **sw.as_dict()})
        return rec.record_id, rows, None
    except WidarError as exc:
        return rec.record_id, None, f"{type(exc).__name__}: {exc}"


def _run(fn: Callable, records: Sequence[EvalRecord], cfg: MetricConfig, jobs: int):
    tasks = [(r, cfg) for r in records]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [fn(t) for t in tasks]
    results.sort(key=lambda t: t[0])
    ok = [(rid, val) for rid, val, err in results if err is None]
    failed = [(rid, err) for rid, val, err in results if err is not None]
    return ok, failed


def score_records(
    records: Sequence[EvalRecord], cfg: MetricConfig = MetricConfig(), jobs: int = 1
) -> tuple[list[ScoreRow], list[tuple[str, str]]]:
    """Score every record; returns rows sorted by record id and (id, error) failures."""
    ok, failed = _run(_score_one, records, cfg, jobs)
    return [row for _, row in ok], failed


def weight_rows(
    records: Sequence[EvalRecord], cfg: MetricConfig = MetricConfig(), jobs: int = 1
) -> tuple[list[dict], list[tuple[str, str]]]:
    ok, failed = _run(_weights_one, records, cfg, jobs)
    return [row for _, rows in ok for row in rows], failed


def score_header(cfg: MetricConfig, **meta) -> dict:
    return {"_meta": {"metric": cfg.metric_name, "config": cfg.fingerprint(),
                      "settings": asdict(cfg), **meta}}


def format_score_jsonl(rows: Iterable[ScoreRow]) -> str:
    return "".join(dumps_fixed(dict(zip(SCORE_FIELDS, row.values()))) + "\n" for row in rows)


def format_score_csv(rows: Iterable[ScoreRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(SCORE_FIELDS)
    for row in rows:
        w.writerow([f"{v:.6f}" if isinstance(v, float) else v for v in row.values()])
    return buf.getvalue()


def read_score_columns(path, component: str = "f") -> dict[str, dict[str, float]]:
    """Read a score file into ``{metric name: {record id: score}}``.

    Files written by ``widar score`` contribute one metric (their ``component``
    column); rows from different configurations are refused. Any other
    JSONL or CSV file with an ``id``/``record_id`` column contributes one
    metric per numeric column.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [(i, row) for i, row in enumerate(csv.DictReader(fh), 2)]
    else:
        rows = [(i, obj) for i, obj in _iter_json_lines(path) if "_meta" not in obj]
    if not rows:
        raise ParseError(f"{path}: no score rows")
    out: dict[str, dict[str, float]] = {}
    fingerprints: set[str] = set()
    for lineno, row in rows:
        rid = row.get("record_id", row.get("id"))
        if rid is None:
            raise MissingField("record_id", lineno)
        rid = str(rid)
        if "metric" in row and "config" in row:
            fingerprints.add(str(row["config"]))
            cols = {str(row["metric"]): row[component]}
        else:
            cols = {k: v for k, v in row.items() if k not in ("id", "record_id")}
        for name, val in cols.items():
            try:
                num = float(val)
            except (TypeError, ValueError):
                continue
            col = out.setdefault(name, {})
            if rid in col:
                raise DuplicateId(f"{path}: duplicate id {rid!r} for {name}", lineno)
            col[rid] = num
    if len(fingerprints) > 1:
        raise MixedConfig(f"{path}: rows from {len(fingerprints)} configurations: {sorted(fingerprints)}")
    return out
