"""Timing benchmark on synthetic news-sized records."""

from __future__ import annotations

import os
import platform
import time
from typing import Optional, Sequence

import numpy as np

from .metric import MetricConfig, widar_multi
from .records import EvalRecord


def _perturb(rng: np.random.Generator, sent: list[str], vocab: np.ndarray, rate: float) -> tuple[str, ...]:
    out = []
    for tok in sent:
        u = rng.random()
        if u < rate / 2:
            continue
        out.append(str(rng.choice(vocab)) if u < rate else tok)
    return tuple(out or sent[:1])


def synthetic_corpus(
    n: int,
    doc_sents: int = 30,
    summary_sents: int = 3,
    ref_sents: int = 3,
    sent_len: tuple[int, int] = (12, 30),
    vocab_size: int = 20000,
    seed: int = 0,
) -> list[EvalRecord]:
    """Records shaped like CNN/DailyMail: long documents, short summaries.

    Tokens are drawn from a Zipf-like vocabulary; summary and reference
    sentences are perturbed copies of document sentences.
    """
    rng = np.random.default_rng(seed)
    vocab = np.array([f"w{i}" for i in range(vocab_size)])
    probs = 1.0 / np.arange(1, vocab_size + 1)
    probs /= probs.sum()
    records = []
    for k in range(n):
        doc = []
        for _ in range(doc_sents):
            length = int(rng.integers(sent_len[0], sent_len[1] + 1))
            doc.append(list(rng.choice(vocab, size=length, p=probs)))
        picks_s = rng.choice(doc_sents, size=summary_sents, replace=False)
        picks_r = rng.choice(doc_sents, size=ref_sents, replace=False)
        summary = tuple(_perturb(rng, doc[i], vocab, 0.3) for i in picks_s)
        reference = tuple(_perturb(rng, doc[i], vocab, 0.4) for i in picks_r)
        records.append(
            EvalRecord(
                record_id=f"syn{k:05d}",
                document=tuple(tuple(s) for s in doc),
                references=(reference,),
                summary=summary,
            )
        )
    return records


def machine_info() -> dict:
    return {
        "python": platform.python_version(),
        "implementation": platform.python_implementation(),
        "machine": platform.machine(),
        "processor": platform.processor() or "unknown",
        "system": f"{platform.system()} {platform.release()}",
        "cpu_count": os.cpu_count(),
    }


def run_bench(
    records: Sequence[EvalRecord], cfg: Optional[MetricConfig] = None, n: int = 100
) -> dict:
    """Wall-clock time for serial end-to-end scoring of the first ``n`` records."""
    if n < 1:
        raise ValueError("benchmark needs at least one record")
    if not records:
        raise ValueError("benchmark corpus is empty")
    cfg = cfg or MetricConfig()
    batch = list(records[:n])
    start = time.perf_counter()
    for rec in batch:
        widar_multi(rec, cfg)
    total = time.perf_counter() - start
    return {
        "metric": cfg.metric_name,
        "records": len(batch),
        "total_s": total,
        "per_record_s": total / len(batch),
        "machine": machine_info(),
    }
