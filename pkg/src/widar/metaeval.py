"""Kendall's tau meta-evaluation of metric scores against human judgments."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from statistics import fmean
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import AllTied, LengthMismatch, MissingJudgment
from .metric import MetricConfig, idss, rouge_l_from_hits, rouge_n_sl, widar_multi
from .records import DIMENSIONS, EvalRecord, JudgmentRecord
from .rouge import rouge_l_flat, rouge_n, union_lcs_hits
from .weighting import combine_weights, coverage_weights, redundancy_weights

# rows per block when counting pairs; bounds memory at roughly _BLOCK * n bytes
_BLOCK = 512


def pair_counts(x: Sequence[float], y: Sequence[float]) -> tuple[int, int, int, int]:
    """Concordant, discordant, x-tied and y-tied pair counts over all unordered pairs.

    A pair tied in both sequences is counted in both tie totals.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise LengthMismatch(f"sequences of length {xa.size} and {ya.size}")
    if np.isnan(xa).any() or np.isnan(ya).any():
        raise ValueError("NaN in input")
    n = xa.size
    conc = disc = tx = ty = 0
    for start in range(0, n, _BLOCK):
        stop = min(start + _BLOCK, n)
        sx = np.sign(xa[start:stop, None] - xa[None, :]).astype(np.int8)
        sy = np.sign(ya[start:stop, None] - ya[None, :]).astype(np.int8)
        # keep j > i only
        upper = np.arange(n)[None, :] > np.arange(start, stop)[:, None]
        prod = (sx * sy)[upper]
        conc += int(np.count_nonzero(prod > 0))
        disc += int(np.count_nonzero(prod < 0))
        tx += int(np.count_nonzero(sx[upper] == 0))
        ty += int(np.count_nonzero(sy[upper] == 0))
    return conc, disc, tx, ty


def kendall_tau(x: Sequence[float], y: Sequence[float], variant: str = "untied") -> float:
    """Kendall rank correlation of two equally long sequences.

    ``variant="untied"`` is (C - D) / (C + D) with tied pairs left out of
    both counts. ``variant="b"`` is tau-b, which matches
    ``scipy.stats.kendalltau``.
    """
    if len(x) != len(y):
        raise LengthMismatch(f"sequences of length {len(x)} and {len(y)}")
    if len(x) < 2:
        raise ValueError("need at least two observations")
    conc, disc, tx, ty = pair_counts(x, y)
    if conc + disc == 0:
        raise AllTied("every pair is tied in at least one sequence")
    if variant == "untied":
        return (conc - disc) / (conc + disc)
    if variant == "b":
        n0 = len(x) * (len(x) - 1) // 2
        return (conc - disc) / math.sqrt((n0 - tx) * (n0 - ty))
    raise ValueError(f"unknown tau variant {variant!r}")


@dataclass(frozen=True)
class CorrelationReport:
    coherence: float
    consistency: float
    fluency: float
    relevance: float
    n: int = 0

    @property
    def average(self) -> float:
        return fmean(self.taus())

    def taus(self) -> tuple[float, float, float, float]:
        return tuple(getattr(self, d) for d in DIMENSIONS)

    def as_dict(self) -> dict:
        out = {d: getattr(self, d) for d in DIMENSIONS}
        out["average"] = self.average
        out["n"] = self.n
        return out


def _index_judgments(judgments) -> dict[str, JudgmentRecord]:
    if isinstance(judgments, Mapping):
        return dict(judgments)
    out = {}
    for j in judgments:
        if j.record_id in out:
            raise ValueError(f"duplicate judgment for {j.record_id}")
        out[j.record_id] = j
    return out


def correlate(
    scores: Mapping[str, float],
    judgments: Iterable[JudgmentRecord] | Mapping[str, JudgmentRecord],
    variant: str = "untied",
    groups: Optional[Mapping[str, str]] = None,
) -> CorrelationReport:
    """Correlate per-record metric scores with every judgment dimension.

    Records are pooled (summary-level). With ``groups`` (record id to
    system name) scores and judgments are first averaged per system and the
    correlation is taken across systems instead.
    """
    index = _index_judgments(judgments)
    missing = [rid for rid in scores if rid not in index]
    if missing:
        raise MissingJudgment(missing)
    ids = sorted(scores)
    if len(ids) < 2:
        raise ValueError("need at least two scored records")
    metric = [scores[i] for i in ids]
    human = {d: [index[i].get(d) for i in ids] for d in DIMENSIONS}
    if groups is not None:
        keys = [groups[i] for i in ids]
        systems = sorted(set(keys))
        metric = _group_mean(metric, keys, systems)
        human = {d: _group_mean(v, keys, systems) for d, v in human.items()}
    taus = {d: kendall_tau(metric, human[d], variant) for d in DIMENSIONS}
    return CorrelationReport(**taus, n=len(metric))


def _group_mean(values, keys, order):
    buckets: dict[str, list[float]] = {k: [] for k in order}
    for v, k in zip(values, keys):
        buckets[k].append(v)
    return [fmean(buckets[k]) for k in order]


def judgment_intercorrelation(
    judgments: Iterable[JudgmentRecord], variant: str = "untied"
) -> np.ndarray:
    """4x4 matrix of Kendall's tau between the human judgment dimensions."""
    rows = list(_index_judgments(judgments).values())
    if len(rows) < 2:
        raise ValueError("need at least two judgment records")
    cols = {d: [r.get(d) for r in rows] for d in DIMENSIONS}
    k = len(DIMENSIONS)
    out = np.eye(k)
    for a in range(k):
        for b in range(a + 1, k):
            out[a, b] = out[b, a] = kendall_tau(cols[DIMENSIONS[a]], cols[DIMENSIONS[b]], variant)
    return out


def _mean_or_max(values: list[float], how: str) -> float:
    return fmean(values) if how == "mean" else max(values)


def ablation_scores(record: EvalRecord, cfg: MetricConfig) -> dict[str, float]:
    """Every ablation variant's score for one record, sharing the expensive parts."""
    K = cfg.variant
    S, D = record.summary, record.document
    sim = idss(S, D).fscore
    x = cfg.component
    agg = cfg.multi_ref_agg
    full_name = f"WIDAR_{K}"
    names = [full_name, f"ROUGE-{K}_W", "-W_red", "-W_cov", f"ROUGE-{K}_SL"]
    per_ref: dict[str, list[float]] = {k: [] for k in names}
    plain: list[float] = []
    for R in record.references:
        cov = coverage_weights(R, D, cfg.theta1)
        red = redundancy_weights(R, cfg.theta2)
        if K == "L":
            hits = union_lcs_hits(R, S)

            def sl(w):
                return rouge_l_from_hits(hits, S, R, w, cfg.literal_eq56)

            plain.append(rouge_l_flat(S, R).get(x))
        else:
            n = int(K)

            def sl(w):
                return rouge_n_sl(S, R, n, w)

            plain.append(rouge_n(S, R, n).get(x))
        both = combine_weights(cov, red, "both")
        rw = sl(both)
        lam = {"fixed": cfg.lam, "max_cov": max(cov), "mean_cov": fmean(cov)}[cfg.lambda_strategy]
        per_ref[full_name].append((1 - lam) * sim + lam * rw.get(x))
        per_ref[f"ROUGE-{K}_W"].append(rw.get(x))
        per_ref["-W_red"].append(sl(combine_weights(cov, red, "coverage")).get(x))
        per_ref["-W_cov"].append(sl(combine_weights(cov, red, "redundancy")).get(x))
        per_ref[f"ROUGE-{K}_SL"].append(sl(None).get(x))
    out = {k: _mean_or_max(v, agg) for k, v in per_ref.items()}
    out[f"ROUGE-{K}"] = _mean_or_max(plain, agg)
    out["IDSS"] = sim
    return out


def run_ablation(
    corpus: Sequence[EvalRecord],
    cfg: MetricConfig = MetricConfig(),
    variant: str = "untied",
    map_fn: Callable = map,
) -> dict[str, CorrelationReport]:
    """Correlation of the full metric and each ablated variant with the judgments.

    Rows: full WIDAR, ROUGE_W alone (lambda=1), coverage-only weights,
    redundancy-only weights, unweighted sentence-level ROUGE, plain ROUGE
    and IDSS alone. The weighting ablations run at lambda=1.
    """
    judged = [r for r in corpus if r.judgments is not None]
    if len(judged) < 2:
        raise ValueError("ablation needs at least two judged records")
    rows = list(map_fn(ablation_scores, judged, [cfg] * len(judged)))
    judgments = [r.judgments for r in judged]
    out = {}
    for name in rows[0]:
        scores = {r.record_id: row[name] for r, row in zip(judged, rows)}
        out[name] = correlate(scores, judgments, variant)
    return out


def score_corpus(
    corpus: Sequence[EvalRecord], cfg: MetricConfig = MetricConfig(), map_fn: Callable = map
) -> dict[str, float]:
    """Record id to WIDAR score (component ``cfg.component``)."""
    results = map_fn(widar_multi, corpus, [cfg] * len(corpus))
    return {r.record_id: res.get(cfg.component) for r, res in zip(corpus, results)}


def rank_table(reports: Mapping[str, CorrelationReport]) -> list[tuple[str, dict, dict]]:
    """Rows sorted by average tau (descending) with per-column competition ranks."""
    cols = list(DIMENSIONS) + ["average"]
    values = {name: rep.as_dict() for name, rep in reports.items()}
    ranks: dict[str, dict[str, int]] = {name: {} for name in reports}
    for col in cols:
        for name in reports:
            v = values[name][col]
            ranks[name][col] = 1 + sum(1 for other in reports if values[other][col] > v)
    order = sorted(reports, key=lambda k: (-values[k]["average"], k))
    return [(name, values[name], ranks[name]) for name in order]


def format_table(reports: Mapping[str, CorrelationReport], with_ranks: bool = True) -> str:
    cols = list(DIMENSIONS) + ["average"]
    rows = rank_table(reports)
    width = max([len("metric")] + [len(name) for name, _, _ in rows])
    cell = 14 if with_ranks else 9
    head = "metric".ljust(width) + "".join(c.rjust(cell + 2) for c in cols)
    lines = [head, "-" * len(head)]
    for name, vals, rk in rows:
        parts = []
        for c in cols:
            txt = f"{vals[c]:.6f}"
            if with_ranks:
                txt += f" ({rk[c]})"
            parts.append(txt.rjust(cell + 2))
        lines.append(name.ljust(width) + "".join(parts))
    return "\n".join(lines)


def diff_report(
    report: CorrelationReport, expected: Sequence[float], tol: float
) -> tuple[bool, str]:
    """Compare a report's four taus with expected values; return (ok, text)."""
    lines = [f"{'dimension':<12}{'observed':>10}{'expected':>10}{'diff':>10}  status"]
    ok = True
    for dim, obs, exp in zip(DIMENSIONS, report.taus(), expected):
        d = obs - exp
        good = abs(d) <= tol
        ok &= good
        lines.append(f"{dim:<12}{obs:>10.6f}{exp:>10.6f}{d:>+10.6f}  {'ok' if good else 'OUT'}")
    return ok, "\n".join(lines)


def with_lambda(cfg: MetricConfig, lam: float) -> MetricConfig:
    return replace(cfg, lam=lam, lambda_strategy="fixed")
