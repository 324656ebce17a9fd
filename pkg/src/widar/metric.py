"""Sentence-level and weighted ROUGE, input-document similarity and WIDAR."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from statistics import fmean
from typing import Optional, Sequence, Union

from .errors import EmptyInput, LengthMismatch, NoReferences
from .records import EvalRecord
from .rouge import (
    RougeScore,
    clipped_overlap,
    f_measure,
    rouge_l_summary,
    token_counts,
    union_lcs_hits,
)
from .text import TextUnit, as_unit, ngrams, unit_ngrams
from .weighting import (
    DEFAULT_THETA1,
    DEFAULT_THETA2,
    SentenceWeights,
    combine_weights,
    coverage_weights,
    redundancy_weights,
)

VARIANTS = ("1", "2", "L")
LAMBDA_STRATEGIES = ("fixed", "max_cov", "mean_cov")
AGGREGATIONS = ("mean", "max")
WEIGHTINGS = ("both", "coverage", "redundancy", "uniform")

Weights = Union[SentenceWeights, Sequence[float], None]


@dataclass(frozen=True)
class MetricConfig:
    variant: str = "L"
    component: str = "f"
    lam: float = 0.5
    lambda_strategy: str = "fixed"
    theta1: float = DEFAULT_THETA1
    theta2: float = DEFAULT_THETA2
    multi_ref_agg: str = "mean"
    # divide the sentence-level ROUGE-L sums by sentence counts instead of token counts
    literal_eq56: bool = False
    # which sentence weights reach ROUGE_W; "uniform" disables weighting
    weighting: str = "both"

    def __post_init__(self):
        object.__setattr__(self, "variant", str(self.variant).upper())
        checks = [
            ("variant", self.variant, VARIANTS),
            ("component", self.component, ("r", "p", "f")),
            ("lambda_strategy", self.lambda_strategy, LAMBDA_STRATEGIES),
            ("multi_ref_agg", self.multi_ref_agg, AGGREGATIONS),
            ("weighting", self.weighting, WEIGHTINGS),
        ]
        for name, value, allowed in checks:
            if value not in allowed:
                raise ValueError(f"{name} must be one of {allowed}, got {value!r}")
        for name in ("lam", "theta1", "theta2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @property
    def metric_name(self) -> str:
        return f"WIDAR_{self.variant}"

    def fingerprint(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class WidarResult:
    widar: RougeScore
    rouge_w: RougeScore
    idss: RougeScore
    weights: tuple[SentenceWeights, ...]
    lambda_used: float

    def get(self, component: str) -> float:
        return self.widar.get(component)


def _weight_vector(weights: Weights, size: int) -> Optional[list[float]]:
    if weights is None:
        return None
    w = list(weights.w if isinstance(weights, SentenceWeights) else weights)
    if len(w) != size:
        raise LengthMismatch(f"{len(w)} weights for {size} reference sentences")
    return w


def _score(hits: float, ref_den: float, cand_den: float, clamp: bool) -> RougeScore:
    if ref_den <= 0 or cand_den <= 0:
        return RougeScore.zero(degenerate=True)
    recall = hits / ref_den
    precision = hits / cand_den
    if clamp:
        # weights above 1 can push the unweighted-denominator precision past 1;
        # weighted recall is at most 1 but sums in a different order than its denominator
        recall = min(recall, 1.0)
        precision = min(precision, 1.0)
    return RougeScore(recall, precision, f_measure(recall, precision))


def rouge_n_sl(S: TextUnit, R: TextUnit, n: int, weights: Weights = None) -> RougeScore:
    """Sentence-level ROUGE-N: no n-gram spans two sentences.

    With ``weights`` (one per reference sentence) each reference sentence's
    matched n-grams and its n-gram total are scaled by its weight. The
    precision denominator stays the candidate's unweighted n-gram count.
    """
    w = _weight_vector(weights, len(R))
    per_ref = [ngrams(r, n) for r in R]
    cand = unit_ngrams(S, n)
    cand_total = sum(cand.values())
    hits = clipped_overlap(per_ref, cand, w)
    if w is None:
        ref_total = sum(sum(c.values()) for c in per_ref)
    else:
        ref_total = sum(wj * sum(c.values()) for wj, c in zip(w, per_ref))
    return _score(hits, ref_total, cand_total, clamp=w is not None)


def rouge_l_sl(
    S: TextUnit, R: TextUnit, weights: Weights = None, literal: bool = False
) -> RougeScore:
    """Sentence-level ROUGE-L built on the union LCS of each reference sentence.

    ``literal`` divides by sentence counts rather than token counts; scores
    may then leave [0, 1].
    """
    return rouge_l_from_hits(union_lcs_hits(R, S), S, R, weights, literal)


def rouge_l_from_hits(
    hits_per_ref, S: TextUnit, R: TextUnit, weights: Weights = None, literal: bool = False
) -> RougeScore:
    """:func:`rouge_l_sl` with the union-LCS hits already computed."""
    w = _weight_vector(weights, len(R))
    hits = clipped_overlap(hits_per_ref, token_counts(S), w)
    if literal:
        ref_den = float(len(R)) if w is None else sum(w)
        cand_den = float(len(S))
    else:
        lens = [len(r) for r in R]
        ref_den = sum(lens) if w is None else sum(wj * k for wj, k in zip(w, lens))
        cand_den = sum(len(s) for s in S)
    return _score(hits, ref_den, cand_den, clamp=w is not None and not literal)


def idss(S: TextUnit, D: TextUnit) -> RougeScore:
    """Input-document similarity: summary-level ROUGE-L of the summary against the document."""
    if not S or not D:
        raise EmptyInput("summary and document must both contain a sentence")
    return rouge_l_summary(S, D)


def weighted_rouge(S: TextUnit, R: TextUnit, cfg: MetricConfig, weights: Weights) -> RougeScore:
    if cfg.variant == "L":
        return rouge_l_sl(S, R, weights, literal=cfg.literal_eq56)
    return rouge_n_sl(S, R, int(cfg.variant), weights)


def resolve_lambda(cfg: MetricConfig, weights: SentenceWeights) -> float:
    if cfg.lambda_strategy == "max_cov":
        return max(weights.w_cov)
    if cfg.lambda_strategy == "mean_cov":
        return fmean(weights.w_cov)
    return cfg.lam


def combine(idss_f: float, rouge_w: RougeScore, lam: float) -> RougeScore:
    """Blend the document similarity into every component of ROUGE_W."""
    keep = 1.0 - lam
    return RougeScore(
        keep * idss_f + lam * rouge_w.recall,
        keep * idss_f + lam * rouge_w.precision,
        keep * idss_f + lam * rouge_w.fscore,
        rouge_w.degenerate,
    )


def _widar_one(
    S: TextUnit, R: TextUnit, D: TextUnit, cfg: MetricConfig, idss_score: RougeScore
) -> WidarResult:
    if not R:
        raise EmptyInput("reference has no sentences")
    sw = combine_weights(
        coverage_weights(R, D, cfg.theta1),
        redundancy_weights(R, cfg.theta2),
        "both" if cfg.weighting == "uniform" else cfg.weighting,
    )
    rw = weighted_rouge(S, R, cfg, None if cfg.weighting == "uniform" else sw)
    lam = resolve_lambda(cfg, sw)
    return WidarResult(combine(idss_score.fscore, rw, lam), rw, idss_score, (sw,), lam)


def widar(record: EvalRecord, cfg: MetricConfig = MetricConfig()) -> WidarResult:
    """WIDAR for a record with exactly one reference."""
    if len(record.references) != 1:
        raise ValueError(
            f"{record.record_id}: widar() takes one reference, got "
            f"{len(record.references)}; use widar_multi()"
        )
    sim = idss(record.summary, record.document)
    return _widar_one(record.summary, record.references[0], record.document, cfg, sim)


def _aggregate(scores: Sequence[RougeScore], how: str) -> RougeScore:
    agg = fmean if how == "mean" else max
    return RougeScore(
        agg(s.recall for s in scores),
        agg(s.precision for s in scores),
        agg(s.fscore for s in scores),
        all(s.degenerate for s in scores),
    )


def widar_multi(record: EvalRecord, cfg: MetricConfig = MetricConfig()) -> WidarResult:
    """WIDAR against every reference, aggregated per component (mean or max)."""
    if not record.references:
        raise NoReferences(f"{record.record_id}: no references")
    if len(record.references) == 1:
        return widar(record, cfg)
    sim = idss(record.summary, record.document)
    parts = [
        _widar_one(record.summary, ref, record.document, cfg, sim)
        for ref in record.references
    ]
    return WidarResult(
        _aggregate([p.widar for p in parts], cfg.multi_ref_agg),
        _aggregate([p.rouge_w for p in parts], cfg.multi_ref_agg),
        sim,
        tuple(p.weights[0] for p in parts),
        fmean(p.lambda_used for p in parts),
    )


def widar_score(summary, references, document, cfg: Optional[MetricConfig] = None, **kwargs) -> WidarResult:
    """Convenience entry point taking raw text (or sentence lists).

    ``references`` may be a single text or a list of texts. Keyword
    arguments override fields of ``cfg``.

    >>> doc = "The cat sat on the mat. It was warm."
    >>> round(widar_score("The cat sat.", "A cat sat on a mat.", doc).widar.fscore, 3)
    0.472
    """
    if cfg is None:
        cfg = MetricConfig(**kwargs)
    elif kwargs:
        cfg = MetricConfig(**{**asdict(cfg), **kwargs})
    if isinstance(references, str):
        references = [references]
    record = EvalRecord(
        record_id="-",
        document=as_unit(document),
        references=tuple(as_unit(r) for r in references),
        summary=as_unit(summary),
    )
    return widar_multi(record, cfg)
