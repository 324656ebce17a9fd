"""Classic ROUGE-N and ROUGE-L scores."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .text import (
    Sentence,
    TextUnit,
    lcs_len,
    union_lcs_positions,
    unit_ngrams,
    unit_tokens,
)

COMPONENTS = ("r", "p", "f")


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    fscore: float
    # set when a denominator was zero (unit too short for the requested variant)
    degenerate: bool = False

    @classmethod
    def from_counts(cls, hits: float, ref_total: float, cand_total: float) -> "RougeScore":
        if ref_total <= 0 or cand_total <= 0:
            return cls.zero(degenerate=True)
        return cls.from_rp(hits / ref_total, hits / cand_total)

    @classmethod
    def from_rp(cls, recall: float, precision: float) -> "RougeScore":
        return cls(recall, precision, f_measure(recall, precision))

    @classmethod
    def zero(cls, degenerate: bool = False) -> "RougeScore":
        return cls(0.0, 0.0, 0.0, degenerate)

    def get(self, component: str) -> float:
        """Return one component by its short name: ``r``, ``p`` or ``f``."""
        if component == "r":
            return self.recall
        if component == "p":
            return self.precision
        if component == "f":
            return self.fscore
        raise ValueError(f"unknown score component {component!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.recall, self.precision, self.fscore)


def f_measure(recall: float, precision: float) -> float:
    if recall + precision <= 0:
        return 0.0
    return 2 * recall * precision / (recall + precision)


def rouge_n(candidate: TextUnit, reference: TextUnit, n: int) -> RougeScore:
    """Clipped n-gram overlap of two units, n-grams taken within sentences."""
    cand = unit_ngrams(candidate, n)
    ref = unit_ngrams(reference, n)
    hits = sum((cand & ref).values())
    return RougeScore.from_counts(hits, sum(ref.values()), sum(cand.values()))


def rouge_l_pair(candidate: Sentence, reference: Sentence) -> RougeScore:
    """Sentence-to-sentence ROUGE-L; recall is the covered fraction of ``reference``."""
    lcs = lcs_len(candidate, reference)
    recall = lcs / len(reference) if reference else 0.0
    precision = lcs / len(candidate) if candidate else 0.0
    return RougeScore.from_rp(recall, precision)


def rouge_l_flat(candidate: TextUnit, reference: TextUnit) -> RougeScore:
    """ROUGE-L over the concatenated token streams, ignoring sentence boundaries."""
    cand = [t for s in candidate for t in s]
    ref = [t for s in reference for t in s]
    if not cand or not ref:
        return RougeScore.zero(degenerate=True)
    return rouge_l_pair(cand, ref)


def union_lcs_hits(reference: TextUnit, candidate: TextUnit) -> list[Counter]:
    """Token-type counts of the union-LCS positions for every reference sentence."""
    out = []
    for ref in reference:
        pos = union_lcs_positions(ref, candidate)
        out.append(Counter(ref[p] for p in pos))
    return out


def clipped_overlap(
    per_ref: Sequence[Counter],
    cand_counts: Counter,
    weights: Optional[Sequence[float]] = None,
) -> float:
    """Overlap of reference-side counts with candidate counts, clipped per type.

    ``per_ref[j]`` holds the matchable items contributed by reference sentence
    ``j``. For each item type the matched total is ``min(candidate, reference)``;
    when the candidate runs short, the matches are shared between reference
    sentences in proportion to their counts. With ``weights`` every reference
    sentence's share is scaled by its weight.
    """
    totals: Counter = Counter()
    for counts in per_ref:
        totals.update(counts)
    if weights is None:
        return sum(min(c, cand_counts.get(g, 0)) for g, c in totals.items())

    weighted: dict = {}
    for w, counts in zip(weights, per_ref):
        for g, c in counts.items():
            weighted[g] = weighted.get(g, 0.0) + w * c
    hits = 0.0
    for g, tot in totals.items():
        c = cand_counts.get(g, 0)
        if c >= tot:
            hits += weighted[g]
        elif c:
            hits += c * weighted[g] / tot
    return hits


def token_counts(unit: TextUnit) -> Counter:
    """Plain token counts of a unit (keys are tokens, not 1-tuples)."""
    c: Counter = Counter()
    for s in unit:
        c.update(s)
    return c


def rouge_l_summary(candidate: TextUnit, reference: TextUnit) -> RougeScore:
    """Summary-level ROUGE-L from the union LCS of every reference sentence.

    Union hits are clipped by the candidate's token counts so that no
    candidate token is credited more often than it occurs.
    """
    hits = clipped_overlap(
        union_lcs_hits(reference, candidate), token_counts(candidate)
    )
    return RougeScore.from_counts(hits, unit_tokens(reference), unit_tokens(candidate))


__all__ = [
    "COMPONENTS",
    "RougeScore",
    "clipped_overlap",
    "f_measure",
    "rouge_l_flat",
    "rouge_l_pair",
    "rouge_l_summary",
    "rouge_n",
    "union_lcs_hits",
    "token_counts",
]
