"""Coverage and redundancy weights for reference-summary sentences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyDocument, EmptyInput, LengthMismatch
from .text import LcsMatcher, TextUnit

DEFAULT_THETA1 = 0.1
DEFAULT_THETA2 = 0.3

WEIGHT_PARTS = ("both", "coverage", "redundancy")


@dataclass(frozen=True)
class SentenceWeights:
    w_cov: tuple[float, ...]
    w_red: tuple[float, ...]
    w: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.w)

    def as_dict(self) -> dict:
        return {"w_cov": list(self.w_cov), "w_red": list(self.w_red), "w": list(self.w)}


def _check_theta(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def coverage_weights(R: TextUnit, D: TextUnit, theta1: float = DEFAULT_THETA1) -> list[float]:
    """Fraction of document sentences that cover each reference sentence.

    A document sentence counts for ``r_i`` when the LCS with it recovers at
    least ``theta1`` of ``r_i``'s tokens.
    """
    _check_theta("theta1", theta1)
    if not D:
        raise EmptyDocument("coverage weights need at least one document sentence")
    if not R:
        raise EmptyInput("reference has no sentences")
    out = []
    for r in R:
        if not r:
            # recall of an empty sentence is 0; only a vacuous threshold passes
            out.append(1.0 if theta1 <= 0 else 0.0)
            continue
        lcs = LcsMatcher(r)
        n = len(r)
        hits = sum(1 for d in D if lcs(d) / n >= theta1)
        out.append(hits / len(D))
    return out


def redundancy_weights(R: TextUnit, theta2: float = DEFAULT_THETA2) -> list[float]:
    """One minus the fraction of sibling sentences that repeat each reference sentence."""
    _check_theta("theta2", theta2)
    if not R:
        raise EmptyInput("reference has no sentences")
    size = len(R)
    out = []
    for i, r in enumerate(R):
        if r:
            lcs = LcsMatcher(r)
            n = len(r)
            dup = sum(1 for j, other in enumerate(R) if j != i and lcs(other) / n >= theta2)
        else:
            dup = size - 1 if theta2 <= 0 else 0
        out.append(1.0 - dup / size)
    return out


def combine_weights(
    w_cov: Sequence[float], w_red: Sequence[float], parts: str = "both"
) -> SentenceWeights:
    """Average coverage and redundancy, then rescale so the weights sum to ``len(R)``.

    ``parts`` selects which weights feed the average (``coverage`` or
    ``redundancy`` drop the other one). If every raw weight is zero the
    result is uniform ones.
    """
    if len(w_cov) != len(w_red):
        raise LengthMismatch(f"{len(w_cov)} coverage vs {len(w_red)} redundancy weights")
    if not w_cov:
        raise EmptyInput("no sentences to weight")
    if parts == "both":
        raw = [(c + r) / 2 for c, r in zip(w_cov, w_red)]
    elif parts == "coverage":
        raw = list(w_cov)
    elif parts == "redundancy":
        raw = list(w_red)
    else:
        raise ValueError(f"parts must be one of {WEIGHT_PARTS}, got {parts!r}")
    size = len(raw)
    total = sum(raw)
    if total > 0:
        w = tuple(x * size / total for x in raw)
    else:
        w = (1.0,) * size
    return SentenceWeights(tuple(w_cov), tuple(w_red), w)


def sentence_weights(
    R: TextUnit,
    D: TextUnit,
    theta1: float = DEFAULT_THETA1,
    theta2: float = DEFAULT_THETA2,
    parts: str = "both",
) -> SentenceWeights:
    return combine_weights(coverage_weights(R, D, theta1), redundancy_weights(R, theta2), parts)
