"""Record types shared by the metric, the meta-evaluation and the corpus I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .text import TextUnit

DIMENSIONS = ("coherence", "consistency", "fluency", "relevance")


@dataclass(frozen=True)
class JudgmentRecord:
    """Mean expert scores (1-5 scale) for one summary."""

    record_id: str
    coherence: float
    consistency: float
    fluency: float
    relevance: float

    def __post_init__(self):
        for dim in DIMENSIONS:
            v = getattr(self, dim)
            if not 1.0 <= v <= 5.0:
                raise ValueError(f"{self.record_id}: {dim}={v} outside [1, 5]")

    def get(self, dim: str) -> float:
        if dim not in DIMENSIONS:
            raise KeyError(dim)
        return getattr(self, dim)

    def as_dict(self) -> dict[str, float]:
        return {d: getattr(self, d) for d in DIMENSIONS}


@dataclass(frozen=True)
class EvalRecord:
    record_id: str
    document: TextUnit
    references: tuple[TextUnit, ...]
    summary: TextUnit
    judgments: Optional[JudgmentRecord] = None
    # summarization system that produced ``summary``, when known
    system: Optional[str] = None
