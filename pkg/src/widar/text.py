"""Tokenization, sentence splitting, n-grams and LCS primitives.

A sentence is a tuple of normalized tokens and a text unit (document,
reference or summary) is a tuple of sentences. Everything here is pure.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Sequence, Union

Sentence = tuple[str, ...]
TextUnit = tuple[Sentence, ...]

# alphanumeric runs; "_" counts as a boundary
_TOKEN_RE = re.compile(r"[^\W_]+")
_SENT_END_RE = re.compile(r"(?<=[.!?])\s+")


def tokenize_sentence(raw: str) -> Sentence:
    """Lowercase and split on any non-alphanumeric character.

    >>> tokenize_sentence("Drone's 300ft limit!")
    ('drone', 's', '300ft', 'limit')
    """
    return tuple(_TOKEN_RE.findall(raw.lower()))


def split_sentences(raw: str) -> TextUnit:
    """Split on ``.``, ``!`` or ``?`` followed by whitespace, then tokenize.

    Abbreviations are not special-cased, so ``"Mr. Smith"`` yields two
    sentences. Sentences without any token are dropped.
    """
    pieces = _SENT_END_RE.split(raw.strip())
    return tuple(s for s in map(tokenize_sentence, pieces) if s)


def as_unit(text: Union[str, Iterable[str], Iterable[Sequence[str]]]) -> TextUnit:
    """Coerce raw text, a list of sentence strings or a list of token lists to a unit."""
    if isinstance(text, str):
        return split_sentences(text)
    out = []
    for item in text:
        if isinstance(item, str):
            sent = tokenize_sentence(item)
        else:
            sent = tuple(item)
        if sent:
            out.append(sent)
    return tuple(out)


def unit_tokens(unit: TextUnit) -> int:
    return sum(len(s) for s in unit)


def ngrams(sentence: Sequence[str], n: int) -> Counter:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return Counter((t,) for t in sentence)
    return Counter(tuple(sentence[i:i + n]) for i in range(len(sentence) - n + 1))


def unit_ngrams(unit: TextUnit, n: int) -> Counter:
    """Pooled n-gram counts of a unit; n-grams never cross a sentence boundary."""
    total: Counter = Counter()
    for sent in unit:
        total.update(ngrams(sent, n))
    return total


def _match_masks(pattern: Sequence[str]) -> dict[str, int]:
    masks: dict[str, int] = {}
    for i, tok in enumerate(pattern):
        masks[tok] = masks.get(tok, 0) | (1 << i)
    return masks


def _lcs_len_masks(masks: dict[str, int], m: int, other: Sequence[str]) -> int:
    # bit-parallel LCS (Allison-Dix / Hyyro); zero bits of v count matched positions
    full = (1 << m) - 1
    v = full
    for tok in other:
        bits = masks.get(tok)
        if bits:
            u = v & bits
            v = ((v + u) | (v - u)) & full
    return m - v.bit_count()


def lcs_len(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of a longest common subsequence of two token sequences."""
    if not a or not b:
        return 0
    if len(a) > len(b):
        a, b = b, a
    return _lcs_len_masks(_match_masks(a), len(a), b)


class LcsMatcher:
    """Precomputed pattern for repeated ``lcs_len(pattern, other)`` calls."""

    __slots__ = ("m", "masks")

    def __init__(self, pattern: Sequence[str]):
        self.m = len(pattern)
        self.masks = _match_masks(pattern)

    def __call__(self, other: Sequence[str]) -> int:
        if not self.m or not other:
            return 0
        return _lcs_len_masks(self.masks, self.m, other)


def lcs_positions(ref: Sequence[str], cand: Sequence[str]) -> list[int]:
    """Reference positions of one canonical LCS between ``ref`` and ``cand``.

    Among all longest common subsequences the one whose sorted reference
    positions are lexicographically smallest is returned.
    """
    shared = set(ref).intersection(cand)
    if not shared:
        return []
    ref_idx = [i for i, t in enumerate(ref) if t in shared]
    rt = [ref[i] for i in ref_idx]
    ct = [t for t in cand if t in shared]
    m, n = len(rt), len(ct)
    # table[i][j] = LCS length of rt[i:] and ct[j:]
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row, below, tok = table[i], table[i + 1], rt[i]
        for j in range(n - 1, -1, -1):
            if tok == ct[j]:
                row[j] = below[j + 1] + 1
            else:
                x, y = below[j], row[j + 1]
                row[j] = x if x >= y else y
    out = []
    i = j = 0
    while i < m and j < n:
        if rt[i] == ct[j]:
            out.append(ref_idx[i])
            i += 1
            j += 1
        elif table[i][j + 1] == table[i][j]:
            j += 1
        else:
            i += 1
    return out


def union_lcs_positions(ref: Sequence[str], cand_unit: Iterable[Sequence[str]]) -> set[int]:
    hit: set[int] = set()
    for sent in cand_unit:
        hit.update(lcs_positions(ref, sent))
    return hit


def union_lcs(ref: Sequence[str], cand_unit: Iterable[Sequence[str]]) -> int:
    """Number of reference positions covered by the canonical LCS with any candidate sentence."""
    return len(union_lcs_positions(ref, cand_unit))
