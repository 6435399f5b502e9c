"""Summary quality metrics: ROUGE-1/2/L and alignment-based consistency/relevance.

Consistency is the mean confidence that each candidate token is grounded in
the source; relevance multiplies that by how well the candidate covers the
reference. Both are built on pluggable token aligners so the grounding
backend can be swapped without touching the metric formulas.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

TokenSeq = tuple[str, ...]

AlignmentVector = tuple[float, ...]


class MetricKind(Enum):
    R1 = "R1"
    R2 = "R2"
    RL = "RL"
    CONSISTENCY = "Consistency"
    RELEVANCE = "Relevance"
    CONS_PLUS_REL = "ConsPlusRel"

    @property
    def reference_free(self) -> bool:
        return self is MetricKind.CONSISTENCY

    @property
    def max_value(self) -> float:
        return 2.0 if self is MetricKind.CONS_PLUS_REL else 1.0


class AlignerKind(Enum):
    EXACT = "Exact"
    SOFT_CHAR = "SoftChar"


@dataclass(frozen=True)
class MetricScore:
    value: float
    kind: MetricKind


@lru_cache(maxsize=None)
def _char_grams(token: str, n: int) -> frozenset[str]:
    return frozenset(token[i : i + n] for i in range(len(token) - n + 1))


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def _soft_sim(a: str, b: str) -> float:
    """Character-4-gram Jaccard; short tokens fall back to exact match or
    character-bigram Jaccard."""
    if len(a) >= 4 and len(b) >= 4:
        return _jaccard(_char_grams(a, 4), _char_grams(b, 4))
    if a == b:
        return 1.0
    return _jaccard(_char_grams(a, 2), _char_grams(b, 2))


def align(a: TokenSeq, b: TokenSeq, aligner: AlignerKind) -> AlignmentVector:
    """Per-token confidence that each token of ``a`` is grounded in ``b``."""
    if not a:
        return ()
    if aligner is AlignerKind.EXACT:
        b_set = set(b)
        return tuple(1.0 if tok in b_set else 0.0 for tok in a)
    b_types = set(b)
    return tuple(
        max((_soft_sim(tok, other) for other in b_types), default=0.0) for tok in a
    )


def _mean(values) -> float:
    values = tuple(values)
    return sum(values) / len(values) if values else 0.0


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _ngrams(tokens: TokenSeq, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: TokenSeq, reference: TokenSeq, n: int) -> MetricScore:
    """F1 over clipped n-gram multiset overlap, n in {1, 2}."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    kind = MetricKind.R1 if n == 1 else MetricKind.R2
    if len(candidate) < n or len(reference) < n:
        return MetricScore(0.0, kind)
    cand_grams = _ngrams(candidate, n)
    ref_grams = _ngrams(reference, n)
    overlap = sum(min(count, ref_grams[g]) for g, count in cand_grams.items())
    precision = overlap / sum(cand_grams.values())
    recall = overlap / sum(ref_grams.values())
    return MetricScore(_f1(precision, recall), kind)


def _lcs_len(a: TokenSeq, b: TokenSeq) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for tok in a:
        cur = [0] * (len(b) + 1)
        for j, other in enumerate(b, start=1):
            if tok == other:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def rouge_l(candidate: TokenSeq, reference: TokenSeq) -> MetricScore:
    """F1 from longest-common-subsequence length."""
    if not candidate or not reference:
        return MetricScore(0.0, MetricKind.RL)
    lcs = _lcs_len(candidate, reference)
    return MetricScore(_f1(lcs / len(candidate), lcs / len(reference)), MetricKind.RL)


def consistency(x: TokenSeq, candidate: TokenSeq, aligner: AlignerKind) -> MetricScore:
    """Mean grounding confidence of the candidate in the source."""
    value = _mean(align(candidate, x, aligner))
    return MetricScore(value, MetricKind.CONSISTENCY)


def relevance(
    x: TokenSeq, reference: TokenSeq, candidate: TokenSeq, aligner: AlignerKind
) -> MetricScore:
    """Grounding of the candidate in the source, weighted by how much of the
    reference the candidate covers."""
    if not x or not reference or not candidate:
        return MetricScore(0.0, MetricKind.RELEVANCE)
    grounded = _mean(align(candidate, x, aligner))
    covered = _mean(align(reference, candidate, aligner))
    return MetricScore(grounded * covered, MetricKind.RELEVANCE)


def score(
    kind: MetricKind,
    x: TokenSeq,
    reference: TokenSeq | None,
    candidate: TokenSeq,
    aligner: AlignerKind = AlignerKind.EXACT,
) -> MetricScore:
    """Dispatch to the metric named by ``kind``.

    ``reference`` may be None only for the reference-free consistency metric.
    """
    if reference is None and not kind.reference_free:
        raise ValueError(f"metric {kind.value} requires a reference summary")
    if kind is MetricKind.R1:
        return rouge_n(candidate, reference, 1)
    if kind is MetricKind.R2:
        return rouge_n(candidate, reference, 2)
    if kind is MetricKind.RL:
        return rouge_l(candidate, reference)
    if kind is MetricKind.CONSISTENCY:
        return consistency(x, candidate, aligner)
    if kind is MetricKind.RELEVANCE:
        return relevance(x, reference, candidate, aligner)
    if kind is MetricKind.CONS_PLUS_REL:
        total = (
            consistency(x, candidate, aligner).value
            + relevance(x, reference, candidate, aligner).value
        )
        return MetricScore(total, MetricKind.CONS_PLUS_REL)
    raise ValueError(f"unknown metric kind {kind!r}")
