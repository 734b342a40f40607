"""Tokenization plus sentence-level BLEU and weighted ROUGE.

Everything here is deterministic and stateless. BLEU follows the usual
geometric-mean modified n-gram precision with brevity penalty, epsilon
smoothing for zero counts, and a 0-100 scale. Weighted ROUGE blends the
ROUGE-1/2/L F-measures and is used on linearized parse label sequences.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

__all__ = ["BleuConfig", "tokenize", "bleu", "weighted_rouge"]

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, detach punctuation as own tokens."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class BleuConfig:
    max_n: int = 4
    smoothing_epsilon: float = 0.1
    scale: float = 100.0

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.smoothing_epsilon <= 0:
            raise ValueError("smoothing_epsilon must be positive")


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(
    candidate: Sequence[str],
    reference: Sequence[str],
    cfg: BleuConfig = BleuConfig(),
) -> float:
    """Sentence BLEU of ``candidate`` against ``reference`` on a 0-100 scale.

    Orders whose n-grams the candidate cannot form are skipped; zero match
    counts are replaced by ``smoothing_epsilon``. Identical non-empty inputs
    score exactly 100; if either side is empty the score is 0 by convention.
    """
    if not candidate or not reference:
        return 0.0
    logs = []
    for n in range(1, cfg.max_n + 1):
        cand = _ngrams(candidate, n)
        total = sum(cand.values())
        if total == 0:
            continue
        ref = _ngrams(reference, n)
        matched = sum(min(count, ref[gram]) for gram, count in cand.items())
        numerator = matched if matched else cfg.smoothing_epsilon
        logs.append(math.log(numerator / total))
    if not logs:
        return 0.0
    c, r = len(candidate), len(reference)
    brevity = 1.0 if c > r else math.exp(1.0 - r / c)
    return cfg.scale * brevity * math.exp(sum(logs) / len(logs))


def _overlap_f(counts_a: Counter, counts_b: Counter) -> float:
    total_a = sum(counts_a.values())
    total_b = sum(counts_b.values())
    if total_a == 0 and total_b == 0:
        return 1.0  # vacuous: neither side forms an n-gram at this order
    if total_a == 0 or total_b == 0:
        return 0.0
    matched = sum((counts_a & counts_b).values())
    if matched == 0:
        return 0.0
    precision = matched / total_a
    recall = matched / total_b
    return 2.0 * precision * recall / (precision + recall)


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def _lcs_f(a: Sequence[str], b: Sequence[str]) -> float:
    lcs = _lcs_length(a, b)
    if lcs == 0:
        return 0.0
    precision = lcs / len(a)
    recall = lcs / len(b)
    return 2.0 * precision * recall / (precision + recall)


def weighted_rouge(
    seq_a: Sequence[str],
    seq_b: Sequence[str],
    weights: Sequence[float] = (1 / 3, 1 / 3, 1 / 3),
) -> float:
    """Weighted blend of ROUGE-1, ROUGE-2 and ROUGE-L F-measures in [0, 1].

    Symmetric under exchanging the two sequences. ``weights`` must be three
    nonnegative reals summing to 1.
    """
    if not seq_a or not seq_b:
        raise ValueError("sequences must be non-empty")
    if len(weights) != 3 or any(w < 0 for w in weights):
        raise ValueError("weights must be three nonnegative reals")
    if abs(sum(weights) - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    w1, w2, wl = weights
    r1 = _overlap_f(_ngrams(seq_a, 1), _ngrams(seq_b, 1))
    r2 = _overlap_f(_ngrams(seq_a, 2), _ngrams(seq_b, 2))
    rl = _lcs_f(seq_a, seq_b)
    return w1 * r1 + w2 * r2 + wl * rl
