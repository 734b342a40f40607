"""Benchmark analysis: syntactic divergence sweeps, score variance, stats.

These utilities reproduce the study machinery around the robustness scores:
per-clique syntactic divergence under a sweep of discount weights, variance
of per-sentence F1 within cliques, binned variance-vs-divergence curves,
Pearson correlation, and vocabulary statistics. Outputs are plain records
suitable for CSV/JSON export; no plotting is done here.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Sequence

from .robustness import BenchmarkReport, Clique, SentenceEntry
from .syntax import CtkConfig, HwsConfig, ctk_similarity, hws_distance
from .textmetrics import tokenize
from .trees import parse_tree

__all__ = [
    "DivergenceProfile",
    "SweepPoint",
    "VarianceRecord",
    "BinnedCurve",
    "Histogram",
    "VarianceAnalysis",
    "VocabStats",
    "intra_clique_divergence",
    "inter_clique_sweep",
    "variance_analysis",
    "pearson",
    "vocab_stats",
]


@dataclass(frozen=True)
class DivergenceProfile:
    """Mean pairwise distance/similarity within one clique at one weight."""

    clique_id: str
    weight: float
    mean_hws: float
    mean_ctk: float


@dataclass(frozen=True)
class SweepPoint:
    """Across-clique mean of the per-clique divergence means."""

    weight: float
    mean_hws: float
    mean_ctk: float


def _clique_trees(clique: Clique):
    trees = []
    for entry in clique.sentences:
        if entry.parse is None:
            raise ValueError(f"sentence {entry.id!r} has no parse")
        trees.append(parse_tree(entry.parse))
    return trees


def intra_clique_divergence(
    clique: Clique,
    weights: Sequence[float],
    *,
    hws: HwsConfig = HwsConfig(),
    ctk: CtkConfig = CtkConfig(),
    include_words: bool = True,
) -> list[DivergenceProfile]:
    """Average pairwise distance/similarity per weight, over one clique.

    The weight replaces the discount of both metrics (``alpha`` for the
    sequence distance, ``decay`` for the kernel). A clique with fewer than
    two sentences has nothing to compare and profiles as (0, 1).
    """
    trees = _clique_trees(clique)
    pairs = list(combinations(trees, 2))
    profiles = []
    for weight in weights:
        if not pairs:
            profiles.append(DivergenceProfile(clique.id, weight, 0.0, 1.0))
            continue
        hws_cfg = replace(hws, alpha=weight)
        ctk_cfg = replace(ctk, decay=weight)
        mean_hws = statistics.fmean(
            hws_distance(a, b, hws_cfg, include_words=include_words) for a, b in pairs
        )
        mean_ctk = statistics.fmean(ctk_similarity(a, b, ctk_cfg) for a, b in pairs)
        profiles.append(DivergenceProfile(clique.id, weight, mean_hws, mean_ctk))
    return profiles


def inter_clique_sweep(
    cliques: Sequence[Clique],
    weights: Sequence[float],
    *,
    hws: HwsConfig = HwsConfig(),
    ctk: CtkConfig = CtkConfig(),
    include_words: bool = True,
) -> list[SweepPoint]:
    """Mean of the intra-clique divergence means, per weight."""
    if not cliques:
        raise ValueError("benchmark has no cliques")
    per_clique = [
        intra_clique_divergence(
            c, weights, hws=hws, ctk=ctk, include_words=include_words
        )
        for c in cliques
    ]
    points = []
    for index, weight in enumerate(weights):
        points.append(
            SweepPoint(
                weight,
                statistics.fmean(p[index].mean_hws for p in per_clique),
                statistics.fmean(p[index].mean_ctk for p in per_clique),
            )
        )
    return points


@dataclass(frozen=True)
class VarianceRecord:
    clique_id: str
    f1_variance: float
    mean_hws: float
    mean_ctk: float


@dataclass(frozen=True)
class BinnedCurve:
    """Equal-width bins over a divergence value with mean variance per bin.

    ``edges`` has one more entry than ``counts``; empty bins carry a mean of
    None. A degenerate range (all values equal) collapses to a single bin.
    """

    edges: tuple[float, ...]
    counts: tuple[int, ...]
    mean_variance: tuple[float | None, ...]


@dataclass(frozen=True)
class Histogram:
    edges: tuple[float, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class VarianceAnalysis:
    records: tuple[VarianceRecord, ...]
    hws_curve: BinnedCurve
    ctk_curve: BinnedCurve
    variance_histogram: Histogram


def _bin_index(value: float, lo: float, width: float, bins: int) -> int:
    index = int((value - lo) / width)
    return min(max(index, 0), bins - 1)


def _binned_curve(values: Sequence[float], variances: Sequence[float], bins: int) -> BinnedCurve:
    lo, hi = min(values), max(values)
    if hi == lo:
        return BinnedCurve(
            edges=(lo, hi),
            counts=(len(values),),
            mean_variance=(statistics.fmean(variances),),
        )
    width = (hi - lo) / bins
    edges = tuple(lo + i * width for i in range(bins)) + (hi,)
    grouped: list[list[float]] = [[] for _ in range(bins)]
    for value, variance in zip(values, variances):
        grouped[_bin_index(value, lo, width, bins)].append(variance)
    return BinnedCurve(
        edges=edges,
        counts=tuple(len(g) for g in grouped),
        mean_variance=tuple(statistics.fmean(g) if g else None for g in grouped),
    )


def _histogram(values: Sequence[float], bins: int) -> Histogram:
    lo, hi = min(values), max(values)
    if hi == lo:
        return Histogram(edges=(lo, hi), counts=(len(values),))
    width = (hi - lo) / bins
    edges = tuple(lo + i * width for i in range(bins)) + (hi,)
    counts = [0] * bins
    for value in values:
        counts[_bin_index(value, lo, width, bins)] += 1
    return Histogram(edges=edges, counts=tuple(counts))


def variance_analysis(
    report: BenchmarkReport,
    profiles: Sequence[DivergenceProfile],
    *,
    bins: int = 5,
) -> VarianceAnalysis:
    """Per-clique F1 variance, joined with divergence profiles and binned.

    ``profiles`` must hold exactly one profile per clique in the report
    (i.e. a single sweep weight). Variances are population variances, since
    a clique is the complete population of its variants. Records are binned
    into ``bins`` equal-width intervals of each divergence value; the
    histogram shows how many cliques fall into each variance interval.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    by_id = {}
    for profile in profiles:
        if profile.clique_id in by_id:
            raise ValueError(
                f"multiple profiles for clique {profile.clique_id!r}; "
                "pass profiles for a single weight"
            )
        by_id[profile.clique_id] = profile
    report_ids = [cs.clique_id for cs in report.clique_scores]
    missing = sorted(set(report_ids) - set(by_id))
    extra = sorted(set(by_id) - set(report_ids))
    if missing or extra:
        raise ValueError(
            f"clique sets differ: missing profiles for {missing}, "
            f"unmatched profiles {extra}"
        )

    records = tuple(
        VarianceRecord(
            clique_id=cs.clique_id,
            f1_variance=statistics.pvariance([s.f1 for s in cs.per_sentence]),
            mean_hws=by_id[cs.clique_id].mean_hws,
            mean_ctk=by_id[cs.clique_id].mean_ctk,
        )
        for cs in report.clique_scores
    )
    variances = [r.f1_variance for r in records]
    return VarianceAnalysis(
        records=records,
        hws_curve=_binned_curve([r.mean_hws for r in records], variances, bins),
        ctk_curve=_binned_curve([r.mean_ctk for r in records], variances, bins),
        variance_histogram=_histogram(variances, bins),
    )


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient, clamped to [-1, 1].

    Raises ValueError for mismatched lengths, fewer than two points, or a
    constant series (the coefficient is undefined there).
    """
    if len(x) != len(y):
        raise ValueError("series must have equal length")
    if len(x) < 2:
        raise ValueError("need at least two points")
    try:
        r = statistics.correlation(x, y)
    except statistics.StatisticsError as exc:
        raise ValueError(f"correlation undefined: {exc}") from exc
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class VocabStats:
    vocab_size: int
    token_count: int
    per_sentence: tuple[int, ...]


def vocab_stats(sentences: Sequence[SentenceEntry | str]) -> VocabStats:
    """Distinct normalized token count plus per-sentence token totals."""
    vocab: set[str] = set()
    per_sentence = []
    for sentence in sentences:
        text = sentence if isinstance(sentence, str) else sentence.text
        tokens = tokenize(text)
        vocab.update(tokens)
        per_sentence.append(len(tokens))
    return VocabStats(len(vocab), sum(per_sentence), tuple(per_sentence))
