"""Clique-level robustness scoring.

A clique groups one original sentence with paraphrases that carry the same
knowledge. A system's robustness score on the clique is the sentence score
of its worst-F1 sentence, so failing on any variant is punished. Cliques
are scored independently; aggregation is a pure fold over their scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean
from typing import Callable, Iterable, Mapping, Sequence

from .carb import ExtractionTuple, SentenceScore, carb_score

__all__ = [
    "SentenceEntry",
    "Clique",
    "CliqueScore",
    "BenchmarkReport",
    "worst_case",
    "score_clique",
    "score_benchmark",
]


@dataclass(frozen=True)
class SentenceEntry:
    """One sentence: id, raw text, optional bracketed parse, gold tuples."""

    id: str
    text: str
    parse: str | None = None
    gold: tuple[ExtractionTuple, ...] = ()


@dataclass(frozen=True)
class Clique:
    """An original sentence plus paraphrases sharing its knowledge.

    The first entry is the original. Every sentence must carry at least one
    gold extraction; sentences without extractions are excluded from
    benchmarks upstream.
    """

    id: str
    sentences: tuple[SentenceEntry, ...]

    def __post_init__(self):
        if not self.sentences:
            raise ValueError(f"clique {self.id!r} has no sentences")
        for entry in self.sentences:
            if not entry.gold:
                raise ValueError(
                    f"clique {self.id!r}: sentence {entry.id!r} has no gold extractions"
                )


@dataclass(frozen=True)
class CliqueScore:
    clique_id: str
    per_sentence: tuple[SentenceScore, ...]
    worst_index: int
    robust: SentenceScore


def worst_case(clique_id: str, scores: Sequence[SentenceScore]) -> CliqueScore:
    """Pick the sentence with the lowest F1; ties go to the lowest index.

    The robust precision and recall are copied from that same sentence.
    """
    if not scores:
        raise ValueError("need at least one sentence score")
    worst = min(range(len(scores)), key=lambda i: (scores[i].f1, i))
    return CliqueScore(clique_id, tuple(scores), worst, scores[worst])


def score_clique(
    clique: Clique,
    system_outputs: Mapping[str, Sequence[ExtractionTuple]],
) -> CliqueScore:
    """Score every sentence of the clique and select the worst one.

    ``system_outputs`` must contain an entry (possibly an empty list) for
    every sentence id in the clique; a sentence with an empty output scores
    (0, 0, 0) and therefore dominates the worst-case selection.
    """
    scores = []
    for entry in clique.sentences:
        if entry.id not in system_outputs:
            raise ValueError(f"no system output for sentence {entry.id!r}")
        scores.append(carb_score(entry.gold, system_outputs[entry.id]))
    return worst_case(clique.id, scores)


@dataclass(frozen=True)
class BenchmarkReport:
    """Per-clique scores plus benchmark-level means.

    ``mean_robust_*`` average the worst-case scores over cliques;
    ``mean_carb_*`` average plain per-sentence scores over all sentences,
    which keeps reports comparable with single-sentence benchmarks.
    """

    clique_scores: tuple[CliqueScore, ...]
    mean_robust_precision: float
    mean_robust_recall: float
    mean_robust_f1: float
    mean_carb_precision: float
    mean_carb_recall: float
    mean_carb_f1: float


def score_benchmark(
    cliques: Sequence[Clique],
    system_outputs: Mapping[str, Sequence[ExtractionTuple]],
    *,
    weight_by_size: bool = False,
    mapper: Callable[..., Iterable[CliqueScore]] = map,
) -> BenchmarkReport:
    """Score a whole benchmark.

    Each clique counts once in the robust means regardless of its size;
    ``weight_by_size=True`` weights cliques by sentence count instead.
    ``mapper`` may be swapped for a pool's order-preserving ``map`` to score
    cliques concurrently; results do not depend on the mapper.
    """
    if not cliques:
        raise ValueError("benchmark has no cliques")
    clique_scores = tuple(
        mapper(lambda c: score_clique(c, system_outputs), cliques)
    )

    if weight_by_size:
        weights = [len(c.sentences) for c in cliques]
        total = sum(weights)

        def robust_mean(attr: str) -> float:
            return (
                sum(w * getattr(cs.robust, attr) for w, cs in zip(weights, clique_scores))
                / total
            )

    else:

        def robust_mean(attr: str) -> float:
            return fmean(getattr(cs.robust, attr) for cs in clique_scores)

    sentence_scores = [s for cs in clique_scores for s in cs.per_sentence]
    return BenchmarkReport(
        clique_scores=clique_scores,
        mean_robust_precision=robust_mean("precision"),
        mean_robust_recall=robust_mean("recall"),
        mean_robust_f1=robust_mean("f1"),
        mean_carb_precision=fmean(s.precision for s in sentence_scores),
        mean_carb_recall=fmean(s.recall for s in sentence_scores),
        mean_carb_f1=fmean(s.f1 for s in sentence_scores),
    )
