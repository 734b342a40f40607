"""Clique construction tools: diversity filtering and template sampling.

The diversity filter thins a set of generated paraphrases down to the most
mutually different ones, judged by pairwise BLEU. The template tools pick
pruned target parses for syntactically controlled paraphrasing from a
corpus of (source parse, target parse) pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .robustness import SentenceEntry
from .textmetrics import BleuConfig, bleu, tokenize, weighted_rouge
from .trees import ConstituencyTree, level_order, parse_tree, prune, serialize_tree

__all__ = [
    "ParaphraseSet",
    "TemplateCorpus",
    "ensure_scores",
    "diversity_filter",
    "diversity_filter_trace",
    "template_key",
    "select_source_parses",
    "sample_target_parses",
]

ScoreMatrix = tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class ParaphraseSet:
    """An original sentence with candidate paraphrases.

    ``score_matrix`` holds pairwise similarity scores over the nodes in the
    order (original, paraphrase 1, paraphrase 2, ...); it must be square,
    symmetric, with 100 on the diagonal.
    """

    original: SentenceEntry
    paraphrases: tuple[SentenceEntry, ...]
    score_matrix: ScoreMatrix | None = None

    def __post_init__(self):
        if self.score_matrix is None:
            return
        size = 1 + len(self.paraphrases)
        matrix = self.score_matrix
        if len(matrix) != size or any(len(row) != size for row in matrix):
            raise ValueError(f"score matrix must be {size}x{size}")
        for i in range(size):
            if abs(matrix[i][i] - 100.0) > 1e-6:
                raise ValueError("score matrix diagonal must be 100")
            for j in range(i + 1, size):
                if abs(matrix[i][j] - matrix[j][i]) > 1e-6:
                    raise ValueError("score matrix must be symmetric")


def ensure_scores(pset: ParaphraseSet, cfg: BleuConfig = BleuConfig()) -> ParaphraseSet:
    """Return ``pset`` with a score matrix, computing pairwise BLEU if absent.

    BLEU is direction-dependent, so the stored score is the mean of both
    directions over tokenized texts, which keeps the matrix symmetric.
    """
    if pset.score_matrix is not None:
        return pset
    tokens = [tokenize(pset.original.text)]
    tokens += [tokenize(p.text) for p in pset.paraphrases]
    size = len(tokens)
    matrix = [[100.0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            score = (bleu(tokens[i], tokens[j], cfg) + bleu(tokens[j], tokens[i], cfg)) / 2.0
            matrix[i][j] = matrix[j][i] = score
    return replace(pset, score_matrix=tuple(tuple(row) for row in matrix))


def diversity_filter(pset: ParaphraseSet, max_paraphrases: int = 3) -> ParaphraseSet:
    """Iteratively drop the most mutually similar paraphrases.

    While more than ``max_paraphrases`` paraphrases remain: find the
    highest-scoring pair of remaining nodes that touches at least one
    paraphrase (ties resolved by first position in reading order). If the
    pair contains the original, its paraphrase member is removed (the
    original is never removable). Otherwise, if exactly one member is
    shorter than 2/3 of the original sentence's token length, that short
    member is removed; else the member with the larger sum of scores to all
    other remaining nodes goes, ties going to the higher index.
    """
    filtered, _ = diversity_filter_trace(pset, max_paraphrases)
    return filtered


def diversity_filter_trace(
    pset: ParaphraseSet, max_paraphrases: int = 3
) -> tuple[ParaphraseSet, list[str]]:
    """Like :func:`diversity_filter` but also returns removed ids in order."""
    if max_paraphrases < 1:
        raise ValueError("max_paraphrases must be >= 1")
    pset = ensure_scores(pset)
    matrix = pset.score_matrix
    assert matrix is not None

    original_len = len(tokenize(pset.original.text))
    para_len = [len(tokenize(p.text)) for p in pset.paraphrases]

    keep = list(range(1, 1 + len(pset.paraphrases)))  # matrix indices
    removed: list[str] = []

    while len(keep) > max_paraphrases:
        nodes = [0] + keep
        best_pair = None
        best_score = float("-inf")
        for pos_a, a in enumerate(nodes):
            for b in nodes[pos_a + 1 :]:
                if matrix[a][b] > best_score:
                    best_score = matrix[a][b]
                    best_pair = (a, b)
        assert best_pair is not None
        a, b = best_pair
        if a == 0:
            victim = b
        else:
            short_a = 3 * para_len[a - 1] < 2 * original_len
            short_b = 3 * para_len[b - 1] < 2 * original_len
            if short_a != short_b:
                victim = a if short_a else b
            else:
                sum_a = sum(matrix[a][x] for x in nodes if x != a)
                sum_b = sum(matrix[b][x] for x in nodes if x != b)
                if sum_a > sum_b:
                    victim = a
                elif sum_b > sum_a:
                    victim = b
                else:
                    victim = max(a, b)
        keep.remove(victim)
        removed.append(pset.paraphrases[victim - 1].id)

    surviving = [0] + keep
    submatrix = tuple(tuple(matrix[i][j] for j in surviving) for i in surviving)
    filtered = ParaphraseSet(
        original=pset.original,
        paraphrases=tuple(pset.paraphrases[k - 1] for k in keep),
        score_matrix=submatrix,
    )
    return filtered, removed


def template_key(parse: ConstituencyTree | str, height: int = 3) -> str:
    """Canonical serialization of a parse pruned at ``height``."""
    tree = parse_tree(parse) if isinstance(parse, str) else parse
    return serialize_tree(prune(tree, height).root)


@dataclass
class TemplateCorpus:
    """Co-occurrence counts of (source pruned parse, target pruned parse)."""

    counts: dict[tuple[str, str], int]

    def __post_init__(self):
        if any(count < 1 for count in self.counts.values()):
            raise ValueError("pair counts must be >= 1")

    @classmethod
    def from_parse_pairs(
        cls, pairs: Iterable[tuple[str, str]], height: int = 3
    ) -> "TemplateCorpus":
        """Build from raw bracketed parse pairs, pruning each side."""
        counts: dict[tuple[str, str], int] = {}
        for source, target in pairs:
            key = (template_key(source, height), template_key(target, height))
            counts[key] = counts.get(key, 0) + 1
        return cls(counts)

    def source_keys(self) -> list[str]:
        return sorted({source for source, _ in self.counts})

    def targets_for(self, source_key: str) -> dict[str, int]:
        out = {
            target: count
            for (source, target), count in self.counts.items()
            if source == source_key
        }
        if not out:
            raise ValueError(f"unknown source parse key: {source_key!r}")
        return out


def select_source_parses(
    sentence_parse: ConstituencyTree | str,
    corpus: TemplateCorpus,
    top_k: int = 2,
    *,
    height: int = 3,
    weights: Sequence[float] = (1 / 3, 1 / 3, 1 / 3),
) -> list[str]:
    """Source keys most similar to the sentence's pruned parse.

    Every distinct source key is scored by weighted ROUGE between the
    level-order label sequences of the pruned parses; the ``top_k`` keys are
    returned, ranked by score with ties broken lexicographically.
    """
    if not corpus.counts:
        raise ValueError("template corpus is empty")
    tree = (
        parse_tree(sentence_parse)
        if isinstance(sentence_parse, str)
        else sentence_parse
    )
    reference = level_order(prune(tree, height).root)
    scored = []
    for key in corpus.source_keys():
        candidate = level_order(parse_tree(key))
        scored.append((-weighted_rouge(reference, candidate, weights), key))
    scored.sort()
    return [key for _, key in scored[:top_k]]


def sample_target_parses(
    source_key: str,
    corpus: TemplateCorpus,
    n: int = 5,
    seed: int = 0,
) -> list[str]:
    """Draw ``n`` distinct target keys for a source, without replacement.

    Each draw picks among the remaining targets with probability
    proportional to their co-occurrence counts. Deterministic for a given
    seed and corpus content (targets are walked in sorted-key order). Asking
    for more targets than exist returns them all, in draw order.
    """
    remaining = sorted(corpus.targets_for(source_key).items())
    rng = random.Random(seed)
    picks: list[str] = []
    for _ in range(min(n, len(remaining))):
        total = sum(count for _, count in remaining)
        point = rng.random() * total
        cumulative = 0.0
        for index, (target, count) in enumerate(remaining):
            cumulative += count
            if point < cumulative:
                picks.append(target)
                del remaining[index]
                break
    return picks
