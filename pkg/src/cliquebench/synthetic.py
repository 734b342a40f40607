"""Seeded synthetic benchmarks for tests, demos and determinism checks.

Generates cliques of loosely related sentences with simple constituency
parses, gold tuples sliced from the sentence tokens, and corrupted system
predictions. Everything is driven by one ``random.Random`` instance, so a
seed pins the full benchmark.
"""

from __future__ import annotations

import random
from typing import Sequence

from .carb import ExtractionTuple
from .robustness import Clique, SentenceEntry

__all__ = ["make_benchmark", "make_clique", "corrupt_predictions"]

_WORDS = (
    "the a committee budget report engineer river bridge crew survey plan "
    "town council deadline harvest road valley station garden market winter "
    "approved inspected repaired crossed measured drafted rejected opened "
    "closed funded delayed visited northern old narrow final annual quiet "
    "yesterday quickly carefully twice again nearby"
).split()

_PHRASE_LABELS = ("NP", "VP", "PP", "ADJP", "ADVP", "SBAR")
_POS_LABELS = ("DT", "NN", "VB", "JJ", "IN", "RB")


def _random_tokens(rng: random.Random, low: int, high: int) -> list[str]:
    return [rng.choice(_WORDS) for _ in range(rng.randint(low, high))]


def _parse_over(rng: random.Random, tokens: Sequence[str], label: str = "S") -> str:
    if len(tokens) == 1:
        return f"({rng.choice(_POS_LABELS)} {tokens[0]})"
    if len(tokens) == 2 or rng.random() < 0.3:
        inner = " ".join(f"({rng.choice(_POS_LABELS)} {t})" for t in tokens)
        return f"({label} {inner})"
    split = rng.randint(1, len(tokens) - 1)
    left = _parse_over(rng, tokens[:split], rng.choice(_PHRASE_LABELS))
    right = _parse_over(rng, tokens[split:], rng.choice(_PHRASE_LABELS))
    return f"({label} {left} {right})"


def _random_gold(rng: random.Random, tokens: Sequence[str]) -> list[ExtractionTuple]:
    gold = []
    for _ in range(rng.randint(1, 3)):
        predicate = [rng.choice(tokens)]
        n_args = rng.randint(1, 3)
        args = []
        for _ in range(n_args):
            start = rng.randrange(len(tokens))
            end = min(len(tokens), start + rng.randint(1, 3))
            args.append(list(tokens[start:end]))
        gold.append(
            ExtractionTuple(
                predicate=tuple(predicate),
                args=tuple(tuple(a) for a in args),
            )
        )
    return gold


def make_clique(rng: random.Random, clique_id: str, size: int) -> Clique:
    """One clique: ``size`` sentence variants over a shared token pool."""
    base = _random_tokens(rng, 5, 9)
    sentences = []
    for index in range(size):
        tokens = list(base)
        if index:
            rng.shuffle(tokens)
            for _ in range(rng.randint(0, 2)):
                tokens[rng.randrange(len(tokens))] = rng.choice(_WORDS)
            if len(tokens) > 4 and rng.random() < 0.5:
                tokens.pop(rng.randrange(len(tokens)))
        sentences.append(
            SentenceEntry(
                id=f"{clique_id}-s{index}",
                text=" ".join(tokens),
                parse=_parse_over(rng, tokens),
                gold=tuple(_random_gold(rng, tokens)),
            )
        )
    return Clique(id=clique_id, sentences=tuple(sentences))


def corrupt_predictions(
    rng: random.Random, cliques: Sequence[Clique]
) -> dict[str, list[ExtractionTuple]]:
    """Noisy system outputs: dropped/mangled tuples plus occasional junk."""
    outputs: dict[str, list[ExtractionTuple]] = {}
    for clique in cliques:
        for entry in clique.sentences:
            predicted: list[ExtractionTuple] = []
            for gold in entry.gold:
                if rng.random() < 0.2:
                    continue  # missed extraction
                args = []
                for arg in gold.args:
                    tokens = [
                        rng.choice(_WORDS) if rng.random() < 0.15 else t for t in arg
                    ]
                    if len(tokens) > 1 and rng.random() < 0.2:
                        tokens.pop(rng.randrange(len(tokens)))
                    args.append(tuple(tokens))
                predicted.append(
                    ExtractionTuple(
                        predicate=gold.predicate,
                        args=tuple(args),
                        confidence=round(rng.random(), 3),
                    )
                )
            if rng.random() < 0.15:
                predicted.append(
                    ExtractionTuple(
                        predicate=(rng.choice(_WORDS),),
                        args=(tuple(_random_tokens(rng, 1, 3)),),
                        confidence=round(rng.random(), 3),
                    )
                )
            outputs[entry.id] = predicted
    return outputs


def make_benchmark(
    seed: int,
    n_cliques: int,
    size_range: tuple[int, int] = (2, 4),
) -> tuple[list[Clique], dict[str, list[ExtractionTuple]]]:
    """A seeded benchmark plus matching noisy predictions."""
    rng = random.Random(seed)
    cliques = [
        make_clique(rng, f"c{i:04d}", rng.randint(*size_range))
        for i in range(n_cliques)
    ]
    return cliques, corrupt_predictions(rng, cliques)
