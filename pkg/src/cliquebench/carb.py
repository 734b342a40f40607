"""All-pair tuple matching for open information extraction outputs.

Scoring follows the matching-table scheme used by token-exact OpenIE
benchmarks: token-level precision/recall in every gold x system cell,
sentence recall from the row maxima, sentence precision from a greedy
one-to-one matching taken in best-cell-score order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .textmetrics import tokenize

__all__ = [
    "TokenList",
    "ExtractionTuple",
    "MatchCell",
    "MatchTable",
    "SentenceScore",
    "cell_score",
    "match_table",
    "carb_score",
]

TokenList = tuple[str, ...]


def _harmonic(p: float, r: float) -> float:
    return 0.0 if p + r == 0.0 else 2.0 * p * r / (p + r)


@dataclass(frozen=True)
class ExtractionTuple:
    """One predicate with ordered arguments, optionally time/location.

    ``confidence`` is carried along but ignored by scoring.
    """

    predicate: TokenList
    args: tuple[TokenList, ...]
    time: TokenList | None = None
    location: TokenList | None = None
    confidence: float | None = None

    def __post_init__(self):
        if not self.predicate:
            raise ValueError("extraction needs a non-empty predicate")
        if not self.args:
            raise ValueError("extraction needs at least one argument")

    @classmethod
    def from_strings(
        cls,
        predicate: str,
        args: Sequence[str],
        time: str | None = None,
        location: str | None = None,
        confidence: float | None = None,
    ) -> "ExtractionTuple":
        """Build a tuple from raw text fields, tokenizing each slot."""
        return cls(
            predicate=tuple(tokenize(predicate)),
            args=tuple(tuple(tokenize(a)) for a in args),
            time=tuple(tokenize(time)) if time else None,
            location=tuple(tokenize(location)) if location else None,
            confidence=confidence,
        )

    def slots(self) -> tuple[TokenList, ...]:
        """Predicate, then arguments, with time/location as trailing slots."""
        extra = tuple(s for s in (self.time, self.location) if s is not None)
        return (self.predicate, *self.args, *extra)

    def token_count(self) -> int:
        return sum(len(slot) for slot in self.slots())


@dataclass(frozen=True)
class MatchCell:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MatchTable:
    """Gold x system grid of cell scores (rows: gold, columns: system)."""

    cells: tuple[tuple[MatchCell, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0


@dataclass(frozen=True)
class SentenceScore:
    precision: float
    recall: float
    f1: float
    matched_pairs: tuple[tuple[int, int], ...] = ()


def cell_score(gold: ExtractionTuple, system: ExtractionTuple) -> MatchCell:
    """Token-level precision/recall of one system tuple against one gold tuple.

    Slots are aligned positionally; matched tokens per slot are counted as
    multiset intersections, so a repeated word only matches up to its
    multiplicity. Precision divides by the system token total, recall by
    the gold token total.
    """
    matched = 0
    for gslot, sslot in zip(gold.slots(), system.slots()):
        matched += sum((Counter(gslot) & Counter(sslot)).values())
    gold_total = gold.token_count()
    system_total = system.token_count()
    precision = matched / system_total if system_total else 0.0
    recall = matched / gold_total if gold_total else 0.0
    return MatchCell(precision, recall, _harmonic(precision, recall))


def match_table(
    gold: Sequence[ExtractionTuple], system: Sequence[ExtractionTuple]
) -> MatchTable:
    return MatchTable(
        tuple(tuple(cell_score(g, s) for s in system) for g in gold)
    )


def carb_score(
    gold: Sequence[ExtractionTuple], system: Sequence[ExtractionTuple]
) -> SentenceScore:
    """Sentence-level precision/recall/F1 from the all-pair matching table.

    Recall averages the best cell recall of every gold row. Precision comes
    from a greedy one-to-one matching: cells are visited by descending cell
    F1 (ties by gold index, then system index); matched system tuples
    contribute their cell precision, unmatched ones contribute 0, and the
    sum is divided by the system tuple count. An empty system list scores
    (0, 0, 0); an empty gold list is an error since such sentences are
    excluded from benchmarks.
    """
    gold = list(gold)
    system = list(system)
    if not gold:
        raise ValueError("cannot score a sentence without gold extractions")
    if not system:
        return SentenceScore(0.0, 0.0, 0.0, ())

    table = match_table(gold, system).cells
    recall = sum(max(cell.recall for cell in row) for row in table) / len(gold)

    order = sorted(
        ((gi, si) for gi in range(len(gold)) for si in range(len(system))),
        key=lambda pair: (-table[pair[0]][pair[1]].f1, pair[0], pair[1]),
    )
    used_gold: set[int] = set()
    used_system: set[int] = set()
    matched: list[tuple[int, int]] = []
    for gi, si in order:
        if table[gi][si].f1 <= 0.0:
            break
        if gi in used_gold or si in used_system:
            continue
        used_gold.add(gi)
        used_system.add(si)
        matched.append((gi, si))
    precision = sum(table[gi][si].precision for gi, si in matched) / len(system)
    return SentenceScore(precision, recall, _harmonic(precision, recall), tuple(matched))
