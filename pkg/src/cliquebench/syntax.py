"""Syntactic comparison metrics over constituency trees.

Two complementary measures:

* :func:`hws_distance` -- a distance in [0, 1] over the level-order label
  sequences of pruned trees. Maximal consecutive matching runs are credited
  with geometrically discounted weight (factor ``alpha`` per previously
  accepted run), so small discounts emphasize the high-level skeleton.
  One-to-one guards stop a span in one sequence from being re-matched
  against repeated copies in the other, which otherwise inflates the
  matched length.
* :func:`ctk_similarity` -- the cosine-normalized convolution tree kernel,
  counting shared tree fragments with decay ``lambda`` per production.

Both are pure functions over immutable trees and safe to call concurrently.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .trees import ConstituencyTree, level_order, prune

__all__ = [
    "HwsConfig",
    "HwsState",
    "RunRecord",
    "CtkConfig",
    "ORACLE_MAX_LEN",
    "hws_scan",
    "hws_sequence_distance",
    "hws_distance",
    "hws_distance_oracle",
    "ctk_kernel",
    "ctk_kernel_bruteforce",
    "ctk_similarity",
]

#: Longest sequence the reference implementation will accept.
ORACLE_MAX_LEN = 10


@dataclass(frozen=True)
class HwsConfig:
    """Settings for the hierarchically weighted sequence distance.

    alpha: discount applied to each successive accepted run, in (0, 1].
    height: pruning height fed to the tree comparison; root depth is 1.
    min_run: smallest length credited to a run that ends mid-sequence.
        2 keeps the asymmetric scheme where mid-sequence runs need length
        at least two but a run reaching the final scanned cell counts at
        any length; 1 credits every run and also closes all runs left
        open at the sequence boundary.
    """

    alpha: float = 0.5
    height: int = 3
    min_run: int = 2

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        if self.height < 1:
            raise ValueError("height must be >= 1")
        if self.min_run not in (1, 2):
            raise ValueError("min_run must be 1 or 2")


@dataclass(frozen=True)
class RunRecord:
    """An accepted matching run; ``row``/``col`` are its 0-based end cell."""

    row: int
    col: int
    length: int
    exponent: int


@dataclass
class HwsState:
    """Full scan state, mainly for tests and diagnostics.

    grid[i][j] holds the length of the accepted diagonal run ending at
    (i, j); row_best/col_best record the longest accepted passage through
    each row/column; total is the discounted accumulated length and count
    the number of accepted runs.
    """

    grid: list[list[int]]
    row_best: list[int]
    col_best: list[int]
    total: float
    count: int
    runs: tuple[RunRecord, ...]


def hws_scan(
    q1: Sequence[str],
    q2: Sequence[str],
    alpha: float,
    min_run: int = 2,
    *,
    guard: bool = True,
) -> HwsState:
    """Row-major scan of the match grid between two label sequences.

    A matching cell extends the diagonal run from its upper-left neighbour
    (or starts a run of length one). With ``guard`` enabled a run may only
    grow through a row/column if it is at least as long as any accepted run
    that already used it, and a finished run is credited only while it still
    holds that record and none of its positions were consumed by an earlier
    credited run. Disabling the guard reproduces the uncorrected scheme that
    over-counts repeated spans; it exists for regression tests only.

    Runs that end mid-sequence are credited when the scan visits the next
    diagonal cell and finds a mismatch, provided their length reaches
    ``min_run``. With ``min_run=2`` only the run ending at the final scanned
    cell is credited afterwards (at any length); with ``min_run=1`` every
    run still open on the last row or column is credited in row-major order.
    Each credited run of length L adds ``L * alpha**m`` where m counts the
    previously credited runs.
    """
    n1, n2 = len(q1), len(q2)
    if n1 == 0 or n2 == 0:
        raise ValueError("label sequences must be non-empty")

    grid = [[0] * n2 for _ in range(n1)]
    row_best = [0] * n1
    col_best = [0] * n2
    used_row = [False] * n1
    used_col = [False] * n2
    runs: list[RunRecord] = []
    total = 0.0

    def credit(i: int, j: int, threshold: int) -> None:
        nonlocal total
        length = grid[i][j]
        if length == 0 or length < threshold:
            return
        if guard:
            if length < row_best[i] or length < col_best[j]:
                return
            rows = range(i - length + 1, i + 1)
            cols = range(j - length + 1, j + 1)
            if any(used_row[r] for r in rows) or any(used_col[c] for c in cols):
                return
            for r in rows:
                used_row[r] = True
            for c in cols:
                used_col[c] = True
        exponent = len(runs)
        runs.append(RunRecord(i, j, length, exponent))
        total += length * alpha**exponent

    for i in range(n1):
        for j in range(n2):
            if q1[i] == q2[j]:
                incoming = grid[i - 1][j - 1] if i and j else 0
                if not guard or (incoming >= row_best[i] and incoming >= col_best[j]):
                    length = incoming + 1
                    grid[i][j] = length
                    if length > row_best[i]:
                        row_best[i] = length
                    if length > col_best[j]:
                        col_best[j] = length
                # else: the incoming run is cut without credit
            elif i and j:
                credit(i - 1, j - 1, min_run)

    if min_run >= 2:
        credit(n1 - 1, n2 - 1, 1)
    else:
        ends = [(n1 - 1, j) for j in range(n2) if grid[n1 - 1][j]]
        ends += [(i, n2 - 1) for i in range(n1 - 1) if grid[i][n2 - 1]]
        for i, j in sorted(ends):
            credit(i, j, 1)

    return HwsState(grid, row_best, col_best, total, len(runs), tuple(runs))


def hws_sequence_distance(
    q1: Sequence[str],
    q2: Sequence[str],
    cfg: HwsConfig = HwsConfig(),
    *,
    guard: bool = True,
) -> float:
    """Distance in [0, 1] between two label sequences; 0 for identical ones.

    With ``guard=False`` (regression mode) the result may leave [0, 1].
    """
    state = hws_scan(q1, q2, cfg.alpha, cfg.min_run, guard=guard)
    return 1.0 - state.total / min(len(q1), len(q2))


def hws_distance(
    t1: ConstituencyTree,
    t2: ConstituencyTree,
    cfg: HwsConfig = HwsConfig(),
    *,
    include_words: bool = True,
    guard: bool = True,
) -> float:
    """Distance between two trees pruned at ``cfg.height``.

    The trees are pruned, linearized in level order, and compared with
    :func:`hws_sequence_distance`. ``include_words=False`` drops word-token
    leaves from the sequences first.
    """
    q1 = level_order(prune(t1, cfg.height).root, include_words=include_words)
    q2 = level_order(prune(t2, cfg.height).root, include_words=include_words)
    if not q1 or not q2:
        raise ValueError("pruned tree yields an empty label sequence")
    return hws_sequence_distance(q1, q2, cfg, guard=guard)


def hws_distance_oracle(
    q1: Sequence[str],
    q2: Sequence[str],
    cfg: HwsConfig = HwsConfig(),
    *,
    guard: bool = True,
) -> float:
    """Reference distance computed from explicit diagonal match segments.

    Enumerates every maximal diagonal run of matching labels and replays the
    row-major crediting schedule over those segments, without the
    dynamic-programming grid used by :func:`hws_sequence_distance`. The two
    must agree exactly; this variant exists to cross-check the scan and
    refuses sequences longer than :data:`ORACLE_MAX_LEN`.
    """
    n1, n2 = len(q1), len(q2)
    if n1 == 0 or n2 == 0:
        raise ValueError("label sequences must be non-empty")
    if n1 > ORACLE_MAX_LEN or n2 > ORACLE_MAX_LEN:
        raise ValueError(f"oracle accepts sequences of length <= {ORACLE_MAX_LEN}")

    # Maximal runs of q1[i] == q2[i + d] along every diagonal offset d.
    segments: list[list[tuple[int, int]]] = []
    for d in range(-(n1 - 1), n2):
        i, j = max(0, -d), max(0, d)
        cells: list[tuple[int, int]] = []
        while i < n1 and j < n2:
            if q1[i] == q2[j]:
                cells.append((i, j))
            elif cells:
                segments.append(cells)
                cells = []
            i += 1
            j += 1
        if cells:
            segments.append(cells)

    MATCH, CLOSE = 0, 1
    events: list[tuple[int, int, int, int]] = []
    for s, cells in enumerate(segments):
        for i, j in cells:
            events.append((i, j, MATCH, s))
        end_i, end_j = cells[-1]
        if end_i + 1 < n1 and end_j + 1 < n2:
            # the next diagonal cell of a maximal segment is always a mismatch
            events.append((end_i + 1, end_j + 1, CLOSE, s))
    events.sort()

    row_best: dict[int, int] = {}
    col_best: dict[int, int] = {}
    used_row: set[int] = set()
    used_col: set[int] = set()
    length_of: dict[int, int] = {}
    accepted: list[int] = []
    total = 0.0

    def credit(end_i: int, end_j: int, length: int, threshold: int) -> None:
        nonlocal total
        if length < threshold:
            return
        if guard:
            if length < row_best.get(end_i, 0) or length < col_best.get(end_j, 0):
                return
            rows = range(end_i - length + 1, end_i + 1)
            cols = range(end_j - length + 1, end_j + 1)
            if any(r in used_row for r in rows) or any(c in used_col for c in cols):
                return
            used_row.update(rows)
            used_col.update(cols)
        total += length * cfg.alpha ** len(accepted)
        accepted.append(length)

    for i, j, kind, s in events:
        if kind == MATCH:
            prev = length_of.get(s, 0)
            if not guard or (prev >= row_best.get(i, 0) and prev >= col_best.get(j, 0)):
                cur = prev + 1
                length_of[s] = cur
                if cur > row_best.get(i, 0):
                    row_best[i] = cur
                if cur > col_best.get(j, 0):
                    col_best[j] = cur
            else:
                length_of[s] = 0
        else:
            length = length_of.get(s, 0)
            if length:
                credit(i - 1, j - 1, length, cfg.min_run)

    boundary = []
    for s, cells in enumerate(segments):
        end_i, end_j = cells[-1]
        if end_i + 1 < n1 and end_j + 1 < n2:
            continue
        length = length_of.get(s, 0)
        if length:
            boundary.append((end_i, end_j, length))
    if cfg.min_run >= 2:
        boundary = [b for b in boundary if (b[0], b[1]) == (n1 - 1, n2 - 1)]
    for end_i, end_j, length in sorted(boundary):
        credit(end_i, end_j, length, 1)

    return 1.0 - total / min(n1, n2)


@dataclass(frozen=True)
class CtkConfig:
    """Settings for the convolution tree kernel.

    decay: weight multiplied in per production of a shared fragment, in
        (0, 1]. Small values down-weight large fragments.
    """

    decay: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.decay <= 1.0:
            raise ValueError("decay must lie in (0, 1]")


def _production(node: ConstituencyTree) -> tuple[str, tuple[str, ...]]:
    return node.label, tuple(c.label for c in node.children)


def _internal_nodes(tree: ConstituencyTree) -> list[ConstituencyTree]:
    out = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.children:
            out.append(node)
            stack.extend(reversed(node.children))
    return out


def ctk_kernel(
    t1: ConstituencyTree, t2: ConstituencyTree, cfg: CtkConfig = CtkConfig()
) -> float:
    """Convolution kernel: decay-weighted count of shared tree fragments.

    Node pairs with different productions contribute nothing; a matching
    production contributes ``decay`` times the product over aligned children
    of (1 + their own contribution). Memoized per invocation.
    """
    memo: dict[tuple[int, int], float] = {}

    def pair_score(a: ConstituencyTree, b: ConstituencyTree) -> float:
        if _production(a) != _production(b):
            return 0.0
        key = (id(a), id(b))
        cached = memo.get(key)
        if cached is not None:
            return cached
        value = cfg.decay
        for ca, cb in zip(a.children, b.children):
            if ca.children and cb.children:
                value *= 1.0 + pair_score(ca, cb)
        memo[key] = value
        return value

    return sum(
        pair_score(a, b)
        for a in _internal_nodes(t1)
        for b in _internal_nodes(t2)
    )


def _fragments(tree: ConstituencyTree) -> Counter:
    """All fragments of ``tree``, keyed by canonical string.

    A fragment is rooted at some internal node; each child is either kept
    whole as a frontier label or expanded with one of its own fragments.
    The number of productions in a fragment equals its count of '('.
    """
    rooted_memo: dict[int, list[str]] = {}

    def rooted(node: ConstituencyTree) -> list[str]:
        cached = rooted_memo.get(id(node))
        if cached is not None:
            return cached
        options = []
        for child in node.children:
            opts = [child.label]
            if child.children:
                opts += rooted(child)
            options.append(opts)
        shapes = [
            "(" + node.label + " " + " ".join(combo) + ")"
            for combo in product(*options)
        ]
        rooted_memo[id(node)] = shapes
        return shapes

    out: Counter = Counter()
    for node in _internal_nodes(tree):
        out.update(rooted(node))
    return out


def ctk_kernel_bruteforce(
    t1: ConstituencyTree, t2: ConstituencyTree, cfg: CtkConfig = CtkConfig()
) -> float:
    """Kernel value by explicit enumeration of common fragments.

    Exponential in tree size; meant to cross-check :func:`ctk_kernel` on
    small trees.
    """
    f1 = _fragments(t1)
    f2 = _fragments(t2)
    return math.fsum(
        count * f2[shape] * cfg.decay ** shape.count("(")
        for shape, count in f1.items()
        if shape in f2
    )


def ctk_similarity(
    t1: ConstituencyTree, t2: ConstituencyTree, cfg: CtkConfig = CtkConfig()
) -> float:
    """Cosine-normalized kernel in [0, 1]; 1 for identical trees.

    By convention 0 when either self-kernel is 0 (trees without a single
    production, i.e. bare leaves).
    """
    self1 = ctk_kernel(t1, t1, cfg)
    self2 = ctk_kernel(t2, t2, cfg)
    if self1 == 0.0 or self2 == 0.0:
        return 0.0
    return ctk_kernel(t1, t2, cfg) / math.sqrt(self1 * self2)
