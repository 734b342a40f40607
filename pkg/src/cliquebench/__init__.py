"""Evaluation toolkit for open information extraction robustness.

Covers bracketed constituency trees, syntactic distance/similarity metrics,
sentence-level text metrics, all-pair tuple-match scoring, clique-wise
worst-case robustness scoring, paraphrase diversity filtering, syntactic
template sampling, and the accompanying analysis utilities.
"""

__version__ = "0.1.0"

from .analysis import (
    BinnedCurve,
    DivergenceProfile,
    Histogram,
    SweepPoint,
    VarianceAnalysis,
    VarianceRecord,
    VocabStats,
    inter_clique_sweep,
    intra_clique_divergence,
    pearson,
    variance_analysis,
    vocab_stats,
)
from .carb import (
    ExtractionTuple,
    MatchCell,
    MatchTable,
    SentenceScore,
    carb_score,
    cell_score,
    match_table,
)
from .cliques import (
    ParaphraseSet,
    TemplateCorpus,
    diversity_filter,
    diversity_filter_trace,
    ensure_scores,
    sample_target_parses,
    select_source_parses,
    template_key,
)
from .formats import (
    FormatError,
    dump_benchmark,
    dump_paraphrase_set,
    load_benchmark,
    load_paraphrase_set,
    load_predictions,
    load_template_pairs,
)
from .robustness import (
    BenchmarkReport,
    Clique,
    CliqueScore,
    SentenceEntry,
    score_benchmark,
    score_clique,
    worst_case,
)
from .syntax import (
    CtkConfig,
    HwsConfig,
    HwsState,
    RunRecord,
    ctk_kernel,
    ctk_kernel_bruteforce,
    ctk_similarity,
    hws_distance,
    hws_distance_oracle,
    hws_scan,
    hws_sequence_distance,
)
from .textmetrics import BleuConfig, bleu, tokenize, weighted_rouge
from .trees import (
    ConstituencyTree,
    LabelSequence,
    PrunedTree,
    TreeParseError,
    level_order,
    parse_tree,
    prune,
    serialize_tree,
)
from .cli import run_cli

__all__ = [name for name in dir() if not name.startswith("_")]
