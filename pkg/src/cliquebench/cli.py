"""Command-line interface.

Subcommands: ``score``, ``robust-score``, ``syntax``, ``filter``,
``sample-templates``, and the ``analyze`` family (``divergence``,
``variance``, ``vocab``). All outputs are deterministic given the inputs,
flags, and seed; reports embed the toolkit version and effective settings.

Exit codes: 0 on success, 1 on validation errors in the input data, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .analysis import (
    inter_clique_sweep,
    intra_clique_divergence,
    pearson,  # noqa: F401  (re-exported for scripts using `from cliquebench.cli import *`)
    variance_analysis,
    vocab_stats,
)
from .cliques import diversity_filter, sample_target_parses, select_source_parses
from .formats import (
    FormatError,
    dump_paraphrase_set,
    fill_missing_predictions,
    load_benchmark,
    load_paraphrase_set,
    load_predictions,
    load_template_pairs,
    paraphrase_set_to_json,
    remap_predictions_by_text,
)
from .robustness import score_benchmark
from .syntax import CtkConfig, HwsConfig, ctk_similarity, hws_distance
from .textmetrics import tokenize
from .trees import TreeParseError, parse_tree

__all__ = ["run_cli", "main"]


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1]: {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _weight_list(text: str) -> list[float]:
    try:
        weights = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight list: {text!r}")
    if not weights or any(not 0.0 < w <= 1.0 for w in weights):
        raise argparse.ArgumentTypeError("weights must lie in (0, 1]")
    return weights


_DEFAULT_WEIGHTS = [round(0.1 * i, 1) for i in range(1, 11)]


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _score_json(score) -> dict:
    return {
        "precision": score.precision,
        "recall": score.recall,
        "f1": score.f1,
    }


def _load_outputs(args, cliques):
    predictions = load_predictions(args.pred, args.format)
    if args.format == "tsv":
        return remap_predictions_by_text(predictions, cliques)
    return fill_missing_predictions(predictions, cliques)


def _cmd_score(args) -> int:
    cliques = load_benchmark(args.benchmark)
    outputs = _load_outputs(args, cliques)
    from .carb import carb_score

    sentences = []
    scores = []
    for clique in cliques:
        for entry in clique.sentences:
            score = carb_score(entry.gold, outputs[entry.id])
            scores.append(score)
            sentences.append({"id": entry.id, **_score_json(score)})
    n = len(scores)
    report = {
        "version": __version__,
        "config": {
            "benchmark": str(args.benchmark),
            "predictions": str(args.pred),
            "format": args.format,
        },
        "mean": {
            "precision": sum(s.precision for s in scores) / n,
            "recall": sum(s.recall for s in scores) / n,
            "f1": sum(s.f1 for s in scores) / n,
        },
        "sentences": sentences,
    }
    _write_text(_json_text(report), args.out)
    return 0


def _cmd_robust_score(args) -> int:
    cliques = load_benchmark(args.benchmark)
    outputs = _load_outputs(args, cliques)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            report = score_benchmark(
                cliques, outputs, weight_by_size=args.weighted, mapper=pool.map
            )
    else:
        report = score_benchmark(cliques, outputs, weight_by_size=args.weighted)

    payload = {
        "version": __version__,
        "config": {
            "benchmark": str(args.benchmark),
            "predictions": str(args.pred),
            "format": args.format,
            "weighted": args.weighted,
        },
        "mean_robust": {
            "precision": report.mean_robust_precision,
            "recall": report.mean_robust_recall,
            "f1": report.mean_robust_f1,
        },
        "mean_carb": {
            "precision": report.mean_carb_precision,
            "recall": report.mean_carb_recall,
            "f1": report.mean_carb_f1,
        },
        "cliques": [
            {
                "id": cs.clique_id,
                "worst_index": cs.worst_index,
                "robust": _score_json(cs.robust),
                "per_sentence": [_score_json(s) for s in cs.per_sentence],
            }
            for cs in report.clique_scores
        ],
    }
    _write_text(_json_text(payload), args.out)
    if args.per_clique_csv:
        with open(args.per_clique_csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                ["clique_id", "worst_index", "robust_precision", "robust_recall", "robust_f1"]
            )
            for cs in report.clique_scores:
                writer.writerow(
                    [
                        cs.clique_id,
                        cs.worst_index,
                        repr(cs.robust.precision),
                        repr(cs.robust.recall),
                        repr(cs.robust.f1),
                    ]
                )
    return 0


def _read_tree_lines(path: str) -> list:
    trees = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                trees.append(parse_tree(line.strip()))
            except TreeParseError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return trees


def _cmd_syntax(args) -> int:
    left = _read_tree_lines(args.trees_a)
    right = _read_tree_lines(args.trees_b)
    if len(left) != len(right):
        raise FormatError(
            f"tree files differ in length: {len(left)} vs {len(right)}"
        )
    values = []
    if args.alg == "hws":
        cfg = HwsConfig(alpha=args.alpha, height=args.height, min_run=args.min_run)
        for a, b in zip(left, right):
            values.append(hws_distance(a, b, cfg, include_words=not args.drop_words))
    else:
        cfg = CtkConfig(decay=args.lam)
        for a, b in zip(left, right):
            values.append(ctk_similarity(a, b, cfg))
    _write_text("".join(f"{v!r}\n" for v in values), args.out)
    return 0


def _cmd_filter(args) -> int:
    pset = load_paraphrase_set(args.input)
    filtered = diversity_filter(pset, args.max_paraphrases)
    if args.out:
        dump_paraphrase_set(filtered, args.out)
    else:
        sys.stdout.write(_json_text(paraphrase_set_to_json(filtered)))
    return 0


def _cmd_sample_templates(args) -> int:
    corpus = load_template_pairs(args.pairs, height=args.height)
    if args.source:
        sources = [args.source]
    else:
        sources = select_source_parses(
            args.parse, corpus, args.top_k, height=args.height
        )
    result = {
        "version": __version__,
        "config": {"n": args.n, "seed": args.seed, "top_k": args.top_k},
        "sources": [
            {
                "key": key,
                "targets": sample_target_parses(key, corpus, args.n, args.seed),
            }
            for key in sources
        ],
    }
    _write_text(_json_text(result), args.out)
    return 0


def _cmd_analyze_divergence(args) -> int:
    cliques = load_benchmark(args.benchmark)
    hws_cfg = HwsConfig(alpha=args.alpha, height=args.height, min_run=args.min_run)
    curve = inter_clique_sweep(cliques, args.weights, hws=hws_cfg)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["weight", "mean_hws", "mean_ctk"])
    for point in curve:
        writer.writerow([repr(point.weight), repr(point.mean_hws), repr(point.mean_ctk)])
    _write_text(buffer.getvalue(), args.out)
    if args.per_clique:
        with open(args.per_clique, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["clique_id", "weight", "mean_hws", "mean_ctk"])
            for clique in cliques:
                for profile in intra_clique_divergence(clique, args.weights, hws=hws_cfg):
                    writer.writerow(
                        [
                            profile.clique_id,
                            repr(profile.weight),
                            repr(profile.mean_hws),
                            repr(profile.mean_ctk),
                        ]
                    )
    return 0


def _cmd_analyze_variance(args) -> int:
    cliques = load_benchmark(args.benchmark)
    outputs = _load_outputs(args, cliques)
    report = score_benchmark(cliques, outputs)
    hws_cfg = HwsConfig(alpha=args.weight, height=args.height, min_run=args.min_run)
    profiles = []
    for clique in cliques:
        profiles.extend(intra_clique_divergence(clique, [args.weight], hws=hws_cfg))
    result = variance_analysis(report, profiles, bins=args.bins)

    def curve_json(curve):
        return {
            "edges": list(curve.edges),
            "counts": list(curve.counts),
            "mean_variance": list(curve.mean_variance),
        }

    payload = {
        "version": __version__,
        "config": {
            "benchmark": str(args.benchmark),
            "predictions": str(args.pred),
            "format": args.format,
            "weight": args.weight,
            "bins": args.bins,
        },
        "records": [
            {
                "clique_id": r.clique_id,
                "f1_variance": r.f1_variance,
                "mean_hws": r.mean_hws,
                "mean_ctk": r.mean_ctk,
            }
            for r in result.records
        ],
        "hws_curve": curve_json(result.hws_curve),
        "ctk_curve": curve_json(result.ctk_curve),
        "variance_histogram": {
            "edges": list(result.variance_histogram.edges),
            "counts": list(result.variance_histogram.counts),
        },
    }
    _write_text(_json_text(payload), args.out)
    return 0


def _cmd_analyze_vocab(args) -> int:
    cliques = load_benchmark(args.benchmark)
    sentences = [entry for clique in cliques for entry in clique.sentences]
    stats = vocab_stats(sentences)
    payload = {
        "version": __version__,
        "vocab_size": stats.vocab_size,
        "token_count": stats.token_count,
        "sentences": len(sentences),
    }
    _write_text(_json_text(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquebench",
        description="Evaluation toolkit for open information extraction robustness.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, pred=False, syntax=False, seed=False):
        p.add_argument("--out", help="output file (default: stdout)")
        if pred:
            p.add_argument("--benchmark", required=True, help="clique benchmark JSONL")
            p.add_argument("--pred", required=True, help="system predictions file")
            p.add_argument(
                "--format",
                choices=("jsonl", "tsv"),
                default="jsonl",
                help="predictions file format",
            )
        if syntax:
            p.add_argument("--alpha", type=_unit_interval, default=0.5)
            p.add_argument("--lambda", dest="lam", type=_unit_interval, default=0.5)
            p.add_argument("--height", type=_positive_int, default=3)
            p.add_argument("--min-run", type=int, choices=(1, 2), default=2)
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("score", help="per-sentence tuple-match scores")
    add_common(p, pred=True)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("robust-score", help="clique-wise worst-case scores")
    add_common(p, pred=True)
    p.add_argument("--weighted", action="store_true", help="weight cliques by size")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--per-clique-csv", help="also write a per-clique CSV")
    p.set_defaults(func=_cmd_robust_score)

    p = sub.add_parser("syntax", help="pairwise tree distance/similarity")
    add_common(p, syntax=True)
    p.add_argument("--alg", choices=("hws", "ctk"), required=True)
    p.add_argument("--drop-words", action="store_true", help="exclude word tokens")
    p.add_argument("trees_a", help="file with one bracketed tree per line")
    p.add_argument("trees_b", help="file with one bracketed tree per line")
    p.set_defaults(func=_cmd_syntax)

    p = sub.add_parser("filter", help="diversify a paraphrase set")
    add_common(p)
    p.add_argument("--input", required=True, help="paraphrase set JSON")
    p.add_argument("--max-paraphrases", type=_positive_int, default=3)
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("sample-templates", help="sample target parse templates")
    add_common(p, seed=True)
    p.add_argument("--pairs", required=True, help="TSV of source/target parses")
    p.add_argument("--height", type=_positive_int, default=3)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--source", help="pruned source parse key")
    group.add_argument("--parse", help="full sentence parse to match sources for")
    p.add_argument("--top-k", type=_positive_int, default=2)
    p.add_argument("--n", type=_positive_int, default=5)
    p.set_defaults(func=_cmd_sample_templates)

    analyze = sub.add_parser("analyze", help="divergence/variance/vocab analysis")
    analyze_sub = analyze.add_subparsers(dest="analysis", required=True)

    p = analyze_sub.add_parser("divergence", help="syntactic divergence sweep")
    add_common(p, syntax=True)
    p.add_argument("--benchmark", required=True)
    p.add_argument(
        "--weights",
        type=_weight_list,
        default=_DEFAULT_WEIGHTS,
        help="comma-separated discount weights",
    )
    p.add_argument("--per-clique", help="also write per-clique CSV")
    p.set_defaults(func=_cmd_analyze_divergence)

    p = analyze_sub.add_parser("variance", help="F1 variance vs divergence")
    add_common(p, pred=True, syntax=True)
    p.add_argument("--weight", type=_unit_interval, default=0.5)
    p.add_argument("--bins", type=_positive_int, default=5)
    p.set_defaults(func=_cmd_analyze_variance)

    p = analyze_sub.add_parser("vocab", help="vocabulary statistics")
    add_common(p)
    p.add_argument("--benchmark", required=True)
    p.set_defaults(func=_cmd_analyze_vocab)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (FormatError, TreeParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run_cli())
