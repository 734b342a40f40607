"""File formats: benchmark JSONL, predictions JSONL/TSV, paraphrase sets,
template pair TSV.

The native formats are JSON-lines; the TSV predictions reader exists for
interoperability with the output conventions of existing extraction
systems. Loaders validate eagerly and report the offending line; text
fields are normalized through the shared tokenizer, so re-serialized files
are canonical (lowercased, space-joined tokens).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .carb import ExtractionTuple
from .cliques import ParaphraseSet, TemplateCorpus
from .robustness import Clique, SentenceEntry

__all__ = [
    "FormatError",
    "load_benchmark",
    "dump_benchmark",
    "load_predictions",
    "load_paraphrase_set",
    "dump_paraphrase_set",
    "load_template_pairs",
    "tuple_to_json",
]


class FormatError(ValueError):
    """Invalid input file content; messages carry file and line context."""


def _text(value, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise FormatError(f"{where}: expected a non-empty string")
    return value


def _tuple_from_json(obj, where: str) -> ExtractionTuple:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: extraction must be an object")
    if "predicate" not in obj or "args" not in obj:
        raise FormatError(f"{where}: extraction needs 'predicate' and 'args'")
    args = obj["args"]
    if not isinstance(args, list) or not args:
        raise FormatError(f"{where}: 'args' must be a non-empty list")
    confidence = obj.get("confidence")
    if confidence is not None and not isinstance(confidence, (int, float)):
        raise FormatError(f"{where}: 'confidence' must be a number")
    try:
        return ExtractionTuple.from_strings(
            predicate=_text(obj["predicate"], where),
            args=[_text(a, where) for a in args],
            time=obj.get("time"),
            location=obj.get("location"),
            confidence=float(confidence) if confidence is not None else None,
        )
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def tuple_to_json(extraction: ExtractionTuple) -> dict:
    out: dict = {
        "predicate": " ".join(extraction.predicate),
        "args": [" ".join(a) for a in extraction.args],
    }
    if extraction.time is not None:
        out["time"] = " ".join(extraction.time)
    if extraction.location is not None:
        out["location"] = " ".join(extraction.location)
    if extraction.confidence is not None:
        out["confidence"] = extraction.confidence
    return out


def _jsonl_records(path: str | Path) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise FormatError(f"{path}:{lineno}: expected a JSON object")
            yield lineno, obj


def load_benchmark(path: str | Path) -> list[Clique]:
    """Read a clique benchmark (one clique per JSONL line).

    Clique and sentence ids must be unique across the file and every
    sentence needs at least one gold extraction.
    """
    cliques: list[Clique] = []
    seen_cliques: set[str] = set()
    seen_sentences: set[str] = set()
    for lineno, obj in _jsonl_records(path):
        where = f"{path}:{lineno}"
        clique_id = _text(obj.get("id"), f"{where}: clique 'id'")
        if clique_id in seen_cliques:
            raise FormatError(f"{where}: duplicate clique id {clique_id!r}")
        seen_cliques.add(clique_id)
        raw_sentences = obj.get("sentences")
        if not isinstance(raw_sentences, list) or not raw_sentences:
            raise FormatError(f"{where}: clique {clique_id!r} needs a non-empty 'sentences' list")
        sentences = []
        for raw in raw_sentences:
            if not isinstance(raw, dict):
                raise FormatError(f"{where}: sentence must be an object")
            sentence_id = _text(raw.get("id"), f"{where}: sentence 'id'")
            if sentence_id in seen_sentences:
                raise FormatError(f"{where}: duplicate sentence id {sentence_id!r}")
            seen_sentences.add(sentence_id)
            gold = raw.get("gold")
            if not isinstance(gold, list) or not gold:
                raise FormatError(
                    f"{where}: sentence {sentence_id!r} has no gold extractions"
                )
            parse = raw.get("parse")
            if parse is not None:
                parse = _text(parse, f"{where}: sentence 'parse'")
            sentences.append(
                SentenceEntry(
                    id=sentence_id,
                    text=_text(raw.get("text"), f"{where}: sentence 'text'"),
                    parse=parse,
                    gold=tuple(
                        _tuple_from_json(g, f"{where}: sentence {sentence_id!r}")
                        for g in gold
                    ),
                )
            )
        cliques.append(Clique(id=clique_id, sentences=tuple(sentences)))
    return cliques


def clique_to_json(clique: Clique) -> dict:
    sentences = []
    for entry in clique.sentences:
        record: dict = {"id": entry.id, "text": entry.text}
        if entry.parse is not None:
            record["parse"] = entry.parse
        record["gold"] = [tuple_to_json(g) for g in entry.gold]
        sentences.append(record)
    return {"id": clique.id, "sentences": sentences}


def dump_benchmark(cliques: Sequence[Clique], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for clique in cliques:
            handle.write(json.dumps(clique_to_json(clique), sort_keys=True) + "\n")


def load_predictions(
    path: str | Path, fmt: str = "jsonl"
) -> dict[str, list[ExtractionTuple]]:
    """Read system extractions grouped per sentence.

    ``jsonl`` records are ``{"sentence_id", "extractions": [...]}`` keyed by
    sentence id; ``tsv`` rows are
    ``sentence<TAB>confidence<TAB>predicate<TAB>arg1[<TAB>arg2...]`` keyed by
    the exact sentence text, with an optional empty confidence field.
    """
    if fmt == "jsonl":
        return _load_predictions_jsonl(path)
    if fmt == "tsv":
        return _load_predictions_tsv(path)
    raise FormatError(f"unknown predictions format: {fmt!r}")


def _load_predictions_jsonl(path: str | Path) -> dict[str, list[ExtractionTuple]]:
    out: dict[str, list[ExtractionTuple]] = {}
    for lineno, obj in _jsonl_records(path):
        where = f"{path}:{lineno}"
        sentence_id = _text(obj.get("sentence_id"), f"{where}: 'sentence_id'")
        extractions = obj.get("extractions")
        if not isinstance(extractions, list):
            raise FormatError(f"{where}: 'extractions' must be a list")
        bucket = out.setdefault(sentence_id, [])
        bucket.extend(_tuple_from_json(e, where) for e in extractions)
    return out


def _load_predictions_tsv(path: str | Path) -> dict[str, list[ExtractionTuple]]:
    out: dict[str, list[ExtractionTuple]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) < 4:
                raise FormatError(
                    f"{path}:{lineno}: expected at least 4 tab-separated fields, "
                    f"got {len(fields)}"
                )
            sentence, raw_confidence, predicate = fields[0], fields[1], fields[2]
            if raw_confidence.strip():
                try:
                    confidence = float(raw_confidence)
                except ValueError as exc:
                    raise FormatError(
                        f"{path}:{lineno}: bad confidence {raw_confidence!r}"
                    ) from exc
            else:
                confidence = None
            try:
                extraction = ExtractionTuple.from_strings(
                    predicate=predicate, args=fields[3:], confidence=confidence
                )
            except ValueError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from exc
            out.setdefault(sentence, []).append(extraction)
    return out


def load_paraphrase_set(path: str | Path) -> ParaphraseSet:
    """Read a paraphrase set JSON document.

    Shape: ``{"original": {"id", "text"}, "paraphrases": [{"id", "text"}...],
    "score_matrix": [[...]]?}``.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc

    def entry(raw, where) -> SentenceEntry:
        if not isinstance(raw, dict):
            raise FormatError(f"{where}: expected an object")
        return SentenceEntry(
            id=_text(raw.get("id"), f"{where}: 'id'"),
            text=_text(raw.get("text"), f"{where}: 'text'"),
        )

    paraphrases = obj.get("paraphrases")
    if not isinstance(paraphrases, list):
        raise FormatError(f"{path}: 'paraphrases' must be a list")
    matrix = obj.get("score_matrix")
    if matrix is not None:
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
            raise FormatError(f"{path}: 'score_matrix' must be a list of rows")
        matrix = tuple(tuple(float(v) for v in row) for row in matrix)
    try:
        return ParaphraseSet(
            original=entry(obj.get("original"), f"{path}: 'original'"),
            paraphrases=tuple(
                entry(p, f"{path}: paraphrase {i}") for i, p in enumerate(paraphrases)
            ),
            score_matrix=matrix,
        )
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def paraphrase_set_to_json(pset: ParaphraseSet) -> dict:
    out: dict = {
        "original": {"id": pset.original.id, "text": pset.original.text},
        "paraphrases": [{"id": p.id, "text": p.text} for p in pset.paraphrases],
    }
    if pset.score_matrix is not None:
        out["score_matrix"] = [list(row) for row in pset.score_matrix]
    return out


def dump_paraphrase_set(pset: ParaphraseSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(paraphrase_set_to_json(pset), handle, sort_keys=True, indent=2)
        handle.write("\n")


def load_template_pairs(path: str | Path, height: int = 3) -> TemplateCorpus:
    """Read source/target parse pairs from TSV and prune both sides."""
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise FormatError(
                    f"{path}:{lineno}: expected 2 tab-separated parses, got {len(fields)}"
                )
            pairs.append((fields[0], fields[1]))
    try:
        return TemplateCorpus.from_parse_pairs(pairs, height=height)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def remap_predictions_by_text(
    predictions: Mapping[str, list[ExtractionTuple]],
    cliques: Sequence[Clique],
) -> dict[str, list[ExtractionTuple]]:
    """Convert text-keyed predictions (TSV style) to sentence-id keys."""
    out: dict[str, list[ExtractionTuple]] = {}
    for clique in cliques:
        for entry in clique.sentences:
            out[entry.id] = list(predictions.get(entry.text, []))
    return out


def fill_missing_predictions(
    predictions: Mapping[str, list[ExtractionTuple]],
    cliques: Sequence[Clique],
) -> dict[str, list[ExtractionTuple]]:
    """Complete an id-keyed mapping with empty lists for unlisted sentences.

    Prediction files commonly omit sentences with no extractions; scoring
    treats those as empty outputs.
    """
    out = {k: list(v) for k, v in predictions.items()}
    for clique in cliques:
        for entry in clique.sentences:
            out.setdefault(entry.id, [])
    return out
