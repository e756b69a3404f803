"""Accuracy reports (token/type, oracle, cross-domain) and three-way error
overlap analysis."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Sequence

from ._case import simple_lower
from .backends import BackendModel
from .conllu import Corpus, Sentence, Token
from .errors import AlignmentError
from .predictions import CandidateRow, PredictionRow, lemmatize_corpus
from .preprocess import ORIGINAL, PreprocessConfig, normalize_corpus, normalize_lemma

REPORT_SCHEMA_VERSION = 1
TYPE_KEYS = ("form+upos+feats+lemma", "form+feats", "form")


@dataclass
class EvalReport:
    total: int
    correct: int
    mode: str
    skipped: int = 0
    per_upos: dict[str, tuple[int, int]] = field(default_factory=dict)
    skipped_detail: dict[str, int] = field(default_factory=dict)
    oracle: bool = False
    provenance: dict = field(default_factory=dict)

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "mode": self.mode,
            "oracle": self.oracle,
            "total": self.total,
            "correct": self.correct,
            "accuracy": round(self.accuracy, 9),
            "skipped": self.skipped,
            "skipped_detail": dict(sorted(self.skipped_detail.items())),
            "per_upos": {u: {"total": t, "correct": c} for u, (t, c) in sorted(self.per_upos.items())},
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"

    def table(self) -> str:
        head = f"{'oracle ' if self.oracle else ''}{self.mode} accuracy: {100 * self.accuracy:.2f}% ({self.correct}/{self.total}, skipped {self.skipped})"
        rows = [f"  {u:<8} {c:>7}/{t:<7} {100 * c / t:6.2f}%" for u, (t, c) in sorted(self.per_upos.items())]
        return "\n".join([head, *rows]) + "\n"


class _GoldIndex:
    def __init__(self, gold: Corpus):
        self.gold = gold
        self.by_id: dict[str, Sentence] = {}
        for sent in gold.sentences:
            if sent.sent_id in self.by_id:
                raise AlignmentError(f"gold corpus repeats sent_id {sent.sent_id!r}")
            self.by_id[sent.sent_id] = sent

    def index(self, rows: Iterable, source: str = "predictions") -> dict[tuple[str, int], object]:
        out = {}
        for row in rows:
            sent = self.by_id.get(row.sent_id)
            if sent is None or not 1 <= row.token_id <= len(sent.tokens):
                raise AlignmentError(f"{source}: unknown token {row.sent_id!r}/{row.token_id}")
            tok = sent.tokens[row.token_id - 1]
            if simple_lower(row.form) != simple_lower(tok.form):
                raise AlignmentError(
                    f"{source}: form {row.form!r} does not match gold {tok.form!r} at {row.sent_id!r}/{row.token_id}"
                )
            key = (row.sent_id, row.token_id)
            if key in out:
                raise AlignmentError(f"{source}: duplicate row for {row.sent_id!r}/{row.token_id}")
            out[key] = row
        return out


def _type_key(tok: Token, lemma: str, type_key: str):
    if type_key == "form+upos+feats+lemma":
        return (tok.form, tok.upos, tok.canonical_feats, lemma)
    if type_key == "form+feats":
        return (tok.form, tok.canonical_feats)
    if type_key == "form":
        return (tok.form,)
    raise ValueError(f"type_key must be one of {TYPE_KEYS}, not {type_key!r}")


def _score(gold: Corpus, rows_by_key: dict, hit, mode: str, cfg: PreprocessConfig,
           type_key: str, oracle: bool) -> EvalReport:
    if mode not in ("token", "type"):
        raise ValueError(f"mode must be 'token' or 'type', not {mode!r}")
    loose = replace(cfg, keep_degenerate=True)
    gold = normalize_corpus(gold, cfg)
    absent = missing = 0
    seen = set()
    per_upos: dict[str, list[int]] = {}
    for sent, tok in gold.tokens():
        if tok.lemma is None:
            absent += 1
            continue
        row = rows_by_key.get((sent.sent_id, tok.id))
        if row is None:
            missing += 1
            continue
        if mode == "type":
            key = _type_key(tok, tok.lemma, type_key)
            if key in seen:
                continue
            seen.add(key)
        ok = hit(row, tok.lemma, loose)
        counts = per_upos.setdefault(tok.upos, [0, 0])
        counts[0] += 1
        counts[1] += ok
    total = sum(t for t, _ in per_upos.values())
    correct = sum(c for _, c in per_upos.values())
    return EvalReport(
        total, correct, mode, absent + missing,
        {u: (t, c) for u, (t, c) in per_upos.items()},
        {"absent_gold_lemma": absent, "missing_prediction": missing},
        oracle,
        {"gold_source": gold.source_name, "normalize": cfg.to_dict(),
         **({"type_key": type_key} if mode == "type" else {})},
    )


def evaluate(predictions: Iterable[PredictionRow], gold: Corpus, mode: str = "token",
             normalize: PreprocessConfig = ORIGINAL,
             type_key: str = "form+upos+feats+lemma", source: str = "predictions") -> EvalReport:
    """Exact-match lemma accuracy after applying *normalize* to both sides.

    In ``type`` mode each distinct gold type (by default form, UPOS,
    FEATS and lemma) is scored once, using its first occurrence.
    """
    rows = _GoldIndex(gold).index(predictions, source)

    def hit(row, gold_lemma, loose):
        return normalize_lemma(row.lemma, loose) == gold_lemma

    return _score(gold, rows, hit, mode, normalize, type_key, oracle=False)


def oracle_evaluate(candidates: Iterable[CandidateRow], gold: Corpus,
                    normalize: PreprocessConfig = ORIGINAL, mode: str = "token",
                    type_key: str = "form+upos+feats+lemma", source: str = "candidates") -> EvalReport:
    """Count a token correct when its gold lemma is anywhere in the candidates."""
    rows = _GoldIndex(gold).index(candidates, source)

    def hit(row, gold_lemma, loose):
        return any(normalize_lemma(c, loose) == gold_lemma for c in row.candidates)

    return _score(gold, rows, hit, mode, normalize, type_key, oracle=True)


def cross_domain_report(model: BackendModel, train_corpus_name: str, eval_corpus: Corpus,
                        mode: str = "token", normalize: PreprocessConfig = ORIGINAL,
                        type_key: str = "form+upos+feats+lemma") -> EvalReport:
    """Run *model* over *eval_corpus* and score it, recording both sources."""
    eval_corpus = normalize_corpus(eval_corpus, normalize)
    preds, _ = lemmatize_corpus(model, eval_corpus)
    report = evaluate(preds, eval_corpus, mode, normalize, type_key)
    report.provenance.update({
        "train_source": train_corpus_name,
        "eval_source": eval_corpus.source_name,
        "model": model.name,
        "model_kind": model.kind,
    })
    return report


# -- error overlap --------------------------------------------------------------

@dataclass
class OverlapReport:
    names: tuple[str, str, str]
    region_counts: dict[tuple[str, ...], int]
    tokens: int = 0
    excluded: int = 0
    provenance: dict = field(default_factory=dict)

    @property
    def union_errors(self) -> int:
        return sum(self.region_counts.values())

    @property
    def all_three(self) -> int:
        return self.region_counts[self.names]

    @property
    def all_three_share(self) -> float:
        return self.all_three / self.union_errors if self.union_errors else 0.0

    def errors_of(self, name: str) -> int:
        return sum(c for region, c in self.region_counts.items() if name in region)

    def summary(self) -> str:
        return (f"{self.all_three} out of {self.union_errors}, "
                f"{100 * self.all_three_share:.1f}%")

    def to_dict(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "systems": list(self.names),
            "tokens": self.tokens,
            "excluded": self.excluded,
            "regions": [{"region": "&".join(r), "count": c} for r, c in self.region_counts.items()],
            "errors_per_system": {n: self.errors_of(n) for n in self.names},
            "union_errors": self.union_errors,
            "all_three": self.all_three,
            "all_three_share": round(self.all_three_share, 9),
            "summary": self.summary(),
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    def to_tsv(self) -> str:
        lines = ["region\tsystems\tcount"]
        for region, count in self.region_counts.items():
            lines.append(f"{'&'.join(region)}\t{len(region)}\t{count}")
        return "\n".join(lines) + "\n"


def regions(names: Sequence[str]) -> list[tuple[str, ...]]:
    """The seven non-empty subsets of three systems, singletons first."""
    return [c for k in (1, 2, 3) for c in combinations(names, k)]


def overlap(correct_a: Sequence[bool], correct_b: Sequence[bool], correct_c: Sequence[bool],
            names: Sequence[str] = ("A", "B", "C")) -> OverlapReport:
    """Partition tokens mis-lemmatized by at least one system by which
    systems got them wrong."""
    if not len(correct_a) == len(correct_b) == len(correct_c):
        raise AlignmentError(
            f"correctness vectors differ in length: {len(correct_a)}, {len(correct_b)}, {len(correct_c)}"
        )
    names = tuple(names)
    if len(names) != 3 or len(set(names)) != 3:
        raise ValueError("overlap needs three distinct system names")
    counts = dict.fromkeys(regions(names), 0)
    for flags in zip(correct_a, correct_b, correct_c):
        wrong = tuple(n for n, ok in zip(names, flags) if not ok)
        if wrong:
            counts[wrong] += 1
    return OverlapReport(names, counts, tokens=len(correct_a))


def correctness_vectors(prediction_sets: Sequence[Iterable[PredictionRow]], gold: Corpus,
                        normalize: PreprocessConfig = ORIGINAL, names: Sequence[str] = ()):
    """Per-token correctness of each system, aligned on gold tokens.

    Tokens without a gold lemma, or missing from any system's
    predictions, are left out. Returns ``(token_keys, vectors, excluded)``.
    """
    index = _GoldIndex(gold)
    labels = list(names) or [f"system {i + 1}" for i in range(len(prediction_sets))]
    indexed = [index.index(rows, label) for rows, label in zip(prediction_sets, labels)]
    loose = replace(normalize, keep_degenerate=True)
    norm_gold = normalize_corpus(gold, normalize)
    keys, vectors, excluded = [], [[] for _ in indexed], 0
    for sent, tok in norm_gold.tokens():
        key = (sent.sent_id, tok.id)
        rows = [ix.get(key) for ix in indexed]
        if tok.lemma is None or any(r is None for r in rows):
            excluded += 1
            continue
        keys.append(key)
        for vec, row in zip(vectors, rows):
            vec.append(normalize_lemma(row.lemma, loose) == tok.lemma)
    return keys, vectors, excluded


def overlap_from_predictions(prediction_sets, gold: Corpus, names=("A", "B", "C"),
                             normalize: PreprocessConfig = ORIGINAL) -> OverlapReport:
    if len(prediction_sets) != 3:
        raise ValueError("overlap analysis needs exactly three prediction sets")
    keys, vectors, excluded = correctness_vectors(prediction_sets, gold, normalize, names)
    report = overlap(*vectors, names=names)
    report.excluded = excluded
    report.provenance = {"gold_source": gold.source_name, "normalize": normalize.to_dict()}
    return report
