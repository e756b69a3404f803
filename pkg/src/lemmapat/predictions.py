"""Prediction and candidate-list TSV files.

Prediction files have the columns ``sent_id, token_id, form,
predicted_lemma``. Candidate files carry the same three key columns
followed by one column per candidate lemma, best first. Both start with a
header line; files from external systems may omit it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .backends import BackendModel
from .conllu import Corpus
from .errors import AlignmentError

PREDICTION_HEADER = "sent_id\ttoken_id\tform\tpredicted_lemma"
CANDIDATE_HEADER = "sent_id\ttoken_id\tform\tcandidates"


@dataclass(frozen=True, slots=True)
class PredictionRow:
    sent_id: str
    token_id: int
    form: str
    lemma: str


@dataclass(frozen=True, slots=True)
class CandidateRow:
    sent_id: str
    token_id: int
    form: str
    candidates: tuple[str, ...]


def _rows(text: str, source: str):
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line or line.startswith("#") or line.startswith("sent_id\t"):
            continue
        cols = line.split("\t")
        if len(cols) < 3:
            raise AlignmentError(f"{source}:{lineno}: expected at least 3 tab-separated columns")
        try:
            token_id = int(cols[1])
        except ValueError:
            raise AlignmentError(f"{source}:{lineno}: token id {cols[1]!r} is not an integer") from None
        yield lineno, cols, token_id


def parse_predictions(text: str, source: str = "<predictions>") -> list[PredictionRow]:
    rows = []
    for lineno, cols, token_id in _rows(text, source):
        if len(cols) != 4:
            raise AlignmentError(f"{source}:{lineno}: expected 4 columns, found {len(cols)}")
        rows.append(PredictionRow(cols[0], token_id, cols[2], cols[3]))
    return rows


def parse_candidates(text: str, source: str = "<candidates>") -> list[CandidateRow]:
    return [
        CandidateRow(cols[0], token_id, cols[2], tuple(c for c in cols[3:] if c))
        for _, cols, token_id in _rows(text, source)
    ]


def read_predictions(path: str | Path) -> list[PredictionRow]:
    return parse_predictions(Path(path).read_text(encoding="utf-8"), str(path))


def read_candidates(path: str | Path) -> list[CandidateRow]:
    return parse_candidates(Path(path).read_text(encoding="utf-8"), str(path))


def format_predictions(rows: Iterable[PredictionRow]) -> str:
    lines = [PREDICTION_HEADER]
    lines += [f"{r.sent_id}\t{r.token_id}\t{r.form}\t{r.lemma}" for r in rows]
    return "\n".join(lines) + "\n"


def format_candidates(rows: Iterable[CandidateRow]) -> str:
    lines = [CANDIDATE_HEADER]
    lines += ["\t".join((r.sent_id, str(r.token_id), r.form, *r.candidates)) for r in rows]
    return "\n".join(lines) + "\n"


def lemmatize_corpus(model: BackendModel, corpus: Corpus) -> tuple[list[PredictionRow], list[CandidateRow]]:
    preds, cands = [], []
    for sent, tok in corpus.tokens():
        p = model.predict(tok.form, tok.upos, tok.canonical_feats)
        preds.append(PredictionRow(sent.sent_id, tok.id, tok.form, p.lemma))
        cands.append(CandidateRow(sent.sent_id, tok.id, tok.form, p.candidate_lemmas or (p.lemma,)))
    return preds, cands


def gold_predictions(corpus: Corpus) -> list[PredictionRow]:
    """The gold lemmas written as a prediction file (absent lemmas left out)."""
    return [
        PredictionRow(sent.sent_id, tok.id, tok.form, tok.lemma)
        for sent, tok in corpus.tokens() if tok.lemma is not None
    ]
