"""CoNLL-U reading and writing, and extraction of lemmatization instances.

Only the ten-column word lines are parsed into :class:`Token` objects.
Multiword-token ranges (``4-5``) and empty nodes (``5.1``) are kept as raw
lines in the sentence layout so that unmodified files round-trip byte for
byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConlluParseError, ConlluStructureError

ABSENT = "_"
_RANGE_ID = re.compile(r"^[1-9][0-9]*-[1-9][0-9]*$")
_EMPTY_ID = re.compile(r"^[0-9]+\.[1-9][0-9]*$")
_WORD_ID = re.compile(r"^[1-9][0-9]*$")


def canonical_feats(feats: str) -> str:
    """Sort ``key=value`` pairs by key; ``_`` becomes the empty string."""
    if not feats or feats == ABSENT:
        return ""
    return "|".join(sorted(feats.split("|"), key=lambda kv: kv.split("=", 1)[0]))


@dataclass(frozen=True, slots=True)
class Token:
    id: int
    form: str
    lemma: str | None  # None when the column holds the "_" placeholder
    upos: str = ABSENT
    xpos: str = ABSENT
    feats: str = ABSENT
    head: str = ABSENT
    deprel: str = ABSENT
    deps: str = ABSENT
    misc: str = ABSENT

    @property
    def canonical_feats(self) -> str:
        return canonical_feats(self.feats)

    @property
    def feats_map(self) -> dict[str, str]:
        out = {}
        for kv in self.canonical_feats.split("|") if self.canonical_feats else ():
            key, _, value = kv.partition("=")
            out[key] = value
        return out

    def to_line(self) -> str:
        return "\t".join((
            str(self.id), self.form, ABSENT if self.lemma is None else self.lemma,
            self.upos, self.xpos, self.feats, self.head, self.deprel, self.deps, self.misc,
        ))


@dataclass(frozen=True, slots=True)
class Sentence:
    sent_id: str
    tokens: tuple[Token, ...] = ()
    comments: tuple[str, ...] = ()
    # Original line order: ("c", i) comment, ("t", i) token, ("x", line) raw
    # multiword/empty-node line. Empty means comments first, then tokens.
    layout: tuple[tuple[str, object], ...] = ()

    def lines(self) -> Iterator[str]:
        if not self.layout:
            yield from self.comments
            for tok in self.tokens:
                yield tok.to_line()
            return
        for kind, value in self.layout:
            if kind == "c":
                yield self.comments[value]
            elif kind == "t":
                yield self.tokens[value].to_line()
            else:
                yield value

    def with_tokens(self, tokens: Iterable[Token]) -> Sentence:
        tokens = tuple(tokens)
        if self.layout and len(tokens) != len(self.tokens):
            raise ValueError("replacement must keep the token count of a parsed sentence")
        return replace(self, tokens=tokens)

    @property
    def extra_lines(self) -> tuple[str, ...]:
        """Multiword-token and empty-node lines retained for write-back."""
        return tuple(v for k, v in self.layout if k == "x")


@dataclass(frozen=True, slots=True)
class Corpus:
    sentences: tuple[Sentence, ...] = ()
    source_name: str = ""

    @property
    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    def tokens(self) -> Iterator[tuple[Sentence, Token]]:
        for sent in self.sentences:
            for tok in sent.tokens:
                yield sent, tok

    def __len__(self):
        return len(self.sentences)


def parse_conllu(text: str, source_name: str = "") -> Corpus:
    sentences = []
    comments: list[str] = []
    tokens: list[Token] = []
    layout: list[tuple[str, object]] = []

    def flush():
        if not (comments or tokens or layout):
            return
        sent_id = str(len(sentences) + 1)
        for c in comments:
            if c.startswith("# sent_id"):
                key, sep, value = c[1:].partition("=")
                if sep and key.strip() == "sent_id":
                    sent_id = value.strip()
                    break
        sentences.append(Sentence(sent_id, tuple(tokens), tuple(comments), tuple(layout)))
        comments.clear()
        tokens.clear()
        layout.clear()

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, 1):
        if not line:
            flush()
            continue
        if line.startswith("#"):
            layout.append(("c", len(comments)))
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluParseError(f"expected 10 tab-separated columns, found {len(cols)}", lineno)
        tid = cols[0]
        if _RANGE_ID.match(tid) or _EMPTY_ID.match(tid):
            layout.append(("x", line))
            continue
        if not _WORD_ID.match(tid):
            raise ConlluParseError(f"invalid token id {tid!r}", lineno)
        if int(tid) != len(tokens) + 1:
            kind = "duplicated" if int(tid) <= len(tokens) else "non-consecutive"
            raise ConlluStructureError(f"{kind} token id {tid} (expected {len(tokens) + 1})", lineno)
        if not cols[1]:
            raise ConlluParseError("empty form", lineno)
        if not cols[2]:
            raise ConlluParseError("empty lemma", lineno)
        layout.append(("t", len(tokens)))
        tokens.append(Token(
            int(tid), cols[1], None if cols[2] == ABSENT else cols[2], *cols[3:],
        ))
    flush()
    return Corpus(tuple(sentences), source_name)


def write_conllu(corpus: Corpus) -> str:
    return "".join("\n".join(s.lines()) + "\n\n" for s in corpus.sentences)


def read_conllu(path: str | Path) -> Corpus:
    path = Path(path)
    return parse_conllu(path.read_text(encoding="utf-8"), source_name=path.name)


@dataclass(frozen=True, slots=True)
class Instance:
    form: str
    lemma: str
    upos: str
    feats: str
    count: int = 1
    origin: tuple[tuple[str, int], ...] = ()

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.form, self.lemma, self.upos, self.feats)


class InstanceList(list):
    """A list of instances that also remembers which tokens were skipped."""

    def __init__(self, items=(), skipped=()):
        super().__init__(items)
        self.skipped: list[tuple[str, int]] = list(skipped)


def extract_instances(corpus: Corpus, dedupe: str = "token") -> InstanceList:
    """Group tokens by (form, lemma, upos, canonical feats).

    In ``token`` mode each instance counts its occurrences; in ``type``
    mode every distinct combination appears once with count 1. Tokens
    without a lemma are left out and listed in ``result.skipped``.
    """
    if dedupe not in ("token", "type"):
        raise ValueError(f"dedupe must be 'token' or 'type', not {dedupe!r}")
    groups: dict[tuple[str, str, str, str], list[tuple[str, int]]] = {}
    skipped = []
    for sent, tok in corpus.tokens():
        if tok.lemma is None:
            skipped.append((sent.sent_id, tok.id))
            continue
        key = (tok.form, tok.lemma, tok.upos, tok.canonical_feats)
        groups.setdefault(key, []).append((sent.sent_id, tok.id))
    items = [
        Instance(*key, count=len(origin) if dedupe == "token" else 1, origin=tuple(origin))
        for key, origin in groups.items()
    ]
    return InstanceList(items, skipped)
