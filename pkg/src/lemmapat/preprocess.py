"""Data regimes: lowercasing and removal of derivation/compounding markers."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ._case import simple_lower
from .conllu import Corpus
from .errors import DegenerateLemmaError

DEFAULT_SYMBOLS = frozenset("=_")


@dataclass(frozen=True)
class PreprocessConfig:
    lowercase: bool = False
    strip_symbols: frozenset[str] = frozenset()
    apply_to: str = "form-and-lemma"  # which columns lowercasing touches
    keep_degenerate: bool = False  # leave all-symbol lemmas such as "=" untouched

    def __post_init__(self):
        if self.apply_to not in ("form-and-lemma", "lemma-only"):
            raise ValueError(f"apply_to must be 'form-and-lemma' or 'lemma-only', not {self.apply_to!r}")
        object.__setattr__(self, "strip_symbols", frozenset(self.strip_symbols))

    @classmethod
    def no_sym(cls) -> PreprocessConfig:
        return cls(lowercase=True, strip_symbols=DEFAULT_SYMBOLS)

    @property
    def is_identity(self) -> bool:
        return not self.lowercase and not self.strip_symbols

    def to_dict(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "strip_symbols": "".join(sorted(self.strip_symbols)),
            "apply_to": self.apply_to,
            "keep_degenerate": self.keep_degenerate,
        }


ORIGINAL = PreprocessConfig()
NO_SYM = PreprocessConfig.no_sym()


def strip_symbols(lemma: str, symbols=DEFAULT_SYMBOLS) -> str:
    """Remove every occurrence of *symbols* from *lemma*.

    >>> strip_symbols("vana_ema")
    'vanaema'
    """
    if not lemma:
        raise ValueError("lemma must be non-empty")
    out = "".join(c for c in lemma if c not in symbols)
    if not out:
        raise DegenerateLemmaError(lemma)
    return out


def normalize_lemma(lemma: str, cfg: PreprocessConfig, location=None) -> str:
    if cfg.strip_symbols:
        try:
            lemma = strip_symbols(lemma, cfg.strip_symbols)
        except DegenerateLemmaError:
            if not cfg.keep_degenerate:
                raise DegenerateLemmaError(lemma, location) from None
    if cfg.lowercase:
        lemma = simple_lower(lemma)
    return lemma


def normalize_form(form: str, cfg: PreprocessConfig) -> str:
    if cfg.lowercase and cfg.apply_to == "form-and-lemma":
        return simple_lower(form)
    return form


def normalize_corpus(corpus: Corpus, cfg: PreprocessConfig) -> Corpus:
    """Return a normalized copy of *corpus*; the input is left untouched."""
    if cfg.is_identity:
        return corpus
    sentences = []
    for sent in corpus.sentences:
        tokens = []
        for tok in sent.tokens:
            lemma = tok.lemma
            if lemma is not None:
                lemma = normalize_lemma(lemma, cfg, location=f"sentence {sent.sent_id}, token {tok.id}")
            tokens.append(replace(tok, form=normalize_form(tok.form, cfg), lemma=lemma))
        sentences.append(sent.with_tokens(tokens))
    return replace(corpus, sentences=tuple(sentences))
