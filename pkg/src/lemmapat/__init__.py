"""Lemma transformation rules over CoNLL-U treebanks.

Induces form-to-lemma rules (casing script plus prefix/suffix edit
scripts), applies and compares them, trains simple lemmatizer backends on
them, and evaluates lemmatizers token-, type- and oracle-wise, including
three-system error overlap.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .conllu import Corpus, Instance, Sentence, Token, extract_instances, parse_conllu, read_conllu, write_conllu
from .preprocess import NO_SYM, ORIGINAL, PreprocessConfig, normalize_corpus, strip_symbols
from .rules import (
    LemmaRule,
    RuleStats,
    apply_rule,
    format_rule,
    induce_rule,
    min_edit_script,
    parse_rule,
    rules_equivalent_on,
    ruleset_stats,
)

__all__ = [
    "KERNEL_BACKEND",
    "NO_SYM",
    "ORIGINAL",
    "Corpus",
    "Instance",
    "LemmaRule",
    "PreprocessConfig",
    "RuleStats",
    "Sentence",
    "Token",
    "apply_rule",
    "extract_instances",
    "format_rule",
    "induce_rule",
    "min_edit_script",
    "normalize_corpus",
    "parse_conllu",
    "parse_rule",
    "read_conllu",
    "rules_equivalent_on",
    "ruleset_stats",
    "strip_symbols",
    "write_conllu",
]
