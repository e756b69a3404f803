"""The pattern formalism: edit scripts, lemma rules and rule statistics."""

from .editscript import COPY, DELETE, EditOp, EditScript, insert, min_edit_script
from .rule import (
    CasingScript,
    Equivalence,
    LemmaRule,
    apply_rule,
    format_rule,
    induce_rule,
    is_applicable,
    parse_rule,
    rules_equivalent_on,
)
from .stats import RuleStats, ruleset_stats, strip_casing

DO_NOTHING = "↓0;d¦"

__all__ = [
    "COPY",
    "DELETE",
    "DO_NOTHING",
    "CasingScript",
    "EditOp",
    "EditScript",
    "Equivalence",
    "LemmaRule",
    "RuleStats",
    "apply_rule",
    "format_rule",
    "induce_rule",
    "insert",
    "is_applicable",
    "min_edit_script",
    "parse_rule",
    "rules_equivalent_on",
    "ruleset_stats",
    "strip_casing",
]
