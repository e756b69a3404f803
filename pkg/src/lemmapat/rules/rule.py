"""Lemma rules: casing script plus either edit scripts or a literal lemma.

Textual form::

    <casing>;d<prefix ops>¦<suffix ops>     diff rule
    <casing>;a<lowercased lemma>            absolute rule

where casing is ``↑i`` / ``↓i`` segments joined by ``¦``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .. import _kernels
from .._case import fold, is_folded_upper, unfold
from ..errors import InductionError, RuleApplicationError, RuleCodecError
from .editscript import COPY_MARK, DELETE_MARK, INSERT_MARK, EditScript

UPPER_MARK = "↑"
LOWER_MARK = "↓"
SEPARATOR = "¦"


@dataclass(frozen=True, slots=True)
class CasingScript:
    segments: tuple[tuple[int, str], ...] = ((0, "lower"),)

    def __post_init__(self):
        if not self.segments or self.segments[0][0] != 0:
            raise ValueError("casing script must start with a segment at position 0")
        prev = -1
        for pos, case in self.segments:
            if case not in ("upper", "lower"):
                raise ValueError(f"unknown case {case!r}")
            if pos <= prev:
                raise ValueError("casing positions must be strictly increasing")
            prev = pos

    @classmethod
    def of(cls, lemma: str) -> CasingScript:
        segments = []
        previous = None
        for i, c in enumerate(lemma):
            case = "upper" if is_folded_upper(c) else "lower"
            if case != previous:
                segments.append((i, case))
                previous = case
        return cls(tuple(segments) or ((0, "lower"),))

    def apply(self, text: str) -> str:
        if self.segments == ((0, "lower"),):
            return fold(text)
        parts = []
        bounds = [pos for pos, _ in self.segments[1:]] + [len(text)]
        for (pos, case), end in zip(self.segments, bounds):
            if pos >= len(text):
                break
            chunk = text[pos:max(pos, end)]
            parts.append(unfold(chunk) if case == "upper" else fold(chunk))
        return "".join(parts)

    def __str__(self):
        return SEPARATOR.join(
            f"{UPPER_MARK if case == 'upper' else LOWER_MARK}{pos}" for pos, case in self.segments
        )


DO_NOTHING_CASING = CasingScript()


@dataclass(frozen=True, slots=True)
class LemmaRule:
    casing: CasingScript = DO_NOTHING_CASING
    kind: str = "diff"  # "diff" or "absolute"
    prefix: EditScript = field(default_factory=EditScript)
    suffix: EditScript = field(default_factory=EditScript)
    literal: str = ""

    def __post_init__(self):
        if self.kind not in ("diff", "absolute"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "absolute" and (self.prefix.ops or self.suffix.ops):
            raise ValueError("absolute rules carry no edit scripts")
        if self.kind == "diff" and self.literal:
            raise ValueError("diff rules carry no literal")

    def __str__(self):
        return format_rule(self)

    @property
    def body(self) -> str:
        """The rule text without its casing component."""
        if self.kind == "absolute":
            return "a" + self.literal
        return f"d{self.prefix}{SEPARATOR}{self.suffix}"


def format_rule(rule: LemmaRule) -> str:
    return f"{rule.casing};{rule.body}"


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


@lru_cache(maxsize=65536)
def parse_rule(text: str) -> LemmaRule:
    """Parse the textual form of a rule. Raises :class:`RuleCodecError`."""

    def fail(message, index):
        raise RuleCodecError(message, text, _byte_offset(text, index))

    semi = text.find(";")
    if semi < 0:
        fail("missing ';' between casing and body", len(text))

    segments = []
    start = 0
    casing_text = text[:semi]
    for chunk in casing_text.split(SEPARATOR):
        if not chunk or chunk[0] not in (UPPER_MARK, LOWER_MARK):
            fail("unknown casing marker", start)
        digits = chunk[1:]
        if not digits.isascii() or not digits.isdigit():
            fail("casing position must be a non-negative integer", start + 1)
        pos = int(digits)
        if segments and pos <= segments[-1][0]:
            fail("casing positions must be strictly increasing", start + 1)
        if not segments and pos != 0:
            fail("first casing segment must be at position 0", start + 1)
        segments.append((pos, "upper" if chunk[0] == UPPER_MARK else "lower"))
        start += len(chunk) + 1
    casing = CasingScript(tuple(segments))

    i = semi + 1
    if i >= len(text) or text[i] not in "da":
        fail("rule kind must be 'd' or 'a'", i)
    if text[i] == "a":
        if i + 1 >= len(text):
            fail("absolute rule has an empty lemma", i + 1)
        return LemmaRule(casing, "absolute", literal=text[i + 1:])

    scripts = [[]]
    i += 1
    while i < len(text):
        c = text[i]
        if c in (COPY_MARK, DELETE_MARK):
            scripts[-1].append(c)
        elif c == INSERT_MARK:
            if i + 1 >= len(text):
                fail(f"dangling {INSERT_MARK!r}", i)
            scripts[-1].append(text[i:i + 2])
            i += 1
        elif c == SEPARATOR and len(scripts) == 1:
            scripts.append([])
        else:
            fail(f"unexpected character {c!r} in edit script", i)
        i += 1
    if len(scripts) != 2:
        fail(f"diff rule needs a {SEPARATOR!r} between prefix and suffix scripts", len(text))
    prefix, suffix = (EditScript.from_string("".join(s)) for s in scripts)
    return LemmaRule(casing, "diff", prefix, suffix)


def induce_rule(form: str, lemma: str, allow_copy: bool = False) -> LemmaRule:
    """Build the rule that rewrites *form* into *lemma*.

    >>> str(induce_rule("vabandavad", "vabandama"))
    '↓0;d¦---+m+a'
    >>> str(induce_rule("vabandavad", "vabandama", allow_copy=True))
    '↓0;d¦-+m→-'
    """
    if not form or not lemma:
        raise InductionError(f"form and lemma must be non-empty, got {form!r} -> {lemma!r}")
    casing = CasingScript.of(lemma)
    lform, llemma = fold(form), fold(lemma)
    anchor = _kernels.best_anchor(lform, llemma, allow_copy)
    if anchor is None:
        return LemmaRule(casing, "absolute", literal=llemma)
    f, l, k = anchor
    prefix = _kernels.edit_script(lform[:f], llemma[:l], allow_copy)
    suffix = _kernels.edit_script(lform[f + k:], llemma[l + k:], allow_copy)
    return LemmaRule(casing, "diff", EditScript.from_string(prefix), EditScript.from_string(suffix))


def apply_rule(rule: LemmaRule | str, form: str) -> str:
    """Rewrite *form* with *rule*; raises :class:`RuleApplicationError`."""
    if isinstance(rule, str):
        rule = parse_rule(rule)
    if not form:
        raise ValueError("form must be non-empty")
    if rule.kind == "absolute":
        return rule.casing.apply(rule.literal)

    lform = fold(form)
    n = len(lform)
    out = []
    pos = 0
    for index, op in enumerate(rule.prefix.ops):
        if op.consumes:
            if pos >= n:
                raise RuleApplicationError(rule, form, "prefix", index)
            if op.kind == "copy":
                out.append(lform[pos])
            pos += 1
        else:
            out.append(op.char)
    available = n - pos
    need = rule.suffix.consumed
    if need > available:
        seen = 0
        for index, op in enumerate(rule.suffix.ops):
            seen += op.consumes
            if seen > available:
                raise RuleApplicationError(rule, form, "suffix", index)
    end = n - need
    out.append(lform[pos:end])
    pos = end
    for op in rule.suffix.ops:
        if op.kind == "copy":
            out.append(lform[pos])
            pos += 1
        elif op.kind == "delete":
            pos += 1
        else:
            out.append(op.char)
    return rule.casing.apply("".join(out))


@dataclass(frozen=True, slots=True)
class Equivalence:
    """Outcome of comparing two rules on one form; truthy when equivalent."""

    equivalent: bool
    lemma_a: str | None
    lemma_b: str | None
    inapplicable: bool = False

    def __bool__(self):
        return self.equivalent


def rules_equivalent_on(a: LemmaRule | str, b: LemmaRule | str, form: str) -> Equivalence:
    if not form:
        raise ValueError("form must be non-empty")
    lemmas = []
    for rule in (a, b):
        try:
            lemmas.append(apply_rule(rule, form))
        except RuleApplicationError:
            lemmas.append(None)
    la, lb = lemmas
    if la is None or lb is None:
        return Equivalence(False, la, lb, inapplicable=True)
    return Equivalence(la == lb, la, lb)


def is_applicable(rule: LemmaRule, form: str) -> bool:
    if rule.kind == "absolute":
        return True
    return rule.prefix.consumed + rule.suffix.consumed <= len(form)


__all__ = [
    "CasingScript",
    "Equivalence",
    "LemmaRule",
    "apply_rule",
    "format_rule",
    "induce_rule",
    "is_applicable",
    "parse_rule",
    "rules_equivalent_on",
]
