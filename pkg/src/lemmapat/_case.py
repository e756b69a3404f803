"""Per-code-point case mapping.

``str.lower`` applies full (context-sensitive, possibly length-changing)
case mapping. Rule induction needs a 1:1 character mapping so that casing
positions computed on a lemma remain valid after lowercasing.
"""

from functools import lru_cache

# Simple lowercase mappings that differ from the full mapping.
_SIMPLE_LOWER_OVERRIDES = {"İ": "i"}


@lru_cache(maxsize=4096)
def simple_lower_char(c: str) -> str:
    low = _SIMPLE_LOWER_OVERRIDES.get(c)
    if low is not None:
        return low
    low = c.lower()
    return low if len(low) == 1 else c


def simple_lower(text: str) -> str:
    """Locale-independent, length-preserving lowercase."""
    if text.isascii():
        return text.lower()
    return "".join(map(simple_lower_char, text))


@lru_cache(maxsize=4096)
def fold_char(c: str) -> str:
    """Lowercase *c* only if uppercasing the result gives *c* back.

    Characters without a reversible mapping (the Kelvin sign, dotted
    capital I, titlecase digraphs, ...) are treated as caseless.
    """
    low = c.lower()
    if len(low) == 1 and low != c and low.upper() == c:
        return low
    return c


@lru_cache(maxsize=4096)
def unfold_char(c: str) -> str:
    up = c.upper()
    if len(up) == 1 and up != c and fold_char(up) == c:
        return up
    return c


def fold(text: str) -> str:
    if text.isascii():
        return text.lower()
    return "".join(map(fold_char, text))


def unfold(text: str) -> str:
    if text.isascii():
        return text.upper()
    return "".join(map(unfold_char, text))


def is_folded_upper(c: str) -> bool:
    return fold_char(c) != c
