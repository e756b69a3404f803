"""Frequency tables of induced rules."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from ..errors import InductionError, LemmapatError
from .rule import format_rule, induce_rule


@dataclass(frozen=True)
class RuleStats:
    counts: dict[str, int]
    total: int

    @property
    def table(self) -> dict[str, tuple[int, float]]:
        return {rule: (count, count / self.total) for rule, count in self.ranked()}

    def ranked(self) -> list[tuple[str, int]]:
        """Rules by descending count, ties in rule-string order."""
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))

    def top(self, k: int) -> list[tuple[str, int, float]]:
        return [(rule, count, count / self.total) for rule, count in self.ranked()[:k]]

    def share(self, rule: str) -> float:
        return self.counts.get(rule, 0) / self.total

    @property
    def distinct(self) -> int:
        return len(self.counts)

    def merge(self, other: RuleStats) -> RuleStats:
        merged = Counter(self.counts)
        merged.update(other.counts)
        return RuleStats(dict(merged), self.total + other.total)

    def to_tsv(self, top_k: int | None = None) -> str:
        rows = self.ranked() if top_k is None else self.ranked()[:top_k]
        lines = ["rule\tcount\tshare"]
        lines += [f"{rule}\t{count}\t{count / self.total:.6f}" for rule, count in rows]
        return "\n".join(lines) + "\n"

    def to_json_dict(self, top_k: int | None = None) -> dict:
        rows = self.ranked() if top_k is None else self.ranked()[:top_k]
        return {
            "total": self.total,
            "distinct_rules": self.distinct,
            "rules": [
                {"rule": rule, "count": count, "share": round(count / self.total, 9)}
                for rule, count in rows
            ],
        }

    def to_json(self, top_k: int | None = None) -> str:
        return json.dumps(self.to_json_dict(top_k), ensure_ascii=False, indent=2) + "\n"


def ruleset_stats(instances, allow_copy: bool = False, weighting: str = "token") -> RuleStats:
    """Count the rules induced from *instances*.

    With ``token`` weighting every instance contributes its occurrence
    count, with ``type`` weighting it contributes one.
    """
    if weighting not in ("token", "type"):
        raise ValueError(f"weighting must be 'token' or 'type', not {weighting!r}")
    if not instances:
        raise ValueError("no instances to count")
    counts: Counter[str] = Counter()
    cache: dict[tuple[str, str], str] = {}
    for inst in instances:
        pair = (inst.form, inst.lemma)
        rule = cache.get(pair)
        if rule is None:
            try:
                rule = format_rule(induce_rule(inst.form, inst.lemma, allow_copy))
            except LemmapatError as exc:
                where = f" (first seen at {inst.origin[0]})" if inst.origin else ""
                raise InductionError(f"cannot induce a rule for {inst.form!r} -> {inst.lemma!r}{where}: {exc}") from exc
            cache[pair] = rule
        counts[rule] += inst.count if weighting == "token" else 1
    return RuleStats(dict(counts), sum(counts.values()))


def strip_casing(rule: str) -> str:
    """Drop the casing component of a rule string."""
    return rule.split(";", 1)[1]
