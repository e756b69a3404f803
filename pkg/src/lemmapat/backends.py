"""Lemmatizer backends: identity, lexicon, suffix-trie pattern classifier
and majority-vote ensemble, plus an oracle wrapper.

Models are immutable after training and serialize to versioned JSON.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ._case import fold, simple_lower
from .errors import ModelFormatError, RuleApplicationError
from .rules import apply_rule, format_rule, induce_rule, parse_rule

MODEL_FORMAT = "lemmapat-model"
MODEL_VERSION = 1
DEFAULT_MAX_SUFFIX = 7


@dataclass(frozen=True, slots=True)
class Prediction:
    lemma: str
    candidates: tuple[tuple[str, float], ...] = ()
    backend_name: str = ""

    @property
    def candidate_lemmas(self) -> tuple[str, ...]:
        return tuple(lemma for lemma, _ in self.candidates)


def _ranked(scores: dict[str, float]) -> tuple[tuple[str, float], ...]:
    return tuple(sorted(scores.items(), key=lambda kv: (-kv[1], kv[0])))


class BackendModel:
    """Common interface. Subclasses implement :meth:`_decide`."""

    kind = ""

    def __init__(self, name: str | None = None):
        self.name = name or self.kind

    def predict(self, form: str, upos: str = "_", feats: str = "") -> Prediction:
        pred = self._decide(form, upos, feats)
        if pred is None:
            pred = IdentityModel().predict(form, upos, feats)
        return pred

    def _decide(self, form, upos, feats) -> Prediction | None:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"format": MODEL_FORMAT, "version": MODEL_VERSION, "kind": self.kind, "name": self.name,
                **self._tables()}

    def _tables(self) -> dict:
        return {}

    def save(self, path: str | Path) -> None:
        Path(path).write_text(dumps_model(self), encoding="utf-8")


class IdentityModel(BackendModel):
    kind = "identity"

    def _decide(self, form, upos, feats):
        lemma = simple_lower(form)
        return Prediction(lemma, ((lemma, 1.0),), self.name)


class LexiconModel(BackendModel):
    """Form (or form+UPOS) dictionary with a backoff chain for unseen keys."""

    kind = "lexicon"

    def __init__(self, entries: dict[str, list[tuple[str, int]]], key: str = "form",
                 backoff: Sequence[BackendModel] = (), name: str | None = None):
        super().__init__(name)
        if key not in ("form", "form+upos"):
            raise ValueError(f"lexicon key must be 'form' or 'form+upos', not {key!r}")
        self.key = key
        self.entries = {
            k: sorted(v, key=lambda lc: (-lc[1], lc[0])) for k, v in entries.items()
        }
        self.backoff = tuple(backoff)

    def _key(self, form, upos):
        return form if self.key == "form" else f"{form}\t{upos}"

    def lookup(self, form, upos="_"):
        entry = self.entries.get(self._key(form, upos))
        if entry is None and simple_lower(form) != form:
            entry = self.entries.get(self._key(simple_lower(form), upos))
        return entry

    def _decide(self, form, upos, feats):
        entry = self.lookup(form, upos)
        if entry is not None:
            total = sum(c for _, c in entry)
            return Prediction(entry[0][0], tuple((lemma, c / total) for lemma, c in entry), self.name)
        for model in self.backoff:
            pred = model._decide(form, upos, feats)
            if pred is not None:
                return pred
        return None

    def _tables(self):
        return {
            "key": self.key,
            "entries": {k: [[lemma, c] for lemma, c in v] for k, v in sorted(self.entries.items())},
            "backoff": [m.to_dict() for m in self.backoff],
        }


class PatternModel(BackendModel):
    """Suffix-trie rule classifier.

    Every suffix of up to ``max_suffix`` characters (of the lowercased
    form) is a trie node holding a token-weighted distribution of the
    rules induced from training forms ending in it; the empty suffix is
    the global distribution. Complete training forms get their own entry
    so seen forms are reproduced. Prediction walks from the longest
    matching suffix towards the root and takes the most frequent rule
    that applies and yields a non-empty lemma.
    """

    kind = "pattern"

    def __init__(self, nodes: dict[str, dict[str, int]], forms: dict[str, dict[str, int]],
                 allow_copy: bool = False, max_suffix: int = DEFAULT_MAX_SUFFIX,
                 name: str | None = None):
        super().__init__(name)
        if max_suffix < 1:
            raise ValueError("max_suffix must be at least 1")
        self.allow_copy = allow_copy
        self.max_suffix = max_suffix
        self.nodes = {k: _sorted_rules(v) for k, v in nodes.items()}
        self.forms = {k: _sorted_rules(v) for k, v in forms.items()}

    def _chain(self, key):
        entry = self.forms.get(key)
        if entry is not None:
            yield entry
        for k in range(min(len(key), self.max_suffix), -1, -1):
            node = self.nodes.get(key[len(key) - k:])
            if node is not None:
                yield node

    def _decide(self, form, upos, feats):
        if not form:
            return None
        for rules in self._chain(fold(form)):
            total = sum(c for _, c in rules)
            scores: dict[str, float] = {}
            for rule, count in rules:
                try:
                    lemma = apply_rule(parse_rule(rule), form)
                except RuleApplicationError:
                    continue
                if lemma and lemma not in scores:
                    scores[lemma] = count / total
            if scores:
                candidates = _ranked(scores)
                return Prediction(candidates[0][0], candidates, self.name)
        return None

    def _tables(self):
        return {
            "allow_copy": self.allow_copy,
            "max_suffix": self.max_suffix,
            "nodes": {k: [[r, c] for r, c in v] for k, v in sorted(self.nodes.items())},
            "forms": {k: [[r, c] for r, c in v] for k, v in sorted(self.forms.items())},
        }


def _sorted_rules(counts) -> list[tuple[str, int]]:
    items = counts.items() if isinstance(counts, dict) else counts
    return sorted(((r, int(c)) for r, c in items), key=lambda rc: (-rc[1], rc[0]))


class EnsembleModel(BackendModel):
    """Strict-majority vote over member 1-best lemmas.

    Without a strict majority the member listed first in ``priority``
    decides. Candidates are the union of member candidates scored by the
    member-averaged score (the sum divided by the member count, so the
    ranking equals that of the plain sum); the chosen lemma is listed
    first.
    """

    kind = "ensemble"

    def __init__(self, members: Sequence[BackendModel], priority: Sequence[str] | None = None,
                 name: str | None = None):
        super().__init__(name)
        if len(members) < 2:
            raise ValueError("an ensemble needs at least two members")
        self.members = tuple(members)
        names = [m.name for m in self.members]
        if len(set(names)) != len(names):
            raise ValueError(f"ensemble member names must be unique: {names}")
        self.priority = tuple(priority) if priority is not None else tuple(names)
        if sorted(self.priority) != sorted(names):
            raise ValueError(f"priority {list(self.priority)} must list each member once: {names}")

    def _decide(self, form, upos, feats):
        preds = {m.name: m.predict(form, upos, feats) for m in self.members}
        return combine_predictions([preds[n] for n in self.priority], self.name)

    def _tables(self):
        return {"priority": list(self.priority), "members": [m.to_dict() for m in self.members]}


def combine_predictions(preds: Sequence[Prediction], name: str = "ensemble") -> Prediction:
    """Vote over predictions given in priority order."""
    votes = Counter(p.lemma for p in preds)
    lemma, n = max(votes.items(), key=lambda kv: (kv[1], -_first_index(preds, kv[0])))
    if n * 2 <= len(preds):
        lemma = preds[0].lemma
    summed: dict[str, float] = defaultdict(float)
    for p in preds:
        for cand, score in p.candidates or ((p.lemma, 1.0),):
            summed[cand] += score / len(preds)
    ranked = _ranked(summed)
    top = max(ranked[0][1], summed[lemma])
    candidates = ((lemma, top),) + tuple(c for c in ranked if c[0] != lemma)
    return Prediction(lemma, candidates, name)


def _first_index(preds, lemma):
    return next(i for i, p in enumerate(preds) if p.lemma == lemma)


def oracle_predict(model: BackendModel, form: str, upos: str, feats: str,
                   gold: str) -> tuple[bool, Prediction]:
    """Whether *gold* is among the model's candidates, plus its 1-best output."""
    pred = model.predict(form, upos, feats)
    if pred.candidates:
        return gold in pred.candidate_lemmas, pred
    return gold == pred.lemma, pred


# -- training -----------------------------------------------------------------

def train_identity(name: str | None = None) -> IdentityModel:
    return IdentityModel(name)


def train_lexicon(instances: Iterable, key: str = "form",
                  backoff: Sequence[BackendModel] | None = None,
                  name: str | None = None, allow_copy: bool = False,
                  max_suffix: int = DEFAULT_MAX_SUFFIX) -> LexiconModel:
    """Map each key to its lemmas ordered by token frequency.

    The default backoff chain is a pattern model trained on the same
    instances, then identity.
    """
    instances = list(instances)
    if not instances:
        raise ValueError("no training instances")
    counts: dict[str, Counter] = defaultdict(Counter)
    for inst in instances:
        k = inst.form if key == "form" else f"{inst.form}\t{inst.upos}"
        counts[k][inst.lemma] += inst.count
    if backoff is None:
        backoff = (train_pattern(instances, allow_copy=allow_copy, max_suffix=max_suffix),
                   IdentityModel())
    entries = {k: list(c.items()) for k, c in counts.items()}
    return LexiconModel(entries, key=key, backoff=backoff, name=name)


def train_pattern(instances: Iterable, allow_copy: bool = False,
                  max_suffix: int = DEFAULT_MAX_SUFFIX, name: str | None = None) -> PatternModel:
    instances = list(instances)
    if not instances:
        raise ValueError("no training instances")
    if max_suffix < 1:
        raise ValueError("max_suffix must be at least 1")
    nodes: dict[str, Counter] = defaultdict(Counter)
    forms: dict[str, Counter] = defaultdict(Counter)
    cache: dict[tuple[str, str], str] = {}
    for inst in instances:
        pair = (inst.form, inst.lemma)
        rule = cache.get(pair)
        if rule is None:
            rule = cache[pair] = format_rule(induce_rule(inst.form, inst.lemma, allow_copy))
        key = fold(inst.form)
        forms[key][rule] += inst.count
        for k in range(min(len(key), max_suffix) + 1):
            nodes[key[len(key) - k:]][rule] += inst.count
    return PatternModel(dict(nodes), dict(forms), allow_copy=allow_copy,
                        max_suffix=max_suffix, name=name)


def train_ensemble(members: Sequence[BackendModel], priority: Sequence[str] | None = None,
                   name: str | None = None) -> EnsembleModel:
    return EnsembleModel(members, priority, name)


# -- serialization --------------------------------------------------------------

def dumps_model(model: BackendModel) -> str:
    return json.dumps(model.to_dict(), ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def model_from_dict(data: dict) -> BackendModel:
    if data.get("format") != MODEL_FORMAT:
        raise ModelFormatError(f"not a {MODEL_FORMAT} file")
    if data.get("version") != MODEL_VERSION:
        raise ModelFormatError(f"unsupported model version {data.get('version')!r}")
    kind, name = data.get("kind"), data.get("name")
    try:
        if kind == "identity":
            return IdentityModel(name)
        if kind == "lexicon":
            entries = {k: [(lemma, c) for lemma, c in v] for k, v in data["entries"].items()}
            backoff = [model_from_dict(d) for d in data["backoff"]]
            return LexiconModel(entries, key=data["key"], backoff=backoff, name=name)
        if kind == "pattern":
            return PatternModel(
                {k: dict(v) for k, v in data["nodes"].items()},
                {k: dict(v) for k, v in data["forms"].items()},
                allow_copy=data["allow_copy"], max_suffix=data["max_suffix"], name=name,
            )
        if kind == "ensemble":
            members = [model_from_dict(d) for d in data["members"]]
            return EnsembleModel(members, data["priority"], name)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed {kind} model: {exc}") from exc
    raise ModelFormatError(f"unknown model kind {kind!r}")


def loads_model(text: str) -> BackendModel:
    return model_from_dict(json.loads(text))


def load_model(path: str | Path) -> BackendModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))
