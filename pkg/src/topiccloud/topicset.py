"""Topic-set documents: parsing, serialization, lemma merging and word caps."""

from __future__ import annotations

import json
import math
import unicodedata
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Optional, Union


class TopicSetError(ValueError):
    pass


class ParseError(TopicSetError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(message + where)


class ValidationError(TopicSetError):
    pass


def _has_control(text: str) -> bool:
    return any(unicodedata.category(ch) == "Cc" for ch in text)


@dataclass(frozen=True)
class WordEntry:
    surface: str
    weight: float

    def __post_init__(self):
        if not isinstance(self.surface, str) or not self.surface.strip():
            raise ValidationError(f"word surface must be non-empty, got {self.surface!r}")
        if _has_control(self.surface):
            raise ValidationError(f"word {self.surface!r} contains control characters")
        if not math.isfinite(self.weight) or self.weight < 0:
            raise ValidationError(f"word {self.surface!r} has invalid weight {self.weight!r}")


@dataclass(frozen=True)
class Topic:
    proportion: float
    words: tuple[WordEntry, ...] = ()

    def __post_init__(self):
        if not math.isfinite(self.proportion) or self.proportion <= 0:
            raise ValidationError(f"topic proportion must be positive and finite, got {self.proportion!r}")
        object.__setattr__(self, "words", tuple(self.words))


@dataclass(frozen=True)
class TopicSet:
    topics: tuple[Topic, ...]
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "topics", tuple(self.topics))
        if not self.topics:
            raise ValidationError("a topic set needs at least one topic")

    def word_count(self) -> int:
        return sum(len(t.words) for t in self.topics)


# -- JSON document ---------------------------------------------------------


def _number(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{what} must be a number, got {v!r}")
    return float(v)


def parse_topicset(data: Union[bytes, str]) -> TopicSet:
    """Parse a topic-set JSON document.

    Syntax problems raise :class:`ParseError` carrying line and column;
    structurally valid documents with bad values raise
    :class:`ValidationError` naming the topic (and word) at fault.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None

    if not isinstance(doc, dict) or "topics" not in doc:
        raise ValidationError('top level must be an object with a "topics" array')
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ValidationError("label must be a string")
    raw_topics = doc["topics"]
    if not isinstance(raw_topics, list) or not raw_topics:
        raise ValidationError('"topics" must be a non-empty array')

    topics = []
    for ti, rt in enumerate(raw_topics):
        if not isinstance(rt, dict):
            raise ValidationError(f"topic {ti}: expected an object")
        try:
            proportion = _number(rt.get("proportion"), "proportion")
            raw_words = rt.get("words", [])
            if not isinstance(raw_words, list):
                raise ValidationError('"words" must be an array')
            words = []
            for wi, rw in enumerate(raw_words):
                if not isinstance(rw, dict) or not isinstance(rw.get("w"), str):
                    raise ValidationError(f'word {wi}: expected {{"w": string, "q": number}}')
                try:
                    words.append(WordEntry(rw["w"], _number(rw.get("q"), "q")))
                except ValidationError as exc:
                    raise ValidationError(f"word {wi} ({rw['w']!r}): {exc}") from None
            topics.append(Topic(proportion, tuple(words)))
        except ValidationError as exc:
            raise ValidationError(f"topic {ti}: {exc}") from None
    return TopicSet(tuple(topics), label)


def _fmt(x: float) -> str:
    return format(x, ".12g")


def serialize_topicset(ts: TopicSet) -> str:
    parts = ["{"]
    if ts.label is not None:
        parts.append(f'"label": {json.dumps(ts.label, ensure_ascii=False)}, ')
    parts.append('"topics": [')
    for ti, t in enumerate(ts.topics):
        if ti:
            parts.append(",")
        words = ", ".join(
            f'{{"w": {json.dumps(w.surface, ensure_ascii=False)}, "q": {_fmt(w.weight)}}}'
            for w in t.words
        )
        parts.append(f'\n  {{"proportion": {_fmt(t.proportion)}, "words": [{words}]}}')
    parts.append("\n]}\n")
    return "".join(parts)


def load_topicset(path: Union[str, Path]) -> TopicSet:
    return parse_topicset(Path(path).read_bytes())


# -- lemmatization ---------------------------------------------------------


@dataclass(frozen=True)
class Lemmatizer:
    """Suffix-rule lemmatizer.

    The longest matching suffix rule is applied repeatedly until nothing
    changes. A rule whose replacement equals its suffix protects the word.
    Exception targets are returned as-is, which keeps the mapping idempotent.
    """

    rules: tuple[tuple[str, str], ...] = ()
    exceptions: dict = field(default_factory=dict)
    min_stem: int = 3

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for suffix, repl in self.rules:
            if not suffix:
                raise ValidationError("empty suffix in lemma rule")
            # shrinking rules (or protecting ones) guarantee a fixed point
            if len(repl) > len(suffix) or (len(repl) == len(suffix) and repl != suffix):
                raise ValidationError(f"lemma rule {suffix!r} -> {repl!r} must shorten the word")
        for surface, lemma in self.exceptions.items():
            if lemma in self.exceptions and self.exceptions[lemma] != lemma:
                raise ValidationError(f"exception chain {surface!r} -> {lemma!r} -> {self.exceptions[lemma]!r}")
        object.__setattr__(self, "_targets", frozenset(self.exceptions.values()))
        object.__setattr__(
            self, "_by_length", sorted(self.rules, key=lambda r: -len(r[0]))
        )

    def _rule_step(self, word: str) -> str:
        for suffix, repl in self._by_length:
            if not word.endswith(suffix):
                continue
            if repl == suffix:
                return word
            if len(word) - len(suffix) >= self.min_stem:
                return word[: len(word) - len(suffix)] + repl
        return word

    def __call__(self, word: str) -> str:
        if word in self.exceptions:
            return self.exceptions[word]
        if word in self._targets:
            return word
        while True:
            nxt = self._rule_step(word)
            if nxt == word:
                break
            word = nxt
        return self.exceptions.get(word, word)

    @property
    def is_identity(self) -> bool:
        return not self.rules and not self.exceptions


IDENTITY = Lemmatizer()


def parse_lemma_rules(text: str, min_stem: int = 3) -> Lemmatizer:
    rules = []
    exceptions = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise ParseError("expected suffix<TAB>replacement", lineno, 1)
        left, right = line.split("\t", 1)
        if left.startswith("="):
            exceptions[left[1:]] = right
        else:
            rules.append((left, right))
    return Lemmatizer(tuple(rules), exceptions, min_stem)


def default_lemmatizer() -> Lemmatizer:
    text = resources.files("topiccloud.data").joinpath("english.lemma").read_text("utf-8")
    return parse_lemma_rules(text)


def load_lemmatizer(path: Union[str, Path]) -> Lemmatizer:
    return parse_lemma_rules(Path(path).read_text("utf-8"))


def lemma_merge(ts: TopicSet, lem: Lemmatizer) -> TopicSet:
    """Merge words sharing a lemma within each topic, summing their weights.

    The merged entry takes the lemma as its surface and sits where the first
    contributing word was.
    """
    topics = []
    for t in ts.topics:
        merged: dict[str, float] = {}
        for w in t.words:
            key = lem(w.surface)
            merged[key] = merged.get(key, 0.0) + w.weight
        topics.append(replace(t, words=tuple(WordEntry(k, q) for k, q in merged.items())))
    return replace(ts, topics=tuple(topics))


def truncate_words(ts: TopicSet, m: int) -> TopicSet:
    """Keep the m heaviest words of each topic; ties go to the earlier word."""
    if m < 1:
        raise ValueError("m must be at least 1")
    topics = []
    for t in ts.topics:
        if len(t.words) <= m:
            topics.append(t)
            continue
        ranked = sorted(range(len(t.words)), key=lambda i: (-t.words[i].weight, i))
        keep = sorted(ranked[:m])
        topics.append(replace(t, words=tuple(t.words[i] for i in keep)))
    return replace(ts, topics=tuple(topics))
