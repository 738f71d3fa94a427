"""Core data model: sentiment scales, datasets, gold/prediction alignment,
and class-prevalence extraction.

Labels are plain integers validated against a :class:`Scale`:
two-point {-1, +1}, three-point {-1, 0, +1}, five-point {-2 .. +2}.
All types are immutable after construction; operations are pure functions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateKey,
    EmptyInput,
    InvalidLabel,
    MissingPrediction,
    NoTopics,
    ScaleMismatch,
)

# Canonical label names, shared across scales. Positive maps to +1 even on
# the five-point scale, where +2 is HIGHLYPOSITIVE.
_NAME_TO_INT = {
    "HIGHLYPOSITIVE": 2,
    "POSITIVE": 1,
    "NEUTRAL": 0,
    "NEGATIVE": -1,
    "HIGHLYNEGATIVE": -2,
}
_INT_TO_NAME = {v: k for k, v in _NAME_TO_INT.items()}


class Scale(Enum):
    """An ordered sentiment class set. Enum values are the class lists,
    most negative first."""

    TWO_POINT = (-1, 1)
    THREE_POINT = (-1, 0, 1)
    FIVE_POINT = (-2, -1, 0, 1, 2)

    @property
    def classes(self) -> tuple[int, ...]:
        return self.value

    def validate(self, label: int) -> int:
        if label not in self.value:
            raise InvalidLabel(f"label {label!r} not in scale {self.name}")
        return label

    def parse_label(self, raw: str, *, line: int | None = None) -> int:
        """Accepts integer surface forms and canonical names, case-insensitive."""
        text = raw.strip()
        try:
            label = int(text)
        except ValueError:
            label = _NAME_TO_INT.get(text.upper())
            if label is None:
                raise InvalidLabel(f"unrecognized label {raw!r}", line=line) from None
        if label not in self.value:
            raise InvalidLabel(
                f"label {raw!r} invalid on scale {self.name}", line=line
            )
        return label

    def class_name(self, label: int) -> str:
        self.validate(label)
        return _INT_TO_NAME[label]


@dataclass(frozen=True)
class LabeledItem:
    """One record of a gold or prediction file."""

    id: str
    topic: str | None
    label: int
    text: str | None = None

    def __post_init__(self):
        if not self.id:
            raise InvalidLabel("item id must be non-empty")


@dataclass(frozen=True)
class Dataset:
    """A collection of labeled items on a single scale.

    Use :meth:`build` to construct from arbitrary iterables; it enforces the
    scale, the all-or-none topic rule, and (id, topic) uniqueness.
    """

    scale: Scale
    items: tuple[LabeledItem, ...]
    has_topics: bool

    @classmethod
    def build(cls, scale: Scale, items: Iterable[LabeledItem]) -> "Dataset":
        items = tuple(items)
        seen: set[tuple[str, str | None]] = set()
        n_with_topic = 0
        for it in items:
            scale.validate(it.label)
            key = (it.id, it.topic)
            if key in seen:
                raise DuplicateKey(f"duplicate (id, topic) pair {key}")
            seen.add(key)
            if it.topic is not None:
                n_with_topic += 1
        if n_with_topic not in (0, len(items)):
            raise NoTopics("items must either all carry a topic or none")
        return cls(scale, items, has_topics=bool(items) and n_with_topic == len(items))

    def __len__(self) -> int:
        return len(self.items)

    def labels(self) -> list[int]:
        return [it.label for it in self.items]


@dataclass(frozen=True)
class Pair:
    """A gold item joined with its prediction."""

    id: str
    topic: str | None
    gold: int
    pred: int


@dataclass(frozen=True)
class PairedData:
    """Gold and predicted labels aligned by (id, topic), in gold order."""

    scale: Scale
    pairs: tuple[Pair, ...]
    n_ignored_extra: int = 0

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def has_topics(self) -> bool:
        return bool(self.pairs) and self.pairs[0].topic is not None


@dataclass(frozen=True)
class Prevalence:
    """A class -> fraction distribution on a scale; fractions follow
    scale.classes order and sum to 1."""

    scale: Scale
    fractions: tuple[float, ...]

    _SUM_TOL = 1e-9

    def __post_init__(self):
        if len(self.fractions) != len(self.scale.classes):
            raise InvalidLabel(
                f"expected {len(self.scale.classes)} fractions, got {len(self.fractions)}"
            )
        if any(f < 0 for f in self.fractions):
            raise InvalidLabel("prevalence fractions must be nonnegative")
        if abs(sum(self.fractions) - 1.0) > self._SUM_TOL:
            raise InvalidLabel(
                f"prevalence fractions sum to {sum(self.fractions)!r}, expected 1"
            )

    @classmethod
    def from_mapping(cls, scale: Scale, p: Mapping[int, float]) -> "Prevalence":
        for c in p:
            scale.validate(c)
        return cls(scale, tuple(float(p.get(c, 0.0)) for c in scale.classes))

    def __getitem__(self, c: int) -> float:
        return self.fractions[self.scale.classes.index(c)]

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.scale.classes, self.fractions))


def align(gold: Dataset, pred: Dataset) -> PairedData:
    """Joins predictions onto gold by (id, topic), preserving gold order.

    Prediction rows absent from gold are ignored; their count is recorded in
    the result. A gold item without a prediction is an error.
    """
    if gold.scale is not pred.scale:
        raise ScaleMismatch(
            f"gold scale {gold.scale.name} != prediction scale {pred.scale.name}"
        )
    lookup = {(it.id, it.topic): it.label for it in pred.items}
    pairs = []
    for it in gold.items:
        key = (it.id, it.topic)
        if key not in lookup:
            raise MissingPrediction(it.id, it.topic)
        pairs.append(Pair(it.id, it.topic, it.label, lookup[key]))
    gold_keys = {(it.id, it.topic) for it in gold.items}
    extra = sum(1 for k in lookup if k not in gold_keys)
    return PairedData(gold.scale, tuple(pairs), n_ignored_extra=extra)


def group_by_topic(data: Dataset | PairedData) -> dict[str, Dataset | PairedData]:
    """Partitions a dataset or paired data by topic; keys sorted
    lexicographically for determinism."""
    if isinstance(data, Dataset):
        if not data.has_topics:
            raise NoTopics("dataset has no topics")
        buckets: dict[str, list] = {}
        for it in data.items:
            buckets.setdefault(it.topic, []).append(it)
        return {
            t: Dataset(data.scale, tuple(buckets[t]), has_topics=True)
            for t in sorted(buckets)
        }
    if not data.has_topics:
        raise NoTopics("paired data has no topics")
    buckets = {}
    for pair in data.pairs:
        buckets.setdefault(pair.topic, []).append(pair)
    return {t: PairedData(data.scale, tuple(buckets[t])) for t in sorted(buckets)}


def prevalence_of(labels: Sequence[int], scale: Scale) -> Prevalence:
    """Relative frequency of every scale class among the given labels."""
    if not labels:
        raise EmptyInput("cannot compute prevalence of an empty label list")
    counts = Counter(scale.validate(lab) for lab in labels)
    n = len(labels)
    return Prevalence(scale, tuple(counts[c] / n for c in scale.classes))
