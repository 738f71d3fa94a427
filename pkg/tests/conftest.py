from __future__ import annotations

from itertools import count
from typing import Mapping

from topicsent.model import Dataset, LabeledItem, Scale

_ids = count()


def dataset_from_counts(
    scale: Scale, counts: Mapping[int, int], topic: str | None = None
) -> Dataset:
    """A synthetic dataset with the given per-class gold counts."""
    items = []
    for cls, n in counts.items():
        for _ in range(n):
            items.append(LabeledItem(f"t{next(_ids)}", topic, cls))
    return Dataset.build(scale, items)


def paired_constant(gold: Dataset, pred_class: int):
    """Gold aligned with an all-pred_class prediction."""
    from topicsent.baselines import constant_classifier
    from topicsent.model import align

    return align(gold, constant_classifier(gold, pred_class))
