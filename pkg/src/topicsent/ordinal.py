"""Ordinal classification error for the five-point subtask: macro-averaged
(per-true-class) and micro-averaged (per-item) mean absolute error. Class
distance is the integer difference induced by the -2..+2 encoding."""

from __future__ import annotations

from collections import defaultdict

from .errors import EmptyInput
from .model import PairedData


def mae_micro(pd: PairedData) -> float:
    """Mean |pred - gold| over all pairs."""
    if not pd.pairs:
        raise EmptyInput("no gold/prediction pairs to score")
    return sum(abs(p.pred - p.gold) for p in pd.pairs) / len(pd.pairs)


def mae_macro(pd: PairedData) -> float:
    """Mean over the gold classes present of the class-conditional mean
    |pred - gold|. Classes absent from gold are excluded from the mean."""
    if not pd.pairs:
        raise EmptyInput("no gold/prediction pairs to score")
    by_class: dict[int, list[int]] = defaultdict(list)
    for p in pd.pairs:
        by_class[p.gold].append(abs(p.pred - p.gold))
    per_class = [sum(errs) / len(errs) for errs in by_class.values()]
    return sum(per_class) / len(per_class)
