"""Subtask orchestration: picks the metric bundle for each subtask, scores
per topic, macroaverages across topics, and assembles a report.

Subtasks:
  A - 3-point classification over the whole set (no topics)
  B - 2-point classification, per topic
  C - 5-point ordinal classification, per topic
  D - 2-point quantification, per topic
  E - 5-point ordinal quantification, per topic

Classification subtasks take predicted label datasets; quantification
subtasks take a topic -> predicted Prevalence map. Macroaveraging is the
unweighted mean across topics. The optional pooled report treats the whole
test set as a single group, which is what reproduces constant-baseline table
values on imbalanced data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from . import classification, ordinal, quantification
from .errors import EmptyInput, MissingPrediction, TopicRequired
from .model import Dataset, PairedData, Prevalence, Scale, align, group_by_topic, prevalence_of


class Mode(Enum):
    CLASSIFICATION = "classification"
    QUANTIFICATION = "quantification"


@dataclass(frozen=True)
class SubtaskSpec:
    id: str
    scale: Scale
    mode: Mode
    topic_based: bool
    primary_metric: str
    # higher_is_better drives ranking direction in reports
    higher_is_better: bool


SUBTASKS: dict[str, SubtaskSpec] = {
    "A": SubtaskSpec("A", Scale.THREE_POINT, Mode.CLASSIFICATION, False, "avgrec", True),
    "B": SubtaskSpec("B", Scale.TWO_POINT, Mode.CLASSIFICATION, True, "avgrec", True),
    "C": SubtaskSpec("C", Scale.FIVE_POINT, Mode.CLASSIFICATION, True, "mae_macro", False),
    "D": SubtaskSpec("D", Scale.TWO_POINT, Mode.QUANTIFICATION, True, "kld", False),
    "E": SubtaskSpec("E", Scale.FIVE_POINT, Mode.QUANTIFICATION, True, "emd", False),
}


@dataclass
class ScoreReport:
    subtask: SubtaskSpec
    metrics: dict[str, float]
    per_topic: dict[str, dict[str, float]] = field(default_factory=dict)
    n_topics: int = 0
    warnings: list[str] = field(default_factory=list)
    pooled: dict[str, float] | None = None

    @property
    def primary_value(self) -> float:
        return self.metrics[self.subtask.primary_metric]


def macroaverage(values: Mapping[str, float]) -> float:
    """Unweighted arithmetic mean over topics."""
    if not values:
        raise EmptyInput("cannot macroaverage an empty topic map")
    return sum(values.values()) / len(values)


def _classification_metrics(spec: SubtaskSpec, pd: PairedData) -> dict[str, float]:
    if spec.scale is Scale.FIVE_POINT:
        return {
            "mae_macro": ordinal.mae_macro(pd),
            "mae_micro": ordinal.mae_micro(pd),
        }
    return {
        "avgrec": classification.avg_rec(pd),
        "f1_pn": classification.f1_pn(pd),
        "accuracy": classification.accuracy(pd),
    }


def _quantification_metrics(
    spec: SubtaskSpec, pred: Prevalence, true_p: Prevalence, n_test: int
) -> dict[str, float]:
    if spec.scale is Scale.FIVE_POINT:
        return {"emd": quantification.emd(pred, true_p)}
    cfg = quantification.SmoothingConfig.for_test_size(n_test)
    return {
        "kld": quantification.kld(pred, true_p, cfg),
        "ae": quantification.ae(pred, true_p),
        "rae": quantification.rae(pred, true_p, cfg),
    }


def evaluate(
    spec: SubtaskSpec,
    gold: Dataset,
    pred_labels: Dataset | None = None,
    pred_prevalences: Mapping[str, Prevalence] | None = None,
    pooled: bool = False,
) -> ScoreReport:
    if spec.mode is Mode.CLASSIFICATION:
        if pred_labels is None:
            raise EmptyInput(f"subtask {spec.id} requires predicted labels")
        return _evaluate_classification(spec, gold, pred_labels, pooled)
    if pred_prevalences is None:
        raise EmptyInput(f"subtask {spec.id} requires predicted prevalences")
    return _evaluate_quantification(spec, gold, pred_prevalences, pooled)


def _evaluate_classification(
    spec: SubtaskSpec, gold: Dataset, pred: Dataset, pooled: bool
) -> ScoreReport:
    warnings: list[str] = []
    pd = align(gold, pred)
    if pd.n_ignored_extra:
        warnings.append(f"{pd.n_ignored_extra} prediction rows not in gold were ignored")

    if not spec.topic_based:
        report = ScoreReport(spec, _classification_metrics(spec, pd), warnings=warnings)
        _warn_absent_classes(spec, pd, None, warnings)
        return report

    if not gold.has_topics:
        raise TopicRequired(f"subtask {spec.id} requires topics in the gold data")
    per_topic: dict[str, dict[str, float]] = {}
    for topic, sub in group_by_topic(pd).items():
        per_topic[topic] = _classification_metrics(spec, sub)
        _warn_absent_classes(spec, sub, topic, warnings)
    metrics = {
        name: macroaverage({t: m[name] for t, m in per_topic.items()})
        for name in next(iter(per_topic.values()))
    }
    report = ScoreReport(spec, metrics, per_topic, len(per_topic), warnings)
    if pooled:
        report.pooled = _classification_metrics(spec, pd)
    return report


def _warn_absent_classes(
    spec: SubtaskSpec, pd: PairedData, topic: str | None, warnings: list[str]
) -> None:
    absent = classification.absent_classes(pd)
    if absent:
        where = f"topic {topic}" if topic is not None else "gold data"
        names = ", ".join(spec.scale.class_name(c) for c in absent)
        warnings.append(f"{where}: classes absent from gold excluded from macro means: {names}")


def _evaluate_quantification(
    spec: SubtaskSpec,
    gold: Dataset,
    pred_prevalences: Mapping[str, Prevalence],
    pooled: bool,
) -> ScoreReport:
    if not gold.has_topics:
        raise TopicRequired(f"subtask {spec.id} requires topics in the gold data")
    warnings: list[str] = []
    gold_by_topic = group_by_topic(gold)
    extra = sorted(set(pred_prevalences) - set(gold_by_topic))
    if extra:
        warnings.append(f"predicted topics not in gold were ignored: {', '.join(extra)}")

    per_topic: dict[str, dict[str, float]] = {}
    for topic, subset in gold_by_topic.items():
        if topic not in pred_prevalences:
            raise MissingPrediction(None, topic)
        true_p = prevalence_of(subset.labels(), gold.scale)
        per_topic[topic] = _quantification_metrics(
            spec, pred_prevalences[topic], true_p, len(subset)
        )
    metrics = {
        name: macroaverage({t: m[name] for t, m in per_topic.items()})
        for name in next(iter(per_topic.values()))
    }
    report = ScoreReport(spec, metrics, per_topic, len(per_topic), warnings)
    if pooled:
        # pooled view: item-weighted mix of per-topic predictions vs. the
        # pooled gold prevalence, epsilon from the total test size
        n_total = len(gold)
        weights = {t: len(s) / n_total for t, s in gold_by_topic.items()}
        mixed = tuple(
            sum(weights[t] * pred_prevalences[t].fractions[i] for t in gold_by_topic)
            for i in range(len(gold.scale.classes))
        )
        pooled_pred = Prevalence(gold.scale, mixed)
        pooled_true = prevalence_of(gold.labels(), gold.scale)
        report.pooled = _quantification_metrics(spec, pooled_pred, pooled_true, n_total)
    return report
