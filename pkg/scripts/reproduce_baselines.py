#!/usr/bin/env python3
"""Rebuilds the constant-baseline score tables from the per-class test-set
counts of the English and Arabic datasets, using the library's metric stack.

Run: python3 scripts/reproduce_baselines.py
"""

from itertools import count

from topicsent.baselines import constant_classifier
from topicsent.classification import accuracy, avg_rec, f1_pn
from topicsent.cli import round_display
from topicsent.model import Dataset, LabeledItem, Scale, align
from topicsent.ordinal import mae_macro, mae_micro

_ids = count()

COUNTS = {
    "English": {
        "A": {1: 2375, 0: 5937, -1: 3972},
        "B": {1: 2463, -1: 3722},
        "C": {2: 131, 1: 2332, 0: 6194, -1: 3545, -2: 177},
    },
    "Arabic": {
        "A": {1: 1514, 0: 2364, -1: 2222},
        "B": {1: 1561, -1: 1196},
        "C": {2: 13, 1: 1548, 0: 3343, -1: 1175, -2: 21},
    },
}
SCALES = {"A": Scale.THREE_POINT, "B": Scale.TWO_POINT, "C": Scale.FIVE_POINT}


def build(scale, counts):
    items = [
        LabeledItem(f"t{next(_ids)}", None, cls)
        for cls, n in counts.items()
        for _ in range(n)
    ]
    return Dataset.build(scale, items)


def fmt(x):
    return f"{round_display(x):.3f}"


def main():
    for language, tables in COUNTS.items():
        for subtask in ("A", "B"):
            scale = SCALES[subtask]
            gold = build(scale, tables[subtask])
            print(f"\n{language}, subtask {subtask} (constant classifiers, pooled)")
            print(f"{'baseline':<16} {'AvgRec':>7} {'F1_PN':>7} {'Acc':>7}")
            for c in scale.classes:
                pd = align(gold, constant_classifier(gold, c))
                name = f"All {scale.class_name(c).title()}"
                print(
                    f"{name:<16} {fmt(avg_rec(pd)):>7} {fmt(f1_pn(pd)):>7} "
                    f"{fmt(accuracy(pd)):>7}"
                )

        gold = build(SCALES["C"], tables["C"])
        print(f"\n{language}, subtask C (constant classifiers, pooled)")
        print(f"{'baseline':<16} {'MAE_M':>7} {'MAE_mu':>7}")
        for c in SCALES["C"].classes:
            pd = align(gold, constant_classifier(gold, c))
            print(f"{'All ' + str(c):<16} {fmt(mae_macro(pd)):>7} {fmt(mae_micro(pd)):>7}")


if __name__ == "__main__":
    main()
