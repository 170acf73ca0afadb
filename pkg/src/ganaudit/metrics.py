"""Individual and pairwise fairness measures over an evaluation set.

Individual measures are per-group classification rates derived from the
confusion counts (total accuracy, per-class accuracy, FPR, FNR).  Pairwise
measures compare two groups: ACS contrasts mean prediction scores, DP
contrasts class-prediction rates, and EO contrasts class-conditional correct
rates.  DP and EO are reported as min/max ratios so a defined value always
lies in (0, 1], with 1 the unbiased ideal; which side was higher is kept in
the orientation fields.  Division-by-zero cases never collapse to 0 or inf:
they produce explicit undefined markers with a reason.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable

from .errors import EmptyGroupError, MetricError
from .manifest import (
    ClassLabel,
    GroupSelector,
    PairSpec,
    group_by_name,
    standard_groups,
    standard_pairs,
)
from .predictions import EvalRow, EvaluationSet

AUDIT_SCHEMA_VERSION = 1


class ScoreMode(str, Enum):
    """Which score enters ACS for a class c.

    TRUTH_CLASS_SCORE: rows with true class c contribute their class-c score.
    PREDICTED_CONFIDENCE: rows with true class c contribute the score of
    whichever class was predicted for them.
    """

    TRUTH_CLASS_SCORE = "truth_class_score"
    PREDICTED_CONFIDENCE = "predicted_confidence"


@dataclass(frozen=True)
class ConfusionCounts:
    """GAN is the positive class: tp = GAN-truth predicted GAN,
    tn = Real-truth predicted Real."""

    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def n_gan(self) -> int:
        return self.tp + self.fn

    @property
    def n_real(self) -> int:
        return self.tn + self.fp

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def to_dict(self) -> dict[str, int]:
        return {"tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn}


@dataclass(frozen=True)
class GroupMetrics:
    group: GroupSelector | None
    counts: ConfusionCounts
    acc: float
    acc_gan: float | None
    acc_real: float | None
    fpr: float | None
    fnr: float | None
    n_gan: int
    n_real: int


@dataclass(frozen=True)
class RatioMeasure:
    """A min/max rate ratio (DP or EO) with its inputs and orientation."""

    value: float | None
    left_rate: float | None
    right_rate: float | None
    higher_side: str | None  # "left" | "right" | "equal"
    note: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "left_rate": self.left_rate,
                "right_rate": self.right_rate, "higher_side": self.higher_side,
                "note": self.note}


@dataclass(frozen=True)
class ScoreRatioMeasure:
    """ACS: one minus the ratio of the two groups' mean scores."""

    value: float | None
    left_mean: float | None
    right_mean: float | None
    note: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "left_mean": self.left_mean,
                "right_mean": self.right_mean, "note": self.note}


@dataclass(frozen=True)
class PairResult:
    pair: PairSpec
    class_label: ClassLabel
    acs: ScoreRatioMeasure
    dp: RatioMeasure
    eo: RatioMeasure

    @property
    def orientation_note(self) -> str:
        parts = []
        for measure_name, measure in (("DP", self.dp), ("EO", self.eo)):
            if measure.higher_side == "equal":
                parts.append(f"{measure_name}: sides equal")
            elif measure.higher_side is not None:
                side = self.pair.left.name if measure.higher_side == "left" else self.pair.right.name
                parts.append(f"{measure_name}: {side} higher")
        return "; ".join(parts)


def _group_rows(es: EvaluationSet, selector: GroupSelector) -> list[EvalRow]:
    return [row for row in es.rows if selector.matches(row.record.attributes)]


def confusion(es: EvaluationSet, selector: GroupSelector) -> ConfusionCounts:
    """Tally the group's rows by (true class, predicted class)."""
    rows = _group_rows(es, selector)
    if not rows:
        raise EmptyGroupError(selector.name)
    tp = tn = fp = fn = 0
    for row in rows:
        if row.record.true_class is ClassLabel.GAN:
            if row.predicted is ClassLabel.GAN:
                tp += 1
            else:
                fn += 1
        else:
            if row.predicted is ClassLabel.REAL:
                tn += 1
            else:
                fp += 1
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def group_metrics(counts: ConfusionCounts, group: GroupSelector | None = None) -> GroupMetrics:
    """Derive the five individual measures; class-conditional ones are None
    when their truth class is absent."""
    if counts.total == 0:
        raise MetricError("cannot compute metrics over all-zero counts")
    acc = (counts.tp + counts.tn) / counts.total
    acc_gan = counts.tp / counts.n_gan if counts.n_gan else None
    acc_real = counts.tn / counts.n_real if counts.n_real else None
    fpr = counts.fp / counts.n_real if counts.n_real else None
    fnr = counts.fn / counts.n_gan if counts.n_gan else None
    return GroupMetrics(
        group=group, counts=counts, acc=acc, acc_gan=acc_gan, acc_real=acc_real,
        fpr=fpr, fnr=fnr, n_gan=counts.n_gan, n_real=counts.n_real,
    )


def class_prediction_rate(es: EvaluationSet, selector: GroupSelector, c: ClassLabel) -> float:
    """Fraction of the group's rows (both truth classes) predicted as c."""
    rows = _group_rows(es, selector)
    if not rows:
        raise EmptyGroupError(selector.name)
    return sum(1 for row in rows if row.predicted is c) / len(rows)


def _min_max_ratio(left: float, right: float, left_name: str, right_name: str) -> RatioMeasure:
    if left == 0.0 and right == 0.0:
        return RatioMeasure(None, left, right, None, note="both rates are zero")
    if left == 0.0 or right == 0.0:
        zero = left_name if left == 0.0 else right_name
        return RatioMeasure(None, left, right,
                            "left" if right == 0.0 else "right",
                            note=f"rate for {zero} is zero; ratio degenerate")
    if left == right:
        return RatioMeasure(1.0, left, right, "equal")
    higher = "left" if left > right else "right"
    return RatioMeasure(min(left, right) / max(left, right), left, right, higher)


def dp(es: EvaluationSet, pair: PairSpec, c: ClassLabel) -> RatioMeasure:
    """Demographic parity for class c: min/max ratio of the two groups'
    class-c prediction rates. 1 is unbiased; lower is more biased."""
    left = class_prediction_rate(es, pair.left, c)
    right = class_prediction_rate(es, pair.right, c)
    return _min_max_ratio(left, right, pair.left.name, pair.right.name)


def _conditional_rate(es: EvaluationSet, selector: GroupSelector, c: ClassLabel) -> float | None:
    rows = _group_rows(es, selector)
    if not rows:
        raise EmptyGroupError(selector.name)
    truth_c = [row for row in rows if row.record.true_class is c]
    if not truth_c:
        return None
    return sum(1 for row in truth_c if row.predicted is c) / len(truth_c)


def eo(es: EvaluationSet, pair: PairSpec, c: ClassLabel) -> RatioMeasure:
    """Equal opportunity for class c: min/max ratio of the two groups'
    correct-prediction rates among rows whose true class is c
    (TPR ratio for GAN, TNR ratio for Real)."""
    left = _conditional_rate(es, pair.left, c)
    right = _conditional_rate(es, pair.right, c)
    if left is None or right is None:
        lacking = [name for name, rate in ((pair.left.name, left), (pair.right.name, right))
                   if rate is None]
        return RatioMeasure(None, left, right, None,
                            note=f"no true-{c.value} rows in {', '.join(lacking)}")
    return _min_max_ratio(left, right, pair.left.name, pair.right.name)


def _acs_scores(rows: Iterable[EvalRow], c: ClassLabel, mode: ScoreMode) -> list[float]:
    out: list[float] = []
    for row in rows:
        if row.record.true_class is not c:
            continue
        if mode is ScoreMode.TRUTH_CLASS_SCORE:
            out.append(row.prediction.score_gan if c is ClassLabel.GAN else row.prediction.score_real)
        else:
            out.append(row.prediction.score_gan if row.predicted is ClassLabel.GAN
                       else row.prediction.score_real)
    return out


def acs(es: EvaluationSet, pair: PairSpec, c: ClassLabel,
        score_mode: ScoreMode = ScoreMode.TRUTH_CLASS_SCORE) -> ScoreRatioMeasure:
    """Average confidence score contrast: 1 - mean(left) / mean(right).

    0 is unbiased; positive means the left group's prediction intensities run
    lower than the right group's, negative means higher. fsum keeps the means
    exactly permutation-invariant.
    """
    left_rows = _group_rows(es, pair.left)
    right_rows = _group_rows(es, pair.right)
    if not left_rows:
        raise EmptyGroupError(pair.left.name)
    if not right_rows:
        raise EmptyGroupError(pair.right.name)
    left_scores = _acs_scores(left_rows, c, score_mode)
    right_scores = _acs_scores(right_rows, c, score_mode)
    if not left_scores or not right_scores:
        lacking = [name for name, scores in ((pair.left.name, left_scores), (pair.right.name, right_scores))
                   if not scores]
        raise MetricError(
            f"no rows eligible for ACS (class {c.value}, mode {score_mode.value}) in "
            + ", ".join(lacking)
        )
    left_mean = math.fsum(left_scores) / len(left_scores)
    right_mean = math.fsum(right_scores) / len(right_scores)
    if right_mean == 0.0:
        return ScoreRatioMeasure(None, left_mean, right_mean,
                                 note=f"mean score for {pair.right.name} is zero")
    return ScoreRatioMeasure(1.0 - left_mean / right_mean, left_mean, right_mean)


# ---------------------------------------------------------------------------
# Whole-audit evaluation

@dataclass(frozen=True)
class GroupEntry:
    selector: GroupSelector
    metrics: GroupMetrics | None
    note: str | None = None


@dataclass(frozen=True)
class AuditResult:
    """Complete individual + pairwise results for one model and one setting.

    Groups and pairs that could not be computed carry explicit notes instead
    of silently dropping out. Serializes to the JSON document consumed by the
    report layer.
    """

    model_id: str
    setting: str
    score_mode: str
    row_count: int
    groups: tuple[GroupEntry, ...]
    pairs: tuple[PairResult, ...]

    def group_entry(self, name: str) -> GroupEntry:
        for entry in self.groups:
            if entry.selector.name == name:
                return entry
        raise KeyError(f"no group {name!r} in audit result")

    def pair_result(self, pair_name: str, c: ClassLabel) -> PairResult:
        for result in self.pairs:
            if result.pair.name == pair_name and result.class_label is c:
                return result
        for result in self.pairs:
            if result.pair.ascii_name == pair_name and result.class_label is c:
                return result
        raise KeyError(f"no pair {pair_name!r} for class {c.value} in audit result")

    def to_dict(self) -> dict[str, Any]:
        groups = []
        for entry in self.groups:
            m = entry.metrics
            groups.append({
                "name": entry.selector.name,
                "conjuncts": [list(c) for c in entry.selector.conjuncts],
                "counts": m.counts.to_dict() if m else None,
                "n_gan": m.n_gan if m else None,
                "n_real": m.n_real if m else None,
                "acc": m.acc if m else None,
                "acc_gan": m.acc_gan if m else None,
                "acc_real": m.acc_real if m else None,
                "fpr": m.fpr if m else None,
                "fnr": m.fnr if m else None,
                "note": entry.note,
            })
        pairs = []
        for result in self.pairs:
            pairs.append({
                "left": result.pair.left.name,
                "right": result.pair.right.name,
                "domain": result.pair.domain_tag,
                "class": result.class_label.value,
                "acs": result.acs.to_dict(),
                "dp": result.dp.to_dict(),
                "eo": result.eo.to_dict(),
                "orientation_note": result.orientation_note,
            })
        return {
            "audit_version": AUDIT_SCHEMA_VERSION,
            "model_id": self.model_id,
            "setting": self.setting,
            "score_mode": self.score_mode,
            "row_count": self.row_count,
            "groups": groups,
            "pairs": pairs,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "AuditResult":
        groups = []
        for g in raw["groups"]:
            selector = GroupSelector(g["name"], tuple(tuple(c) for c in g["conjuncts"]))
            if g.get("counts") is None:
                groups.append(GroupEntry(selector, None, note=g.get("note")))
            else:
                counts = ConfusionCounts(**g["counts"])
                metrics = GroupMetrics(
                    group=selector, counts=counts, acc=g["acc"], acc_gan=g["acc_gan"],
                    acc_real=g["acc_real"], fpr=g["fpr"], fnr=g["fnr"],
                    n_gan=g["n_gan"], n_real=g["n_real"],
                )
                groups.append(GroupEntry(selector, metrics, note=g.get("note")))
        pairs = []
        for p in raw["pairs"]:
            pair = PairSpec(group_by_name(p["left"]), group_by_name(p["right"]), p["domain"])
            acs_m = ScoreRatioMeasure(**{k: p["acs"].get(k) for k in
                                         ("value", "left_mean", "right_mean", "note")})
            dp_m = RatioMeasure(**{k: p["dp"].get(k) for k in
                                   ("value", "left_rate", "right_rate", "higher_side", "note")})
            eo_m = RatioMeasure(**{k: p["eo"].get(k) for k in
                                   ("value", "left_rate", "right_rate", "higher_side", "note")})
            pairs.append(PairResult(pair, ClassLabel.parse(p["class"]), acs_m, dp_m, eo_m))
        return cls(
            model_id=raw["model_id"], setting=raw["setting"], score_mode=raw["score_mode"],
            row_count=raw["row_count"], groups=tuple(groups), pairs=tuple(pairs),
        )

    def save(self, path: str | Path) -> Path:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")
        return p

    @classmethod
    def load(cls, path: str | Path) -> "AuditResult":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def evaluate_all(es: EvaluationSet,
                 score_mode: ScoreMode = ScoreMode.TRUTH_CLASS_SCORE,
                 groups: tuple[GroupSelector, ...] | None = None,
                 pairs: tuple[PairSpec, ...] | None = None) -> AuditResult:
    """Run every individual measure over the standard groups and every
    pairwise measure over the standard pairs (GAN block first, then Real).

    Missing or empty groups are reported in-place, never fatal; the result is
    deterministic and independent of row order.
    """
    groups = standard_groups() if groups is None else groups
    pairs = standard_pairs() if pairs is None else pairs

    group_entries: list[GroupEntry] = []
    for selector in groups:
        try:
            counts = confusion(es, selector)
            group_entries.append(GroupEntry(selector, group_metrics(counts, selector)))
        except EmptyGroupError:
            group_entries.append(GroupEntry(selector, None, note="empty group"))

    pair_results: list[PairResult] = []
    for c in (ClassLabel.GAN, ClassLabel.REAL):
        for pair in pairs:
            try:
                dp_m = dp(es, pair, c)
                eo_m = eo(es, pair, c)
            except EmptyGroupError as exc:
                empty = RatioMeasure(None, None, None, None, note=str(exc))
                pair_results.append(PairResult(
                    pair, c,
                    acs=ScoreRatioMeasure(None, None, None, note=str(exc)),
                    dp=empty, eo=empty,
                ))
                continue
            try:
                acs_m = acs(es, pair, c, score_mode)
            except MetricError as exc:
                acs_m = ScoreRatioMeasure(None, None, None, note=str(exc))
            pair_results.append(PairResult(pair, c, acs=acs_m, dp=dp_m, eo=eo_m))

    return AuditResult(
        model_id=es.model_id, setting=es.setting, score_mode=score_mode.value,
        row_count=len(es.rows), groups=tuple(group_entries), pairs=tuple(pair_results),
    )
