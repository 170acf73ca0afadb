"""Prediction-file loading and the manifest join producing evaluation rows."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

from .errors import JoinError, PredictionError
from .manifest import ClassLabel, ImageRecord, Manifest

SCORE_SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class PredictionRecord:
    """Per-image two-class score vector emitted by a detector."""

    image_id: str
    score_gan: float
    score_real: float
    model_id: str
    setting: str

    def __post_init__(self) -> None:
        for name, score in (("score_gan", self.score_gan), ("score_real", self.score_real)):
            if not isinstance(score, (int, float)) or math.isnan(score) or not 0.0 <= score <= 1.0:
                raise ValueError(f"{name} out of [0,1]: {score!r}")
        if abs(self.score_gan + self.score_real - 1.0) > SCORE_SUM_TOLERANCE:
            raise ValueError(
                f"scores must sum to 1 (got {self.score_gan} + {self.score_real} "
                f"= {self.score_gan + self.score_real})"
            )


def predicted_class(p: PredictionRecord, tie_rule: ClassLabel = ClassLabel.REAL) -> ClassLabel:
    """Argmax over the two scores; an exact tie falls to tie_rule (default Real,
    the conservative don't-flag-as-fake side)."""
    if p.score_gan > p.score_real:
        return ClassLabel.GAN
    if p.score_real > p.score_gan:
        return ClassLabel.REAL
    return tie_rule


@dataclass(frozen=True)
class EvalRow:
    record: ImageRecord
    prediction: PredictionRecord
    predicted: ClassLabel


@dataclass(frozen=True)
class EvaluationSet:
    """Bijective join of one manifest with one model+setting's predictions."""

    rows: tuple[EvalRow, ...]
    model_id: str
    setting: str

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[EvalRow]:
        return iter(self.rows)


def _prediction_from_mapping(raw: dict[str, Any]) -> PredictionRecord:
    image_id = raw.get("image_id")
    if not image_id:
        raise ValueError("missing image_id")
    try:
        score_gan = float(raw["score_gan"])
        score_real = float(raw["score_real"])
    except KeyError as exc:
        raise ValueError(f"missing {exc.args[0]}") from None
    except (TypeError, ValueError):
        raise ValueError(f"malformed score for image_id {image_id!r}") from None
    return PredictionRecord(
        image_id=str(image_id),
        score_gan=score_gan,
        score_real=score_real,
        model_id=str(raw.get("model_id", "")),
        setting=str(raw.get("setting", "")),
    )


def load_predictions(path: str | Path, fmt: str | None = None) -> list[PredictionRecord]:
    """Load a per-model per-setting prediction file (JSONL or CSV).

    Rejects malformed scores, score pairs beyond the sum tolerance, duplicate
    image_ids, and files mixing model_ids or settings.
    """
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"prediction file not found: {p}")
    if fmt is None:
        fmt = "csv" if p.suffix.lower() == ".csv" else "jsonl"
    if fmt not in ("jsonl", "csv"):
        raise PredictionError(f"unknown prediction format {fmt!r}", path=str(p))

    records: list[PredictionRecord] = []
    seen: dict[str, int] = {}

    def add(raw: dict[str, Any], line_no: int) -> None:
        try:
            record = _prediction_from_mapping(raw)
        except ValueError as exc:
            raise PredictionError(str(exc), path=str(p), line=line_no) from None
        if record.image_id in seen:
            raise PredictionError(
                f"duplicate image_id {record.image_id!r} (first seen on line {seen[record.image_id]})",
                path=str(p), line=line_no,
            )
        if records:
            if record.model_id != records[0].model_id:
                raise PredictionError(
                    f"mixed model_id within one file: {records[0].model_id!r} vs {record.model_id!r}",
                    path=str(p), line=line_no,
                )
            if record.setting != records[0].setting:
                raise PredictionError(
                    f"mixed setting within one file: {records[0].setting!r} vs {record.setting!r}",
                    path=str(p), line=line_no,
                )
        seen[record.image_id] = line_no
        records.append(record)

    if fmt == "jsonl":
        with p.open(encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise PredictionError(f"invalid JSON: {exc.msg}", path=str(p), line=line_no) from None
                add(raw, line_no)
    else:
        with p.open(encoding="utf-8", newline="") as handle:
            for line_no, raw in enumerate(csv.DictReader(handle), start=2):
                add(raw, line_no)

    return records


def save_predictions(records: list[PredictionRecord], path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as handle:
        for r in records:
            handle.write(json.dumps({
                "image_id": r.image_id,
                "score_gan": r.score_gan,
                "score_real": r.score_real,
                "model_id": r.model_id,
                "setting": r.setting,
            }) + "\n")
    return p


def join(manifest: Manifest, predictions: list[PredictionRecord],
         tie_rule: ClassLabel = ClassLabel.REAL) -> EvaluationSet:
    """Join predictions onto the manifest by image_id; the join must be 1:1.

    Raises JoinError listing manifest ids without a prediction and prediction
    ids without a manifest record.
    """
    by_id = {p.image_id: p for p in predictions}
    manifest_ids = set(manifest.ids())
    missing = [r.image_id for r in manifest.records if r.image_id not in by_id]
    orphans = [p.image_id for p in predictions if p.image_id not in manifest_ids]
    if missing or orphans:
        parts = []
        if missing:
            parts.append(f"{len(missing)} manifest record(s) without prediction: "
                         + ", ".join(missing[:10]) + ("..." if len(missing) > 10 else ""))
        if orphans:
            parts.append(f"{len(orphans)} prediction(s) without manifest record: "
                         + ", ".join(orphans[:10]) + ("..." if len(orphans) > 10 else ""))
        raise JoinError("; ".join(parts), missing_ids=missing, orphan_ids=orphans)

    rows = tuple(
        EvalRow(record=r, prediction=by_id[r.image_id],
                predicted=predicted_class(by_id[r.image_id], tie_rule))
        for r in manifest.records
    )
    model_id = rows[0].prediction.model_id if rows else ""
    setting = rows[0].prediction.setting if rows else manifest.setting
    return EvaluationSet(rows=rows, model_id=model_id, setting=setting)
