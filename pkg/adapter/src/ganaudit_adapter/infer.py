"""Batch inference over a corpus manifest, emitting the prediction schema."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import torch

from .models import ModelSpec, class_indices, load_model
from .preprocess import image_to_tensor
from .schemas import ManifestRow, read_manifest, write_predictions


@dataclass
class InferResult:
    prediction_path: Path
    written: int
    errors: list[tuple[str, str]] = field(default_factory=list)  # (image_id, reason)


def _batches(items, size):
    for i in range(0, len(items), size):
        yield items[i:i + size]


def infer(spec: ModelSpec, manifest_path: str | Path, out_path: str | Path,
          model_id: str | None = None, setting: str | None = None,
          batch_size: int = 8) -> InferResult:
    """Run the checkpoint over every manifest image and write predictions.

    One prediction per readable image (scores are the two-class softmax,
    recorded unrounded); unreadable images become error entries in the
    metadata sidecar and the run continues.  Inference is deterministic, so
    repeat runs produce byte-identical files.
    """
    rows, meta = read_manifest(manifest_path)
    setting = setting if setting is not None else str(meta.get("setting", ""))
    model_id = model_id or spec.architecture
    model = load_model(spec)
    gan_index, real_index = class_indices(model)

    loaded: list[tuple[ManifestRow, torch.Tensor]] = []
    errors: list[tuple[str, str]] = []
    for row in rows:
        try:
            loaded.append((row, image_to_tensor(row.uri)))
        except Exception as exc:  # noqa: BLE001 - per-image, run continues
            errors.append((row.image_id, str(exc)))

    out_rows = []
    with torch.no_grad():
        for batch in _batches(loaded, max(1, batch_size)):
            pixels = torch.stack([tensor for _, tensor in batch])
            logits = model(pixel_values=pixels).logits
            probs = torch.softmax(logits.double(), dim=-1)
            for (row, _), p in zip(batch, probs):
                score_gan = float(p[gan_index])
                out_rows.append({
                    "image_id": row.image_id,
                    "score_gan": score_gan,
                    "score_real": 1.0 - score_gan,
                    "model_id": model_id,
                    "setting": setting,
                })

    meta_out = {
        "model_id": model_id,
        "architecture": spec.architecture,
        "checkpoint": str(spec.checkpoint),
        "pretrain_corpus": spec.pretrain_corpus or spec.arch.pretrain_corpus,
        "preprocessing_id": spec.preprocessing_id,
        "setting": setting,
        "manifest": str(manifest_path),
        "errors": [{"image_id": image_id, "reason": reason} for image_id, reason in errors],
    }
    path = write_predictions(out_path, out_rows, meta_out)
    return InferResult(prediction_path=path, written=len(out_rows), errors=errors)
