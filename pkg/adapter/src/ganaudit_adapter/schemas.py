"""File-format glue: the adapter talks to the audit toolkit only through its
manifest and prediction JSONL schemas, never through imports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

CLASSES = ("GAN", "Real")


@dataclass(frozen=True)
class ManifestRow:
    image_id: str
    uri: str
    true_class: str


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def read_manifest(path: str | Path) -> tuple[list[ManifestRow], dict[str, Any]]:
    """Read a corpus manifest (JSONL) and its metadata sidecar if present."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"manifest not found: {p}")
    rows: list[ManifestRow] = []
    with p.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            image_id = raw.get("image_id")
            true_class = raw.get("true_class")
            if not image_id or true_class not in CLASSES:
                raise ValueError(f"{p}:{line_no}: bad manifest row")
            rows.append(ManifestRow(str(image_id), str(raw.get("uri", "")), true_class))
    meta: dict[str, Any] = {}
    side = sidecar_path(p)
    if side.exists():
        meta = json.loads(side.read_text(encoding="utf-8"))
    return rows, meta


def write_predictions(path: str | Path, rows: list[dict[str, Any]],
                      meta: dict[str, Any]) -> Path:
    """Write the prediction JSONL (exactly image_id/score_gan/score_real/
    model_id/setting per line) plus a metadata sidecar."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps({
                "image_id": row["image_id"],
                "score_gan": row["score_gan"],
                "score_real": row["score_real"],
                "model_id": row["model_id"],
                "setting": row["setting"],
            }) + "\n")
    sidecar_path(p).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n",
                               encoding="utf-8")
    return p
