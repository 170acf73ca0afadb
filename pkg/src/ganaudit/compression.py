"""JPEG re-encoding of an evaluation corpus into a derived manifest.

Every source image is decoded to a full-color raster and re-encoded as
baseline JPEG at the configured quality factor, including sources that are
already JPEG (no pass-through).  The derived manifest keeps ids, classes,
and attributes untouched; only uris and the setting tag change.  With the
encoder pinned (Pillow version recorded in encoder_id) output bytes are
reproducible run to run.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import PIL
from PIL import Image

from .errors import CompressionError
from .manifest import ImageRecord, Manifest, ValidationReport

_SUBSAMPLING_CODES = {"4:2:0": 2, "4:4:4": 0}


def default_encoder_id() -> str:
    return f"pillow-{PIL.__version__}"


@dataclass(frozen=True)
class CompressionConfig:
    quality: int = 90
    chroma_subsampling: str = "4:2:0"
    encoder_id: str = field(default_factory=default_encoder_id)

    def __post_init__(self) -> None:
        if not 1 <= self.quality <= 100:
            raise ValueError(f"quality must be in [1,100], got {self.quality}")
        if self.chroma_subsampling not in _SUBSAMPLING_CODES:
            raise ValueError(
                f"chroma_subsampling must be one of {sorted(_SUBSAMPLING_CODES)}, "
                f"got {self.chroma_subsampling!r}"
            )


def _safe_filename(image_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", image_id)


def derived_setting_tag(source_setting: str, quality: int) -> str:
    """jpeg-q{q}; re-compressing an already q-tagged corpus appends -x2, -x3..."""
    base = f"jpeg-q{quality}"
    m = re.fullmatch(re.escape(base) + r"(?:-x(\d+))?", source_setting)
    if m is None:
        return base
    times = int(m.group(1) or 1) + 1
    return f"{base}-x{times}"


def _encode_one(record: ImageRecord, cfg: CompressionConfig, out_path: Path) -> None:
    with Image.open(record.uri) as img:
        rgb = img.convert("RGB")
    rgb.save(out_path, format="JPEG", quality=cfg.quality,
             subsampling=_SUBSAMPLING_CODES[cfg.chroma_subsampling])


def compress_corpus(manifest: Manifest, cfg: CompressionConfig, out_dir: str | Path,
                    max_workers: int | None = None) -> Manifest:
    """Re-encode every image and return the derived manifest.

    Per-file failures are collected and raised together; nothing about the
    records changes except uri and the manifest-level setting tag.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    targets: dict[str, Path] = {}
    claimed: dict[Path, str] = {}
    for record in manifest.records:
        path = out / (_safe_filename(record.image_id) + ".jpg")
        if path in claimed:
            raise CompressionError(
                f"output filename collision in {out}: ids {claimed[path]!r} and "
                f"{record.image_id!r} both map to {path.name}"
            )
        claimed[path] = record.image_id
        targets[record.image_id] = path

    failures: list[tuple[str, str]] = []

    def work(record: ImageRecord) -> None:
        try:
            _encode_one(record, cfg, targets[record.image_id])
        except Exception as exc:  # noqa: BLE001 - collected per file
            failures.append((record.image_id, str(exc)))

    if max_workers == 1:
        for record in manifest.records:
            work(record)
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(work, manifest.records))

    if failures:
        failures.sort()
        raise CompressionError(
            f"{len(failures)} image(s) failed to re-encode "
            f"(first: {failures[0][0]}: {failures[0][1]})",
            failures=failures,
        )

    setting = derived_setting_tag(manifest.setting, cfg.quality)
    derived_records = tuple(
        ImageRecord(image_id=r.image_id, uri=str(targets[r.image_id]),
                    true_class=r.true_class, attributes=r.attributes)
        for r in manifest.records
    )
    metadata = {
        **manifest.metadata,
        "encoder_id": cfg.encoder_id,
        "quality": cfg.quality,
        "chroma_subsampling": cfg.chroma_subsampling,
        "derived_from": manifest.source,
    }
    return Manifest(records=derived_records, source=manifest.source,
                    setting=setting, metadata=metadata)


def verify_derived(src: Manifest, dst: Manifest) -> ValidationReport:
    """Check a derived manifest against its source: same id set, same classes
    and attributes per id, every destination file parses as JPEG."""
    report = ValidationReport()
    src_by_id = {r.image_id: r for r in src.records}
    dst_by_id = {r.image_id: r for r in dst.records}

    only_src = sorted(set(src_by_id) - set(dst_by_id))
    only_dst = sorted(set(dst_by_id) - set(src_by_id))
    for image_id in only_src:
        report.add("error", "missing-derived", f"id {image_id!r} has no derived record")
    for image_id in only_dst:
        report.add("error", "extra-derived", f"id {image_id!r} not present in source manifest")

    for image_id in sorted(set(src_by_id) & set(dst_by_id)):
        s, d = src_by_id[image_id], dst_by_id[image_id]
        if s.true_class is not d.true_class:
            report.add("error", "class-changed",
                       f"id {image_id!r}: true_class {s.true_class.value} -> {d.true_class.value}")
        if s.attributes != d.attributes:
            report.add("error", "attributes-changed", f"id {image_id!r}: attributes differ")
        path = Path(d.uri)
        if not path.exists():
            report.add("error", "missing-file", f"id {image_id!r}: derived file missing: {d.uri}")
            continue
        try:
            with Image.open(path) as img:
                fmt = img.format
            if fmt != "JPEG":
                report.add("error", "not-jpeg", f"id {image_id!r}: derived file is {fmt}, not JPEG")
        except Exception as exc:  # noqa: BLE001
            report.add("error", "unreadable", f"id {image_id!r}: cannot parse derived file: {exc}")

    if not report.findings:
        report.add("info", "verified", f"{len(dst)} derived records match the source manifest")
    return report
