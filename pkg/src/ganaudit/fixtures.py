"""Bundled reference fixtures and toy-corpus generators.

REFERENCE_COUNTS holds per-group confusion counts for three transformer
detectors (vit, cvt, swin) under two settings (uncompressed, jpeg-q90),
reconstructed from their published per-group accuracy tables.  The gender and
skin groups form one fully cross-annotated sub-corpus (the four intersections
sum exactly to each single-attribute group), while the affect groups are a
disjoint sub-corpus annotated with affect only - whether those corpora
overlap was never stated for the originals, so the fixture picks the
assumption-free layout.  Image uris are placeholders; run validation in
offline mode.

The toy corpus generator emits real PNG files (noise images) with fully
cross-annotated attributes, for exercising the compression harness and the
CLI end to end.
"""

from __future__ import annotations

import random
from pathlib import Path

from PIL import Image

from .manifest import AttributeSet, ClassLabel, ImageRecord, Manifest, save_manifest
from .predictions import PredictionRecord, save_predictions

REFERENCE_MODELS = ("vit", "cvt", "swin")
REFERENCE_SETTINGS = ("uncompressed", "jpeg-q90")

# (tp, fn, tn, fp) per group; single-attribute groups hold 1000 GAN + 1000
# Real images, intersections 500 + 500.
REFERENCE_COUNTS: dict[tuple[str, str], dict[str, tuple[int, int, int, int]]] = {
    ("vit", "uncompressed"): {
        "F": (931, 69, 833, 167), "M": (927, 73, 926, 74),
        "D": (915, 85, 935, 65), "L": (943, 57, 824, 176),
        "Ns": (939, 61, 915, 85), "S": (951, 49, 844, 156),
        "D+F": (449, 51, 458, 42), "D+M": (466, 34, 477, 23),
        "L+F": (482, 18, 375, 125), "L+M": (461, 39, 449, 51),
    },
    ("vit", "jpeg-q90"): {
        "F": (861, 139, 857, 143), "M": (846, 154, 936, 64),
        "D": (828, 172, 955, 45), "L": (879, 121, 838, 162),
        "Ns": (860, 140, 928, 72), "S": (892, 108, 876, 124),
        "D+F": (402, 98, 471, 29), "D+M": (426, 74, 484, 16),
        "L+F": (459, 41, 386, 114), "L+M": (420, 80, 452, 48),
    },
    ("cvt", "uncompressed"): {
        "F": (984, 16, 997, 3), "M": (986, 14, 997, 3),
        "D": (981, 19, 995, 5), "L": (989, 11, 999, 1),
        "Ns": (991, 9, 998, 2), "S": (992, 8, 996, 4),
        "D+F": (490, 10, 498, 2), "D+M": (491, 9, 497, 3),
        "L+F": (494, 6, 499, 1), "L+M": (495, 5, 500, 0),
    },
    ("cvt", "jpeg-q90"): {
        "F": (34, 966, 999, 1), "M": (23, 977, 1000, 0),
        "D": (22, 978, 999, 1), "L": (35, 965, 1000, 0),
        "Ns": (34, 966, 1000, 0), "S": (42, 958, 999, 1),
        "D+F": (9, 491, 499, 1), "D+M": (13, 487, 500, 0),
        "L+F": (25, 475, 500, 0), "L+M": (10, 490, 500, 0),
    },
    ("swin", "uncompressed"): {
        "F": (994, 6, 992, 8), "M": (1000, 0, 999, 1),
        "D": (996, 4, 998, 2), "L": (998, 2, 993, 7),
        "Ns": (998, 2, 998, 2), "S": (996, 4, 992, 8),
        "D+F": (496, 4, 498, 2), "D+M": (500, 0, 500, 0),
        "L+F": (498, 2, 494, 6), "L+M": (500, 0, 499, 1),
    },
    ("swin", "jpeg-q90"): {
        "F": (682, 318, 980, 20), "M": (657, 343, 992, 8),
        "D": (645, 355, 994, 6), "L": (694, 306, 978, 22),
        "Ns": (696, 304, 992, 8), "S": (728, 272, 986, 14),
        "D+F": (300, 200, 496, 4), "D+M": (345, 155, 498, 2),
        "L+F": (382, 118, 484, 16), "L+M": (312, 188, 494, 6),
    },
}

_INTERSECTIONS = (("D", "F"), ("D", "M"), ("L", "F"), ("L", "M"))
_SCORE_HIT = 0.9  # score of the predicted class in reference predictions
_SCORE_MISS = 0.1


def reference_manifest(setting: str = "uncompressed") -> Manifest:
    """The 8000-record evaluation corpus shared by every reference table."""
    records: list[ImageRecord] = []
    for skin, gender in _INTERSECTIONS:
        for cls in (ClassLabel.GAN, ClassLabel.REAL):
            for i in range(500):
                image_id = f"{skin}{gender}-{cls.value}-{i:04d}".lower()
                records.append(ImageRecord(
                    image_id=image_id,
                    uri=f"corpus/{image_id}.png",
                    true_class=cls,
                    attributes=AttributeSet(gender=gender, skin=skin),
                ))
    for affect in ("Ns", "S"):
        for cls in (ClassLabel.GAN, ClassLabel.REAL):
            for i in range(1000):
                image_id = f"{affect}-{cls.value}-{i:04d}".lower()
                records.append(ImageRecord(
                    image_id=image_id,
                    uri=f"corpus/{image_id}.png",
                    true_class=cls,
                    attributes=AttributeSet(affect=affect),
                ))
    return Manifest(records=tuple(records), source="reference-corpus", setting=setting)


def reference_predictions(model: str, setting: str) -> list[PredictionRecord]:
    """Predictions whose per-group confusion counts equal REFERENCE_COUNTS.

    Within each (group, class) block the first k rows are the correctly
    predicted ones; only the counts matter to the measures.
    """
    counts = REFERENCE_COUNTS[(model, setting)]
    manifest = reference_manifest(setting)

    correct_budget: dict[tuple[str, ClassLabel], int] = {}
    for skin, gender in _INTERSECTIONS:
        tp, _, tn, _ = counts[f"{skin}+{gender}"]
        correct_budget[(f"{skin}{gender}".lower(), ClassLabel.GAN)] = tp
        correct_budget[(f"{skin}{gender}".lower(), ClassLabel.REAL)] = tn
    for affect in ("Ns", "S"):
        tp, _, tn, _ = counts[affect]
        correct_budget[(affect.lower(), ClassLabel.GAN)] = tp
        correct_budget[(affect.lower(), ClassLabel.REAL)] = tn

    predictions: list[PredictionRecord] = []
    for record in manifest.records:
        block = record.image_id.split("-")[0]
        key = (block, record.true_class)
        correct = correct_budget[key] > 0
        if correct:
            correct_budget[key] -= 1
        predicted = record.true_class if correct else (
            ClassLabel.REAL if record.true_class is ClassLabel.GAN else ClassLabel.GAN
        )
        score_gan = _SCORE_HIT if predicted is ClassLabel.GAN else _SCORE_MISS
        predictions.append(PredictionRecord(
            image_id=record.image_id,
            score_gan=score_gan,
            score_real=1.0 - score_gan,
            model_id=model,
            setting=setting,
        ))
    assert all(v == 0 for v in correct_budget.values())
    return predictions


def write_reference_fixture(out_dir: str | Path,
                            models: tuple[str, ...] = REFERENCE_MODELS,
                            settings: tuple[str, ...] = REFERENCE_SETTINGS) -> dict[str, Path]:
    """Write manifest + prediction files for the bundled reference audits."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    for setting in settings:
        path = save_manifest(reference_manifest(setting), out / f"manifest_{setting}.jsonl")
        written[f"manifest_{setting}"] = path
        for model in models:
            preds = reference_predictions(model, setting)
            pred_path = save_predictions(preds, out / f"predictions_{model}_{setting}.jsonl")
            written[f"predictions_{model}_{setting}"] = pred_path
    return written


# ---------------------------------------------------------------------------
# Toy corpus (real image files, for the compression harness and CLI)

_TOY_COMBOS = tuple(
    (gender, skin, affect)
    for gender in ("F", "M") for skin in ("D", "L") for affect in ("Ns", "S")
)


def make_toy_corpus(out_dir: str | Path, n: int = 100, size: tuple[int, int] = (48, 48),
                    seed: int = 7, setting: str = "uncompressed") -> Path:
    """Generate n noise PNGs plus a manifest covering all ten groups.

    Attributes cycle through the eight gender/skin/affect combinations and the
    class alternates per block of eight, so every group holds both classes
    once n is a few dozen. Returns the manifest path.
    """
    out = Path(out_dir)
    images = out / "images"
    images.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    records: list[ImageRecord] = []
    for i in range(n):
        gender, skin, affect = _TOY_COMBOS[i % len(_TOY_COMBOS)]
        cls = ClassLabel.GAN if (i // len(_TOY_COMBOS) + i) % 2 == 0 else ClassLabel.REAL
        image_id = f"toy-{i:04d}"
        path = images / f"{image_id}.png"
        data = bytes(rng.randrange(256) for _ in range(size[0] * size[1] * 3))
        Image.frombytes("RGB", size, data).save(path, format="PNG")
        records.append(ImageRecord(
            image_id=image_id, uri=str(path), true_class=cls,
            attributes=AttributeSet(gender=gender, skin=skin, affect=affect),
        ))
    manifest = Manifest(records=tuple(records), source="toy-corpus", setting=setting)
    return save_manifest(manifest, out / "manifest.jsonl")


def make_toy_predictions(manifest: Manifest, model_id: str, setting: str,
                         seed: int = 11) -> list[PredictionRecord]:
    """Deterministic pseudo-random scores for a toy manifest, leaning toward
    the true class so the audit has signal."""
    predictions = []
    for record in manifest.records:
        rng = random.Random(f"{seed}:{record.image_id}:{setting}")
        correct = rng.random() < 0.85
        hit = 0.5 + 0.5 * rng.random()
        score_for_truth = hit if correct else 1.0 - hit
        score_gan = score_for_truth if record.true_class is ClassLabel.GAN else 1.0 - score_for_truth
        score_gan = round(score_gan, 6)
        predictions.append(PredictionRecord(
            image_id=record.image_id,
            score_gan=score_gan,
            score_real=1.0 - score_gan,
            model_id=model_id,
            setting=setting,
        ))
    return predictions
