"""Fine-tuning of a pretrained checkpoint on a labeled GAN/Real manifest."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

import torch

from .models import ModelSpec, class_indices, load_model
from .preprocess import image_to_tensor
from .schemas import ManifestRow, read_manifest


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 2e-5
    batch_size: int = 4
    epochs: int = 25
    split: tuple[int, int, int] = (60, 20, 20)
    seed: int = 0

    def __post_init__(self) -> None:
        if sum(self.split) != 100 or any(s <= 0 for s in self.split):
            raise ValueError(f"split must be three positive shares of 100, got {self.split}")
        if self.epochs < 1 or self.batch_size < 1:
            raise ValueError("epochs and batch_size must be >= 1")


def split_rows(rows: list[ManifestRow], split: tuple[int, int, int],
               seed: int = 0) -> tuple[list[ManifestRow], list[ManifestRow], list[ManifestRow]]:
    """Shuffle and partition into train/val/test by the given shares."""
    shuffled = list(rows)
    random.Random(seed).shuffle(shuffled)
    n = len(shuffled)
    n_train = n * split[0] // 100
    n_val = n * split[1] // 100
    train = shuffled[:n_train]
    val = shuffled[n_train:n_train + n_val]
    test = shuffled[n_train + n_val:]
    return train, val, test


def _batches(items, size):
    for i in range(0, len(items), size):
        yield items[i:i + size]


def _accuracy(model, rows, gan_index, batch_size) -> float | None:
    if not rows:
        return None
    correct = 0
    with torch.no_grad():
        for batch in _batches(rows, batch_size):
            pixels = torch.stack([image_to_tensor(r.uri) for r in batch])
            predicted = model(pixel_values=pixels).logits.argmax(dim=-1)
            for r, pred in zip(batch, predicted):
                wanted = gan_index if r.true_class == "GAN" else 1 - gan_index
                correct += int(pred.item() == wanted)
    return correct / len(rows)


def finetune(spec: ModelSpec, manifest_path: str | Path, out_dir: str | Path,
             cfg: TrainConfig = TrainConfig()) -> tuple[Path, dict]:
    """Fine-tune the spec's checkpoint and save a new one usable by infer.

    Returns the checkpoint directory and a metrics dict (per-epoch train loss
    and validation accuracy, final test accuracy), which is also written next
    to the checkpoint.
    """
    rows, _ = read_manifest(manifest_path)
    train, val, test = split_rows(rows, cfg.split, cfg.seed)
    if not train or not val:
        raise ValueError(
            f"insufficient data: {len(rows)} rows split into "
            f"{len(train)}/{len(val)}/{len(test)}"
        )

    torch.manual_seed(cfg.seed)
    model = load_model(spec)
    gan_index, _ = class_indices(model)
    optimizer = torch.optim.AdamW(model.parameters(), lr=cfg.learning_rate)
    rng = random.Random(cfg.seed)

    history = []
    for epoch in range(cfg.epochs):
        model.train()
        order = list(train)
        rng.shuffle(order)
        losses = []
        for batch in _batches(order, cfg.batch_size):
            pixels = torch.stack([image_to_tensor(r.uri) for r in batch])
            labels = torch.tensor(
                [gan_index if r.true_class == "GAN" else 1 - gan_index for r in batch]
            )
            out = model(pixel_values=pixels, labels=labels)
            optimizer.zero_grad()
            out.loss.backward()
            optimizer.step()
            losses.append(float(out.loss.item()))
        model.eval()
        val_acc = _accuracy(model, val, gan_index, cfg.batch_size)
        history.append({"epoch": epoch + 1,
                        "train_loss": sum(losses) / len(losses),
                        "val_accuracy": val_acc})

    model.eval()
    test_acc = _accuracy(model, test, gan_index, cfg.batch_size)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out)
    metrics = {
        "epochs": history,
        "test_accuracy": test_acc,
        "split_sizes": {"train": len(train), "val": len(val), "test": len(test)},
        "config": {"learning_rate": cfg.learning_rate, "batch_size": cfg.batch_size,
                   "epochs": cfg.epochs, "split": list(cfg.split), "seed": cfg.seed},
    }
    (out / "training_metrics.json").write_text(json.dumps(metrics, indent=2) + "\n",
                                               encoding="utf-8")
    return out, metrics
