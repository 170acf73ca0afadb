"""Architecture registry and checkpoint handling.

Three classifier architectures are supported, always at 224x224 input:
ViT-Large/16, CvT-21, and Swin-Large patch 4 / window 7.  Each entry carries
the full-size configuration, a tiny configuration for smoke-scale runs, and
the hub id of the usual pretraining corpus checkpoint.  Checkpoints are plain
transformers save_pretrained directories; users supply their own.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import torch
from transformers import (
    CvtConfig,
    CvtForImageClassification,
    SwinConfig,
    SwinForImageClassification,
    ViTConfig,
    ViTForImageClassification,
)

from .preprocess import PREPROCESSING_ID

INPUT_SIZE = (224, 224)

LABELS = {"id2label": {0: "GAN", 1: "Real"}, "label2id": {"GAN": 0, "Real": 1}}


@dataclass(frozen=True)
class ArchInfo:
    name: str
    model_cls: type
    config_cls: type
    model_type: str
    paper_config: dict[str, Any]
    tiny_config: dict[str, Any]
    pretrain_hub_id: str
    pretrain_corpus: str


ARCHITECTURES: dict[str, ArchInfo] = {
    "vit-large-16": ArchInfo(
        name="vit-large-16",
        model_cls=ViTForImageClassification,
        config_cls=ViTConfig,
        model_type="vit",
        paper_config=dict(image_size=224, patch_size=16, hidden_size=1024,
                          num_hidden_layers=24, num_attention_heads=16,
                          intermediate_size=4096),
        tiny_config=dict(image_size=224, patch_size=16, hidden_size=32,
                         num_hidden_layers=2, num_attention_heads=2,
                         intermediate_size=64),
        pretrain_hub_id="google/vit-large-patch16-224-in21k",
        pretrain_corpus="imagenet-21k",
    ),
    "cvt-21": ArchInfo(
        name="cvt-21",
        model_cls=CvtForImageClassification,
        config_cls=CvtConfig,
        model_type="cvt",
        paper_config=dict(depth=[1, 4, 16], embed_dim=[64, 192, 384],
                          num_heads=[1, 3, 6]),
        tiny_config=dict(depth=[1, 2, 3], embed_dim=[16, 32, 48],
                         num_heads=[1, 2, 4], drop_path_rate=[0.0, 0.0, 0.0]),
        pretrain_hub_id="microsoft/cvt-21",
        pretrain_corpus="imagenet-1k",
    ),
    "swin-large-4-7": ArchInfo(
        name="swin-large-4-7",
        model_cls=SwinForImageClassification,
        config_cls=SwinConfig,
        model_type="swin",
        paper_config=dict(image_size=224, patch_size=4, window_size=7,
                          embed_dim=192, depths=[2, 2, 18, 2],
                          num_heads=[6, 12, 24, 48]),
        tiny_config=dict(image_size=224, patch_size=4, window_size=7,
                         embed_dim=24, depths=[1, 1], num_heads=[2, 2]),
        pretrain_hub_id="microsoft/swin-large-patch4-window7-224-in22k",
        pretrain_corpus="imagenet-21k",
    ),
}


@dataclass(frozen=True)
class ModelSpec:
    architecture: str
    checkpoint: str
    pretrain_corpus: str = ""
    input_size: tuple[int, int] = INPUT_SIZE
    preprocessing_id: str = PREPROCESSING_ID

    def __post_init__(self) -> None:
        if self.architecture not in ARCHITECTURES:
            raise ValueError(
                f"unknown architecture {self.architecture!r} "
                f"(supported: {', '.join(sorted(ARCHITECTURES))})"
            )
        if tuple(self.input_size) != INPUT_SIZE:
            raise ValueError(f"input size is fixed at {INPUT_SIZE[0]}x{INPUT_SIZE[1]}")

    @property
    def arch(self) -> ArchInfo:
        return ARCHITECTURES[self.architecture]


def init_checkpoint(architecture: str, out_dir: str | Path, size: str = "tiny",
                    seed: int = 0) -> Path:
    """Create a randomly initialized checkpoint directory for an architecture.

    size "paper" builds the full-size configuration, "tiny" a smoke-scale one.
    Real audits should start from a pretrained checkpoint instead (see
    ArchInfo.pretrain_hub_id); this exists for offline smoke tests and wiring.
    """
    arch = ARCHITECTURES[architecture]
    params = arch.paper_config if size == "paper" else arch.tiny_config
    torch.manual_seed(seed)
    config = arch.config_cls(num_labels=2, **LABELS, **params)
    model = arch.model_cls(config)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out)
    return out


def load_model(spec: ModelSpec):
    """Load the checkpoint in eval mode; a checkpoint for a different
    architecture is fatal."""
    arch = spec.arch
    path = Path(spec.checkpoint)
    if not path.exists():
        raise FileNotFoundError(f"checkpoint not found: {path}")
    model = arch.model_cls.from_pretrained(path)
    if model.config.model_type != arch.model_type:
        raise ValueError(
            f"checkpoint at {path} is a {model.config.model_type!r} model, "
            f"not {arch.model_type!r} ({spec.architecture})"
        )
    if getattr(model.config, "num_labels", None) != 2:
        raise ValueError(f"checkpoint at {path} is not a two-class classifier")
    model.eval()
    return model


def class_indices(model) -> tuple[int, int]:
    """(gan_index, real_index) from the checkpoint's label mapping."""
    label2id = {str(k): int(v) for k, v in model.config.label2id.items()}
    try:
        return label2id["GAN"], label2id["Real"]
    except KeyError:
        raise ValueError(
            f"checkpoint labels must be GAN/Real, got {sorted(label2id)}"
        ) from None
