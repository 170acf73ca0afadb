"""Image preprocessing pinned under a versioned id.

The original detector checkpoints never published their normalization
constants, so the pipeline here (RGB decode, bicubic resize to 224,
scale to [-1, 1]) is pinned explicitly and the id travels with every
prediction file, keeping audits attributable to one preprocessing.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch
from PIL import Image

PREPROCESSING_ID = "rgb-resize224-bicubic-norm0.5-v1"

_SIZE = (224, 224)
_MEAN = 0.5
_STD = 0.5


def image_to_tensor(path: str | Path) -> torch.Tensor:
    """Decode, resize, normalize one image to a 3x224x224 float tensor."""
    with Image.open(path) as img:
        rgb = img.convert("RGB").resize(_SIZE, Image.BICUBIC)
    array = np.asarray(rgb, dtype=np.float32) / 255.0
    array = (array - _MEAN) / _STD
    return torch.from_numpy(array).permute(2, 0, 1).contiguous()
