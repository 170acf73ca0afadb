import json
import random

import pytest
from PIL import Image

from ganaudit_adapter.models import init_checkpoint


def write_toy_manifest(root, n, setting="uncompressed", seed=3):
    """n noise PNGs plus a manifest JSONL + sidecar; returns the manifest path."""
    images = root / "images"
    images.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    lines = []
    for i in range(n):
        image_id = f"img-{i:03d}"
        path = images / f"{image_id}.png"
        data = bytes(rng.randrange(256) for _ in range(32 * 32 * 3))
        Image.frombytes("RGB", (32, 32), data).save(path, format="PNG")
        lines.append(json.dumps({
            "image_id": image_id,
            "uri": str(path),
            "true_class": "GAN" if i % 2 == 0 else "Real",
            "gender": "F" if i % 4 < 2 else "M",
        }))
    manifest = root / "manifest.jsonl"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest.with_name(manifest.name + ".meta.json").write_text(
        json.dumps({"source": "toy", "setting": setting}) + "\n", encoding="utf-8")
    return manifest


@pytest.fixture(scope="session")
def tiny_vit_checkpoint(tmp_path_factory):
    return init_checkpoint("vit-large-16", tmp_path_factory.mktemp("ckpt_vit"),
                           size="tiny", seed=0)
