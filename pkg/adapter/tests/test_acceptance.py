"""Adapter acceptance (criterion 8): schema conformance and determinism.

The prediction file must load through the audit toolkit's own ingest with
zero errors and join bijectively against the manifest; two deterministic runs
must be byte-identical.  No accuracy target.
"""

from contextlib import contextmanager

from conftest import write_toy_manifest
from ganaudit_adapter.infer import infer
from ganaudit_adapter.models import ModelSpec

from ganaudit.manifest import load_manifest
from ganaudit.predictions import join, load_predictions


@contextmanager
def criterion(num, name):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {num} ({name}): FAIL")
        raise
    print(f"\nACCEPTANCE {num} ({name}): PASS")


def test_criterion_8_adapter_conformance(tiny_vit_checkpoint, tmp_path):
    with criterion(8, "adapter conformance on a 10-image toy manifest"):
        manifest_path = write_toy_manifest(tmp_path, 10)
        spec = ModelSpec("vit-large-16", str(tiny_vit_checkpoint))

        first = infer(spec, manifest_path, tmp_path / "run1.jsonl", batch_size=4)
        assert first.written == 10 and not first.errors

        # zero-error ingest through the audit toolkit's loader
        predictions = load_predictions(tmp_path / "run1.jsonl")
        assert len(predictions) == 10

        # bijective join against the manifest
        manifest = load_manifest(manifest_path)
        es = join(manifest, predictions)
        assert len(es) == len(manifest) == 10

        # deterministic: byte-identical rerun
        infer(spec, manifest_path, tmp_path / "run2.jsonl", batch_size=4)
        assert (tmp_path / "run1.jsonl").read_bytes() == (tmp_path / "run2.jsonl").read_bytes()

        print("  10 predictions ingest cleanly, join 1:1, reruns byte-identical")
