import hashlib
import json
import subprocess
import sys

import pytest

from ganaudit.cli import main
from ganaudit.fixtures import make_toy_corpus, make_toy_predictions
from ganaudit.manifest import load_manifest
from ganaudit.predictions import save_predictions


@pytest.fixture()
def workspace(tmp_path):
    corpus = tmp_path / "corpus"
    manifest_path = make_toy_corpus(corpus, n=16)
    manifest = load_manifest(manifest_path)
    preds_unc = tmp_path / "preds_uncompressed.jsonl"
    save_predictions(make_toy_predictions(manifest, "toy-model", "uncompressed"), preds_unc)
    preds_q90 = tmp_path / "preds_jpeg-q90.jsonl"
    save_predictions(make_toy_predictions(manifest, "toy-model", "jpeg-q90"), preds_q90)
    out = tmp_path / "out"
    config = {
        "manifests": {
            "uncompressed": str(manifest_path),
            "jpeg-q90": str(out / "manifest_jpeg-q90.jsonl"),
        },
        "predictions": {
            "uncompressed": str(preds_unc),
            "jpeg-q90": str(preds_q90),
        },
        "compression": {"quality": 90, "subsampling": "4:2:0"},
        "output_dir": str(out),
        "figures": False,
        "offline": True,
    }
    config_path = tmp_path / "audit.json"
    config_path.write_text(json.dumps(config, indent=2), encoding="utf-8")
    return {"config": config_path, "out": out, "tmp": tmp_path, "raw": config}


def data_file_hashes(out_dir):
    hashes = {}
    for path in sorted(out_dir.rglob("*")):
        if path.is_file() and path.name != "run.log":
            hashes[str(path.relative_to(out_dir))] = hashlib.sha256(path.read_bytes()).hexdigest()
    return hashes


class TestValidate:
    def test_ok_exit_zero(self, workspace):
        code = main(["validate", "--config", str(workspace["config"]),
                     "--setting", "uncompressed"])
        assert code == 0
        report = json.loads((workspace["out"] / "validation_uncompressed.json").read_text())
        assert report["ok"] is True
        assert report["group_sizes"]["F"] == 8

    def test_validation_failure_exit_one(self, workspace, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text(json.dumps({"image_id": "a", "uri": "does/not/exist.png",
                                   "true_class": "GAN", "gender": "F"}) + "\n")
        code = main(["validate", "--manifest", str(bad), "--out", str(tmp_path / "o")])
        assert code == 1


class TestEvaluate:
    def test_writes_audit_and_tables(self, workspace):
        code = main(["evaluate", "--config", str(workspace["config"]),
                     "--setting", "uncompressed"])
        assert code == 0
        out = workspace["out"]
        assert (out / "audit_uncompressed.json").exists()
        assert (out / "individual_uncompressed.md").exists()
        assert (out / "individual_uncompressed.csv").exists()
        assert (out / "pairwise_uncompressed.csv").exists()
        assert (out / "flags_uncompressed.json").exists()

    def test_missing_prediction_file_exit_two_no_partial_output(self, workspace):
        raw = dict(workspace["raw"])
        raw["predictions"] = {"uncompressed": str(workspace["tmp"] / "nope.jsonl")}
        config_path = workspace["tmp"] / "broken.json"
        config_path.write_text(json.dumps(raw), encoding="utf-8")
        code = main(["evaluate", "--config", str(config_path), "--setting", "uncompressed"])
        assert code == 2
        assert not (workspace["out"] / "audit_uncompressed.json").exists()

    def test_figures_rendered_when_enabled(self, workspace):
        code = main(["evaluate", "--config", str(workspace["config"]),
                     "--setting", "uncompressed", "--format", "json"])
        assert code == 0
        raw = dict(workspace["raw"])
        raw["figures"] = True
        config_path = workspace["tmp"] / "with_figs.json"
        config_path.write_text(json.dumps(raw), encoding="utf-8")
        code = main(["evaluate", "--config", str(config_path), "--setting", "uncompressed"])
        assert code == 0
        assert (workspace["out"] / "fig_individual_uncompressed.png").exists()
        assert (workspace["out"] / "fig_pairwise_uncompressed.png").exists()


class TestPipeline:
    def run_all(self, workspace):
        config = str(workspace["config"])
        assert main(["validate", "--config", config, "--setting", "uncompressed"]) == 0
        assert main(["compress", "--config", config]) == 0
        assert main(["evaluate", "--config", config, "--setting", "uncompressed"]) == 0
        assert main(["evaluate", "--config", config, "--setting", "jpeg-q90"]) == 0
        assert main(["compare", "--config", config, "--setting", "jpeg-q90"]) == 0
        assert main(["report", "--config", config]) == 0

    def test_full_pipeline(self, workspace):
        self.run_all(workspace)
        out = workspace["out"]
        derived = load_manifest(out / "manifest_jpeg-q90.jsonl")
        assert derived.setting == "jpeg-q90"
        assert len(derived) == 16
        comparison = json.loads((out / "comparison_uncompressed_vs_jpeg-q90.json").read_text())
        assert comparison["model_id"] == "toy-model"
        assert (out / "comparison_uncompressed_vs_jpeg-q90.md").exists()

    def test_compare_before_evaluate_exit_two(self, workspace):
        code = main(["compare", "--config", str(workspace["config"]),
                     "--setting", "jpeg-q90"])
        assert code == 2

    def test_rerun_is_byte_identical(self, workspace, tmp_path):
        def figures_on(raw, out_dir):
            updated = dict(raw)
            updated["figures"] = True
            updated["output_dir"] = str(out_dir)
            updated["manifests"] = dict(raw["manifests"])
            updated["manifests"]["jpeg-q90"] = str(out_dir / "manifest_jpeg-q90.jsonl")
            return updated

        out1 = tmp_path / "out1"
        config1 = workspace["tmp"] / "audit_run1.json"
        config1.write_text(json.dumps(figures_on(workspace["raw"], out1)), encoding="utf-8")
        self.run_all({"config": config1})
        first = data_file_hashes(out1)

        out2 = tmp_path / "out2"
        config2 = workspace["tmp"] / "audit_run2.json"
        config2.write_text(json.dumps(figures_on(workspace["raw"], out2)), encoding="utf-8")
        self.run_all({"config": config2})
        second = data_file_hashes(out2)

        # the derived manifests embed their own absolute paths; compare the rest
        skip = {"manifest_jpeg-q90.jsonl", "manifest_jpeg-q90.jsonl.meta.json"}
        assert {k: v for k, v in first.items() if k not in skip} \
            == {k: v for k, v in second.items() if k not in skip}


def test_console_entry_point(workspace):
    result = subprocess.run(
        [sys.executable, "-m", "ganaudit", "validate", "--config", str(workspace["config"]),
         "--setting", "uncompressed"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
    assert "validate[uncompressed]" in result.stdout
