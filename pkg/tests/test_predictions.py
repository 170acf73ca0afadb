import json

import pytest

from ganaudit.errors import JoinError, PredictionError
from ganaudit.manifest import AttributeSet, ClassLabel, ImageRecord, Manifest
from ganaudit.predictions import (
    PredictionRecord,
    join,
    load_predictions,
    predicted_class,
    save_predictions,
)


def pred(image_id, score_gan, model_id="m1", setting="uncompressed"):
    return PredictionRecord(image_id=image_id, score_gan=score_gan,
                            score_real=1.0 - score_gan, model_id=model_id, setting=setting)


def manifest_of(*ids):
    return Manifest(records=tuple(
        ImageRecord(i, f"{i}.png", ClassLabel.GAN, AttributeSet(gender="F")) for i in ids
    ))


class TestLoading:
    def test_valid_row_accepted(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text(json.dumps({"image_id": "a", "score_gan": 0.9, "score_real": 0.1,
                                    "model_id": "m1", "setting": "uncompressed"}) + "\n")
        records = load_predictions(path)
        assert len(records) == 1
        assert records[0].score_gan == 0.9

    def test_sum_violation_rejected(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text(json.dumps({"image_id": "a", "score_gan": 0.7, "score_real": 0.7,
                                    "model_id": "m1", "setting": "s"}) + "\n")
        with pytest.raises(PredictionError, match="sum"):
            load_predictions(path)

    def test_score_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            PredictionRecord("a", 1.4, -0.4, "m1", "s")

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "p.jsonl"
        rows = [{"image_id": "a", "score_gan": 0.9, "score_real": 0.1, "model_id": "m", "setting": "s"}] * 2
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        with pytest.raises(PredictionError, match="duplicate"):
            load_predictions(path)

    def test_mixed_model_id_rejected(self, tmp_path):
        path = tmp_path / "p.jsonl"
        rows = [
            {"image_id": "a", "score_gan": 0.9, "score_real": 0.1, "model_id": "m1", "setting": "s"},
            {"image_id": "b", "score_gan": 0.9, "score_real": 0.1, "model_id": "m2", "setting": "s"},
        ]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        with pytest.raises(PredictionError, match="mixed model_id"):
            load_predictions(path)

    def test_csv_loading(self, tmp_path):
        path = tmp_path / "p.csv"
        path.write_text("image_id,score_gan,score_real,model_id,setting\n"
                        "a,0.25,0.75,m1,s\n", encoding="utf-8")
        records = load_predictions(path)
        assert records[0].score_real == 0.75

    def test_order_insensitive_multiset(self, tmp_path):
        rows = [pred(f"r{i}", 0.1 * (i % 9) + 0.05) for i in range(9)]
        forward = tmp_path / "f.jsonl"
        backward = tmp_path / "b.jsonl"
        save_predictions(rows, forward)
        save_predictions(list(reversed(rows)), backward)
        a = load_predictions(forward)
        b = load_predictions(backward)
        assert sorted(a, key=lambda r: r.image_id) == sorted(b, key=lambda r: r.image_id)


class TestPredictedClass:
    def test_gan_when_score_gan_higher(self):
        assert predicted_class(pred("a", 0.9)) is ClassLabel.GAN

    def test_real_when_score_real_higher(self):
        assert predicted_class(pred("a", 0.2)) is ClassLabel.REAL

    def test_tie_defaults_to_real(self):
        assert predicted_class(pred("a", 0.5)) is ClassLabel.REAL

    def test_tie_rule_configurable(self):
        assert predicted_class(pred("a", 0.5), tie_rule=ClassLabel.GAN) is ClassLabel.GAN


class TestJoin:
    def test_perfect_join(self):
        m = manifest_of("a", "b", "c")
        es = join(m, [pred("a", 0.9), pred("b", 0.2), pred("c", 0.6)])
        assert len(es) == len(m) == 3
        assert es.model_id == "m1"
        assert es.setting == "uncompressed"

    def test_missing_prediction_names_id(self):
        m = manifest_of("a", "b", "c")
        with pytest.raises(JoinError) as excinfo:
            join(m, [pred("a", 0.9), pred("b", 0.2)])
        assert excinfo.value.missing_ids == ["c"]

    def test_orphan_prediction_names_id(self):
        m = manifest_of("a", "b")
        with pytest.raises(JoinError) as excinfo:
            join(m, [pred("a", 0.9), pred("b", 0.2), pred("zz", 0.4)])
        assert excinfo.value.orphan_ids == ["zz"]
