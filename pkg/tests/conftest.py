import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci", derandomize=True, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def vit_uncompressed_result():
    from ganaudit.fixtures import reference_manifest, reference_predictions
    from ganaudit.metrics import evaluate_all
    from ganaudit.predictions import join

    es = join(reference_manifest("uncompressed"),
              reference_predictions("vit", "uncompressed"))
    return evaluate_all(es)


@pytest.fixture(scope="session")
def vit_compressed_result():
    from ganaudit.fixtures import reference_manifest, reference_predictions
    from ganaudit.metrics import evaluate_all
    from ganaudit.predictions import join

    es = join(reference_manifest("jpeg-q90"),
              reference_predictions("vit", "jpeg-q90"))
    return evaluate_all(es)
