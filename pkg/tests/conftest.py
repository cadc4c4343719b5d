import pytest
from hypothesis import HealthCheck, settings

from mackeykit.groups import named_group
from mackeykit.rings import Ring

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

FIELDS = ["Fp:2", "Fp:3", "Q"]
RINGS = FIELDS + ["Z"]


@pytest.fixture(params=["C2", "C3", "C4", "C6", "S3", "D4"])
def small_group(request):
    return named_group(request.param)


@pytest.fixture(params=RINGS)
def ring(request):
    return Ring.parse(request.param)


@pytest.fixture(params=FIELDS)
def field(request):
    return Ring.parse(request.param)
