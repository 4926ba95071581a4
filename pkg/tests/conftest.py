import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from strandpoly.graphio import load_graph_file
from strandpoly.stranded import melon

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def melon_graph():
    return melon()


@pytest.fixture(scope="session")
def planar_graph():
    return load_graph_file(DATA / "planar.json").graph
