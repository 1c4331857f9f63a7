import sys
from pathlib import Path

import pytest

from uttp import DistanceMatrix, load_instance

sys.path.insert(0, str(Path(__file__).resolve().parent))

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def benchmark(name: str) -> DistanceMatrix:
    """Load a vendored benchmark; skip the test when the file is absent."""
    path = INSTANCES / f"{name}.txt"
    if not path.exists():
        pytest.skip(
            f"{path.name} not vendored (no verified copy available); "
            f"drop the file into instances/ to enable this check"
        )
    return load_instance(path)


@pytest.fixture(scope="session")
def nl4() -> DistanceMatrix:
    return load_instance(INSTANCES / "nl4.txt")


@pytest.fixture(scope="session")
def nl6() -> DistanceMatrix:
    return load_instance(INSTANCES / "nl6.txt")


@pytest.fixture(scope="session")
def nl8() -> DistanceMatrix:
    return load_instance(INSTANCES / "nl8.txt")


@pytest.fixture
def line4() -> DistanceMatrix:
    """Venues at coordinates 0,1,2,3 on a line."""
    return DistanceMatrix.from_rows(
        [[abs(i - j) for j in range(4)] for i in range(4)]
    )


@pytest.fixture
def zeros4() -> DistanceMatrix:
    return DistanceMatrix.from_rows([[0] * 4 for _ in range(4)])
