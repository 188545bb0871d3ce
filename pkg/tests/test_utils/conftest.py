import pytest

from qroute.schemas.schemas import CompareRow


@pytest.fixture()
def compare_rows():
    return [
        CompareRow(
            benchmark="a",
            architecture="grid-6x6",
            num_logical=3,
            original_depth=4,
            comet_depth=5,
            baseline_depth=10,
            comet_swaps=1,
            baseline_swaps=2,
            ratio=2.0,
        ),
        CompareRow(
            benchmark="b",
            architecture="grid-6x6",
            num_logical=4,
            original_depth=6,
            comet_depth=10,
            baseline_depth=5,
            comet_swaps=3,
            baseline_swaps=0,
            ratio=0.5,
        ),
        CompareRow(benchmark="c", architecture="grid-6x6", error="CapacityError: too big"),
    ]
