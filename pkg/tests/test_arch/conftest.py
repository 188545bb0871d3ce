import pytest

from qroute.arch import grid_architecture

SQUARE_DOCUMENT = """
name: square
num_qubits: 4
edges:
  - [0, 1]
  - [0, 2]
  - [1, 3]
  - [2, 3]
grid:
  - [0, 0, 0]
  - [1, 0, 1]
  - [2, 1, 0]
  - [3, 1, 1]
durations:
  cx: 3
"""


@pytest.fixture()
def square_document():
    return SQUARE_DOCUMENT


@pytest.fixture()
def grid_3x3():
    return grid_architecture(3, 3)
