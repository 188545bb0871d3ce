import pytest

from qroute.arch import grid_architecture
from qroute.models import Gate, GateKind, MappedCircuit, Mapping


def mapped(gates, num_physical: int = 4, name: str = "sched") -> MappedCircuit:
    identity = Mapping.identity(num_physical, num_physical)
    return MappedCircuit(tuple(gates), num_physical, identity, identity.copy(), name=name)


@pytest.fixture()
def square():
    return grid_architecture(2, 2)


@pytest.fixture()
def routed_fragment():
    """t q1; cx q0,q2; cx q0,q3 routed onto the 2x2 grid with one swap."""
    return mapped(
        [
            Gate(0, GateKind.T, (1,), source_id=0),
            Gate(1, GateKind.CX, (0, 2), source_id=1),
            Gate(2, GateKind.SWAP, (0, 1), inserted=True),
            Gate(3, GateKind.CX, (1, 3), source_id=2),
        ]
    )
