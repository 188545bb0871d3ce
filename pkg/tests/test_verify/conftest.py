import pytest

from qroute.arch import grid_architecture, line_architecture
from qroute.models import Gate, GateKind, MappedCircuit, Mapping
from qroute.qasm import parse


@pytest.fixture()
def bell():
    return parse('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n', name="bell")


@pytest.fixture()
def flipped_bell():
    identity = Mapping.identity(2, 2)
    gates = (Gate(0, GateKind.H, (0,)), Gate(1, GateKind.CX, (1, 0)))
    return MappedCircuit(gates, 2, identity, identity.copy(), name="bell")


@pytest.fixture(params=["line-6", "grid-2x3"])
def small_device(request):
    if request.param == "line-6":
        return line_architecture(6)
    return grid_architecture(2, 3)
