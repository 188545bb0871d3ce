import pytest

from qroute.arch import DurationMap, grid_architecture
from qroute.models import Mapping
from qroute.qasm import parse

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def circuit_of(body: str, num_qubits: int, name: str = "case"):
    return parse(f"{HEADER}qreg q[{num_qubits}];\n{body}", name=name)


def timeline(schedule):
    """(kind, physical qubits, start) per emitted gate."""
    return [(sg.gate.kind.value, sg.gate.qubits, sg.start) for sg in schedule.scheduled]


@pytest.fixture()
def square():
    return grid_architecture(2, 2)


@pytest.fixture()
def fragment():
    return circuit_of("t q[1];\ncx q[0],q[2];\ncx q[0],q[3];\n", 4, name="fragment")


@pytest.fixture()
def ladder_case():
    """4 logical qubits on the 3x2 grid."""
    arch = grid_architecture(3, 2)
    circuit = circuit_of("cx q[0],q[2];\nt q[1];\ncx q[0],q[3];\n", 4, name="ladder")
    return circuit, arch, Mapping.identity(4, 6)


@pytest.fixture()
def slow_rotation_case():
    """Long rx on the middle qubit of a 3x3 grid, cx between far corners of its neighborhood."""
    arch = grid_architecture(3, 3).with_durations(DurationMap.from_entries({"rx": 20, "rz": 3}))
    circuit = circuit_of("rx(0.1) q[4];\nrz(0.2) q[5];\ncx q[5],q[6];\n", 9, name="slow")
    return circuit, arch, Mapping.identity(9, 9)


@pytest.fixture()
def corners_case():
    """Every swap helps one cx exactly as much as it hurts another."""
    arch = grid_architecture(3, 3)
    circuit = circuit_of("cx q[0],q[2];\ncx q[0],q[6];\ncx q[8],q[2];\ncx q[8],q[6];\n", 9, name="corners")
    return circuit, arch, Mapping.identity(9, 9)


@pytest.fixture()
def blocked_fragment():
    """The fragment with its t gate on the cx target, which holds q2 at t=0."""
    return circuit_of("t q[2];\ncx q[0],q[2];\ncx q[0],q[3];\n", 4, name="blocked")
