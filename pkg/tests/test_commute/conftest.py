import pytest

from qroute.qasm import parse

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def circuit_of(body: str, num_qubits: int = 4):
    return parse(f"{HEADER}qreg q[{num_qubits}];\n{body}")


@pytest.fixture()
def fragment():
    return circuit_of("t q[1];\ncx q[0],q[2];\ncx q[0],q[3];\n")


@pytest.fixture()
def blocked_fragment():
    return circuit_of("t q[2];\ncx q[0],q[2];\ncx q[0],q[3];\n")
