from pathlib import Path

import numpy as np
import pytest

from qroute.models import Circuit, Gate, GateKind, Register

BENCHMARKS_DIR = Path(__file__).resolve().parent.parent / "benchmarks"

_SINGLE = [GateKind.H, GateKind.X, GateKind.Y, GateKind.Z, GateKind.S, GateKind.SDG, GateKind.T, GateKind.TDG]
_ROTATIONS = [GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.U1, GateKind.U2, GateKind.U3]


@pytest.fixture(autouse=True)
def no_log_file(monkeypatch):
    monkeypatch.setenv("QROUTE_LOG_FILE", "")


@pytest.fixture()
def benchmarks_dir():
    return BENCHMARKS_DIR


def _angles(rng: np.random.Generator, kind: GateKind) -> tuple:
    return tuple(float(a) for a in rng.uniform(-np.pi, np.pi, size=kind.num_params))


def build_random_circuit(
    rng: np.random.Generator, num_qubits: int, num_gates: int, name: str = "random", measure: bool = True
) -> Circuit:
    """Clifford+T, every rotation kind, cx, the occasional swap or barrier, and sometimes trailing measures."""
    gates = []
    for _ in range(num_gates):
        roll = rng.random()
        if roll < 0.45 and num_qubits >= 2:
            a, b = rng.choice(num_qubits, size=2, replace=False).tolist()
            kind = GateKind.SWAP if rng.random() < 0.1 else GateKind.CX
            gates.append(Gate(0, kind, (a, b)))
        elif roll < 0.5:
            size = int(rng.integers(1, num_qubits + 1))
            qubits = tuple(sorted(rng.choice(num_qubits, size=size, replace=False).tolist()))
            gates.append(Gate(0, GateKind.BARRIER, qubits))
        elif roll < 0.65:
            kind = _ROTATIONS[int(rng.integers(len(_ROTATIONS)))]
            gates.append(Gate(0, kind, (int(rng.integers(num_qubits)),), _angles(rng, kind)))
        else:
            kind = _SINGLE[int(rng.integers(len(_SINGLE)))]
            gates.append(Gate(0, kind, (int(rng.integers(num_qubits)),)))
    cregs = ()
    if measure and rng.random() < 0.3:
        cregs = (Register("c", num_qubits),)
        gates.extend(Gate(0, GateKind.MEASURE, (q,), cbit=q) for q in range(num_qubits))
    return Circuit.from_gates(gates, num_qubits, cregs=cregs, name=name)


def random_state(rng: np.random.Generator, num_qubits: int) -> np.ndarray:
    state = rng.normal(size=2**num_qubits) + 1j * rng.normal(size=2**num_qubits)
    return state / np.linalg.norm(state)


@pytest.fixture()
def random_circuit():
    return build_random_circuit
