import logging
import math

import numpy as np

from qroute.models import MappedCircuit
from qroute.qasm import emit, parse
from tests.conftest import build_random_circuit

logger = logging.getLogger(__name__)


def _same_gates(left, right) -> bool:
    if [(g.kind, g.qubits, g.cbit) for g in left.gates] != [(g.kind, g.qubits, g.cbit) for g in right.gates]:
        return False
    return all(
        math.isclose(a, b, rel_tol=1e-11, abs_tol=1e-12)
        for g, h in zip(left.gates, right.gates)
        for a, b in zip(g.params, h.params)
    )


def test_random_circuits_survive_emit_and_parse():
    logger.info("emit/parse round trip on random circuits: TEST FUNCTION STARTING")
    rng = np.random.default_rng(11)
    for index in range(200):
        num_qubits = int(rng.integers(1, 7))
        circuit = build_random_circuit(rng, num_qubits, int(rng.integers(0, 25)), name=f"random-{index}")

        text = emit(MappedCircuit.unrouted(circuit))
        reparsed = parse(text)

        assert reparsed.num_logical == circuit.num_logical, circuit.name
        assert reparsed.cregs == circuit.cregs, circuit.name
        assert _same_gates(reparsed, circuit), circuit.name
        assert emit(MappedCircuit.unrouted(reparsed)) == text, circuit.name


def test_parsed_benchmarks_are_a_fixed_point(benchmarks_dir):
    for path in sorted(benchmarks_dir.glob("*.qasm")):
        circuit = parse(path.read_text(encoding="utf-8"))
        once = parse(emit(MappedCircuit.unrouted(circuit)))
        twice = parse(emit(MappedCircuit.unrouted(once)))
        assert _same_gates(once, circuit), path.name
        assert _same_gates(twice, once), path.name
