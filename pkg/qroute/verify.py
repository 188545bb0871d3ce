"""Correctness oracles for routed circuits.

`permutation_check` replays a routed schedule against the original circuit's
commutation frontier; `statevector_equiv` simulates both circuits densely. The
simulator is dense and limited to small registers.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from qroute.arch import Architecture
from qroute.commute import CommutationFrontier, build_dag
from qroute.exceptions import VerificationSizeError
from qroute.models import Circuit, Gate, GateKind, MappedCircuit, MappedSchedule, Mapping

logger = logging.getLogger(__name__)

MAX_STATEVECTOR_QUBITS = 12

_SQRT_HALF = 1 / math.sqrt(2)


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]], dtype=complex
    )


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _diag(a: complex, b: complex) -> np.ndarray:
    return np.array([[a, 0], [0, b]], dtype=complex)


_FIXED: Dict[GateKind, np.ndarray] = {
    GateKind.H: np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: _diag(1, -1),
    GateKind.S: _diag(1, 1j),
    GateKind.SDG: _diag(1, -1j),
    GateKind.T: _diag(1, np.exp(1j * math.pi / 4)),
    GateKind.TDG: _diag(1, np.exp(-1j * math.pi / 4)),
    GateKind.CX: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
}

_PARAMETRIC: Dict[GateKind, Callable[..., np.ndarray]] = {
    GateKind.RX: _rx,
    GateKind.RY: _ry,
    GateKind.RZ: lambda lam: _diag(np.exp(-0.5j * lam), np.exp(0.5j * lam)),
    GateKind.U1: lambda lam: _diag(1, np.exp(1j * lam)),
    GateKind.U2: lambda phi, lam: _u3(math.pi / 2, phi, lam),
    GateKind.U3: _u3,
}


def gate_matrix(gate: Gate) -> np.ndarray:
    if gate.kind in _FIXED:
        return _FIXED[gate.kind]
    return _PARAMETRIC[gate.kind](*gate.params)


def _apply(state: np.ndarray, gate: Gate) -> np.ndarray:
    if gate.kind in (GateKind.MEASURE, GateKind.BARRIER):
        return state
    if gate.kind is GateKind.SWAP:
        return np.swapaxes(state, *gate.qubits)
    k = len(gate.qubits)
    tensor = gate_matrix(gate).reshape((2,) * (2 * k))
    axes = list(gate.qubits)
    state = np.tensordot(tensor, state, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(state, list(range(k)), axes)


def simulate(gates: Sequence[Gate], num_qubits: int, initial_state: Optional[np.ndarray] = None) -> np.ndarray:
    """Apply gates to a dense state; qubit 0 is the most significant index. Returns a flat vector."""
    if num_qubits > MAX_STATEVECTOR_QUBITS:
        raise VerificationSizeError(f"statevector simulation limited to {MAX_STATEVECTOR_QUBITS} qubits, got {num_qubits}")
    if initial_state is None:
        state = np.zeros((2,) * num_qubits, dtype=complex)
        state[(0,) * num_qubits] = 1.0
    else:
        state = np.asarray(initial_state, dtype=complex).reshape((2,) * num_qubits)
    for gate in gates:
        state = _apply(state, gate)
    return state.reshape(-1)


def _embed(logical_state: np.ndarray, mapping: Mapping) -> np.ndarray:
    """Place a logical state on physical qubits per `mapping`; unused physical qubits in |0>."""
    n_l, n_p = mapping.num_logical, mapping.num_physical
    full = logical_state.reshape((2,) * n_l)
    zero = np.array([1, 0], dtype=complex)
    for _ in range(n_p - n_l):
        full = np.multiply.outer(full, zero)
    placed = set(mapping.as_list())
    destinations = mapping.as_list() + [p for p in range(n_p) if p not in placed]
    return np.moveaxis(full, list(range(n_p)), destinations).reshape(-1)


def _extract(physical_state: np.ndarray, mapping: Mapping) -> np.ndarray:
    """Logical amplitudes with every unused physical qubit projected on |0>."""
    n_l, n_p = mapping.num_logical, mapping.num_physical
    tensor = physical_state.reshape((2,) * n_p)
    placed = mapping.as_list()
    rest = [p for p in range(n_p) if p not in set(placed)]
    tensor = np.moveaxis(tensor, placed + rest, list(range(n_p)))
    return tensor[(Ellipsis,) + (0,) * len(rest)].reshape(-1)


@dataclass
class EquivalenceResult:
    ok: bool
    overlap: float
    message: str = ""


def _mapped(routed: Union[MappedSchedule, MappedCircuit]) -> MappedCircuit:
    return routed.mapped_circuit if isinstance(routed, MappedSchedule) else routed


def statevector_equiv(
    original: Circuit,
    routed: Union[MappedSchedule, MappedCircuit],
    tol: float = 1e-9,
    initial_state: Optional[np.ndarray] = None,
) -> EquivalenceResult:
    """Compare the original and routed circuits up to global phase.

    `initial_state` is an optional logical input state; the routed circuit receives it
    through its initial mapping.
    """
    mc = _mapped(routed)
    size = max(original.num_logical, mc.num_physical)
    if size > MAX_STATEVECTOR_QUBITS:
        raise VerificationSizeError(
            f"statevector check supports at most {MAX_STATEVECTOR_QUBITS} qubits, circuit needs {size}"
        )
    logical_in = simulate([], original.num_logical, initial_state)
    expected = simulate(original.gates, original.num_logical, logical_in)
    physical = simulate(mc.gates, mc.num_physical, _embed(logical_in, mc.initial_mapping))
    actual = _extract(physical, mc.final_mapping)
    overlap = float(abs(np.vdot(expected, actual)))
    ok = overlap >= 1 - tol
    message = "" if ok else f"states differ: |<original|routed>| = {overlap:.12f}"
    if not ok:
        logger.warning(f"Statevector mismatch for '{original.name}': overlap {overlap:.12f}")
    return EquivalenceResult(ok, overlap, message)


@dataclass(frozen=True)
class TraceEntry:
    start: int
    edge: Tuple[int, int]
    before: Tuple[int, ...]
    after: Tuple[int, ...]


@dataclass
class PermutationTrace:
    entries: List[TraceEntry] = field(default_factory=list)

    def compose(self, initial: Mapping) -> Mapping:
        mapping = initial.copy()
        for entry in self.entries:
            mapping.swap_physical(*entry.edge)
        return mapping


@dataclass
class PermutationResult:
    ok: bool
    errors: List[str]
    trace: PermutationTrace

    def report(self) -> str:
        if self.ok:
            return f"permutation check passed ({len(self.trace.entries)} swap(s) traced)"
        return "permutation check failed:\n" + "\n".join(f"  - {error}" for error in self.errors)


def _timed_gates(routed: Union[MappedSchedule, MappedCircuit]) -> List[Tuple[int, int, Gate]]:
    if isinstance(routed, MappedSchedule):
        return [(sg.start, index, sg.gate) for index, sg in enumerate(routed.scheduled)]
    return [(index, index, gate) for index, gate in enumerate(routed.gates)]


def _regroup_decomposed(items: List[Tuple[int, int, Gate]], errors: List[str]) -> List[Tuple[int, int, Gate]]:
    """Fold each decomposed CX triple back into a single swap."""
    items = sorted(items, key=lambda item: item[1])
    merged = []
    index = 0
    while index < len(items):
        start, order, gate = items[index]
        if not gate.decomposed:
            merged.append(items[index])
            index += 1
            continue
        triple = [item[2] for item in items[index : index + 3]]
        a, b = gate.qubits
        expected = [(a, b), (b, a), (a, b)]
        if len(triple) < 3 or [g.qubits for g in triple] != expected or not all(g.decomposed for g in triple):
            errors.append(f"gate {order}: decomposed swap is not a cx({a},{b}) cx({b},{a}) cx({a},{b}) triple")
            merged.append(items[index])
            index += 1
            continue
        swap = Gate(gate.id, GateKind.SWAP, (min(a, b), max(a, b)), source_id=gate.source_id, inserted=gate.inserted)
        merged.append((start, order, swap))
        index += 3
    return merged


def _same_operation(routed: Gate, original: Gate, logical: Tuple[int, ...]) -> bool:
    if routed.kind is not original.kind:
        return False
    if routed.kind is GateKind.SWAP:
        return set(logical) == set(original.qubits)
    if logical != original.qubits or routed.cbit != original.cbit:
        return False
    return all(math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9) for a, b in zip(routed.params, original.params))


def permutation_check(original: Circuit, routed: Union[MappedSchedule, MappedCircuit]) -> PermutationResult:
    """Replay routed gates in start order and match them against the original circuit."""
    mc = _mapped(routed)
    errors: List[str] = []
    trace = PermutationTrace()
    frontier = CommutationFrontier(build_dag(original))
    mapping = mc.initial_mapping.copy()

    if mc.initial_mapping.num_logical != original.num_logical:
        errors.append(
            f"initial mapping has {mc.initial_mapping.num_logical} logical qubits, circuit has {original.num_logical}"
        )
        return PermutationResult(False, errors, trace)

    items = sorted(_regroup_decomposed(_timed_gates(routed), errors), key=lambda item: (item[0], item[1]))
    for start, order, gate in items:
        if gate.inserted:
            if gate.kind is not GateKind.SWAP:
                errors.append(f"gate {order}: inserted gate is {gate.kind.value}, not swap")
                continue
            before = tuple(mapping.as_list())
            mapping.swap_physical(*gate.qubits)
            trace.entries.append(TraceEntry(start, tuple(gate.qubits), before, tuple(mapping.as_list())))
            continue

        logical = tuple(mapping.logical(p) for p in gate.qubits)
        if any(q is None for q in logical):
            errors.append(f"gate {order} ({gate.describe()}) acts on an unmapped physical qubit at t={start}")
            continue
        available = frontier.frontier()
        if gate.source_id is not None:
            candidates = [g for g in available if g.id == gate.source_id]
        else:
            candidates = available
        match = next((g for g in candidates if _same_operation(gate, g, logical)), None)
        if match is None:
            errors.append(
                f"gate {order} ({gate.describe()}) at t={start} on logical {list(logical)} "
                f"does not match an available original gate"
            )
            continue
        frontier.mark_done(match.id)

    if frontier.remaining:
        missing = [g.id for g in original.gates if not frontier.is_done(g.id)]
        errors.append(f"{len(missing)} original gate(s) never executed: {missing[:10]}")
    if mapping != mc.final_mapping:
        errors.append(f"replayed final mapping {mapping.as_list()} != reported {mc.final_mapping.as_list()}")

    ok = not errors
    if not ok:
        logger.warning(f"Permutation check failed for '{original.name}' with {len(errors)} error(s)")
    return PermutationResult(ok, errors, trace)


def compliance_errors(mc: MappedCircuit, arch: Architecture) -> List[str]:
    """Two-qubit gates acting on uncoupled physical pairs."""
    return [
        f"gate {gate.id} ({gate.describe()}) acts on uncoupled pair {gate.qubits}"
        for gate in mc.gates
        if gate.is_two_qubit and not arch.is_coupled(*gate.qubits)
    ]
