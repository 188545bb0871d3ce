"""Per-qubit dependency structure and the commutation-forward (CF) frontier.

Two gates sharing a qubit may be reordered on it when their roles on that qubit fall in
the same commutation class: diagonal (Z-basis) operations and CX controls commute with
each other, X-axis operations and CX targets commute with each other. Everything else,
barrier included, keeps program order.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from qroute.models import Circuit, Gate, GateKind

CX_CONTROL = "cx.control"
CX_TARGET = "cx.target"

Z_CLASS: FrozenSet[str] = frozenset(
    {
        GateKind.Z.value,
        GateKind.S.value,
        GateKind.SDG.value,
        GateKind.T.value,
        GateKind.TDG.value,
        GateKind.RZ.value,
        GateKind.U1.value,
        CX_CONTROL,
    }
)
X_CLASS: FrozenSet[str] = frozenset({GateKind.X.value, GateKind.RX.value, CX_TARGET})

_CLASS_OF: Dict[str, str] = {**{role: "z" for role in Z_CLASS}, **{role: "x" for role in X_CLASS}}


def role(gate: Gate, qubit: int) -> str:
    """Role a gate plays on one of its qubits."""
    if gate.kind is GateKind.CX:
        return CX_CONTROL if gate.qubits[0] == qubit else CX_TARGET
    return gate.kind.value


def commutation_class(role_name: str) -> Optional[str]:
    return _CLASS_OF.get(role_name)


def commutes(g1: Gate, role1: str, g2: Gate, role2: str) -> bool:
    """Whether g1 and g2, acting on a shared qubit in the given roles, may swap order there."""
    class1 = commutation_class(role1)
    return class1 is not None and class1 == commutation_class(role2)


def gates_commute(g1: Gate, g2: Gate) -> bool:
    """True when the gates commute on every qubit they share (vacuously true when disjoint)."""
    for qubit in set(g1.qubits) & set(g2.qubits):
        if not commutes(g1, role(g1, qubit), g2, role(g2, qubit)):
            return False
    return True


@dataclass(frozen=True)
class DependencyDag:
    gates: Tuple[Gate, ...]
    occupancy: Tuple[Tuple[int, ...], ...]
    predecessors: Tuple[FrozenSet[int], ...]
    successors: Tuple[FrozenSet[int], ...]

    @property
    def num_qubits(self) -> int:
        return len(self.occupancy)

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(gate.id for gate in self.gates)
        for gate_id, preds in enumerate(self.predecessors):
            g.add_edges_from((p, gate_id) for p in sorted(preds))
        return g


def build_dag(circuit: Circuit) -> DependencyDag:
    occupancy: List[List[int]] = [[] for _ in range(circuit.num_logical)]
    predecessors: List[Set[int]] = [set() for _ in circuit.gates]
    successors: List[Set[int]] = [set() for _ in circuit.gates]
    for gate in circuit.gates:
        for qubit in gate.qubits:
            if occupancy[qubit]:
                previous = occupancy[qubit][-1]
                predecessors[gate.id].add(previous)
                successors[previous].add(gate.id)
            occupancy[qubit].append(gate.id)
    return DependencyDag(
        gates=circuit.gates,
        occupancy=tuple(tuple(ids) for ids in occupancy),
        predecessors=tuple(frozenset(p) for p in predecessors),
        successors=tuple(frozenset(s) for s in successors),
    )


class CommutationFrontier:
    """Incremental CF tracker: mark gates executed, ask which unexecuted gates are available."""

    def __init__(self, dag: DependencyDag):
        self.dag = dag
        self._done = [False] * len(dag.gates)
        self._heads = [0] * dag.num_qubits
        self._remaining = len(dag.gates)

    @property
    def remaining(self) -> int:
        return self._remaining

    @property
    def finished(self) -> bool:
        return self._remaining == 0

    def is_done(self, gate_id: int) -> bool:
        return self._done[gate_id]

    def mark_done(self, gate_id: int) -> None:
        if self._done[gate_id]:
            raise ValueError(f"gate {gate_id} already executed")
        self._done[gate_id] = True
        self._remaining -= 1

    def mark_all(self, gate_ids: Iterable[int]) -> None:
        for gate_id in gate_ids:
            self.mark_done(gate_id)

    def _ready_on(self, qubit: int) -> List[int]:
        ids = self.dag.occupancy[qubit]
        head = self._heads[qubit]
        while head < len(ids) and self._done[ids[head]]:
            head += 1
        self._heads[qubit] = head
        if head == len(ids):
            return []
        first = self.dag.gates[ids[head]]
        ready = [first.id]
        first_class = commutation_class(role(first, qubit))
        if first_class is None:
            return ready
        for gate_id in ids[head + 1 :]:
            if self._done[gate_id]:
                continue
            if commutation_class(role(self.dag.gates[gate_id], qubit)) != first_class:
                break
            ready.append(gate_id)
        return ready

    def frontier(self) -> List[Gate]:
        """Unexecuted gates available on every one of their qubits, ascending by id."""
        hits: Dict[int, int] = {}
        for qubit in range(self.dag.num_qubits):
            for gate_id in self._ready_on(qubit):
                hits[gate_id] = hits.get(gate_id, 0) + 1
        ready = sorted(g for g, count in hits.items() if count == len(self.dag.gates[g].qubits))
        return [self.dag.gates[g] for g in ready]


def cf_frontier(dag: DependencyDag, done: Iterable[int]) -> List[Gate]:
    tracker = CommutationFrontier(dag)
    tracker.mark_all(set(done))
    return tracker.frontier()
