"""Duration-unaware comparator: front-layer swap search with lookahead and decay.

Gates are emitted in dependency order with no notion of time; the result is scored by
`sched.asap_schedule` like any other routed circuit.
"""
import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from qroute.arch import Architecture
from qroute.commute import build_dag
from qroute.models import Circuit, Gate, GateKind, MappedCircuit, MappedSchedule, Mapping
from qroute.routing.heuristics import swapped_position
from qroute.routing.router import check_capacity, check_initial_mapping
from qroute.schemas.schemas import BaselineOptions
from qroute.sched import asap_schedule

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class BaselineRouter:
    def __init__(self, circuit: Circuit, arch: Architecture, initial: Mapping, options: Optional[BaselineOptions] = None):
        check_capacity(circuit, arch)
        check_initial_mapping(circuit, arch, initial)
        self.circuit = circuit
        self.arch = arch
        self.options = options or BaselineOptions()
        self.dag = build_dag(circuit)
        self.initial = initial.copy()
        self.mapping = initial.copy()
        self.emitted: List[Gate] = []
        self.decay = [1.0] * arch.num_qubits
        self.stats: Dict[str, int] = {"swaps": 0, "release_valve": 0, "swap_evaluations": 0}
        self._unresolved = [len(p) for p in self.dag.predecessors]
        self._done = [False] * len(circuit)

    def _physical(self, gate: Gate) -> Tuple[int, ...]:
        return tuple(self.mapping.physical(q) for q in gate.qubits)

    def _emit(self, gate: Gate) -> None:
        self.emitted.append(gate.relabel(self._physical(gate), gate_id=len(self.emitted), source_id=gate.id))
        self._done[gate.id] = True

    def _apply_swap(self, edge: Edge) -> None:
        self.emitted.append(Gate(len(self.emitted), GateKind.SWAP, edge, inserted=True))
        self.mapping.swap_physical(*edge)
        self.stats["swaps"] += 1

    def _executable(self, gate: Gate) -> bool:
        if not gate.is_two_qubit:
            return True
        return self.arch.is_coupled(*self._physical(gate))

    def _extended_set(self, front: Sequence[Gate]) -> List[Gate]:
        """Up to `extended_set_size` two-qubit successors, breadth-first from the front."""
        limit = self.options.extended_set_size
        extended: List[Gate] = []
        if limit == 0:
            return extended
        unresolved = {}
        layer = list(front)
        while layer and len(extended) < limit:
            next_layer = []
            for gate in layer:
                for successor in sorted(self.dag.successors[gate.id]):
                    remaining = unresolved.get(successor, self._unresolved[successor]) - 1
                    unresolved[successor] = remaining
                    if remaining == 0:
                        candidate = self.dag.gates[successor]
                        next_layer.append(candidate)
                        if candidate.is_two_qubit:
                            extended.append(candidate)
                            if len(extended) >= limit:
                                return extended
            layer = next_layer
        return extended

    def _cost(self, gates: Sequence[Gate], edge: Edge) -> float:
        if not gates:
            return 0.0
        dist = self.arch.distances
        total = 0
        for gate in gates:
            p1, p2 = self._physical(gate)
            total += dist[swapped_position(p1, edge)][swapped_position(p2, edge)]
        return total / len(gates)

    def _score(self, edge: Edge, front_two: Sequence[Gate], extended: Sequence[Gate]) -> float:
        lookahead = self.options.extended_set_weight * self._cost(extended, edge)
        return max(self.decay[edge[0]], self.decay[edge[1]]) * (self._cost(front_two, edge) + lookahead)

    def _candidates(self, front_two: Sequence[Gate]) -> List[Edge]:
        edges: Set[Edge] = set()
        for gate in front_two:
            for p in self._physical(gate):
                for neighbor in self.arch.neighbors(p):
                    edges.add((min(p, neighbor), max(p, neighbor)))
        return sorted(edges)

    def _reset_decay(self) -> None:
        self.decay = [1.0] * self.arch.num_qubits

    def _release_valve(self, front_two: Sequence[Gate]) -> None:
        """Walk the nearest front gate together along a shortest path."""
        target = min(front_two, key=lambda g: (self.arch.distances[self._physical(g)[0]][self._physical(g)[1]], g.id))
        p1, p2 = self._physical(target)
        path = nx.shortest_path(self.arch.graph, p1, p2)
        for a, b in zip(path[:-2], path[1:-1]):
            self._apply_swap((min(a, b), max(a, b)))
        self.stats["release_valve"] += 1
        logger.debug(f"Release valve routed gate {target.id} along {path}")

    def run(self) -> MappedCircuit:
        front: List[Gate] = [g for g in self.dag.gates if self._unresolved[g.id] == 0]
        swaps_since_progress = 0
        swaps_since_reset = 0
        valve_after = 10 * self.arch.num_qubits
        while front:
            ready = [g for g in front if self._executable(g)]
            if ready:
                for gate in ready:
                    self._emit(gate)
                released: List[Gate] = []
                for gate in ready:
                    for successor in sorted(self.dag.successors[gate.id]):
                        self._unresolved[successor] -= 1
                        if self._unresolved[successor] == 0:
                            released.append(self.dag.gates[successor])
                front = sorted([g for g in front if not self._done[g.id]] + released, key=lambda g: g.id)
                swaps_since_progress = 0
                self._reset_decay()
                continue

            front_two = [g for g in front if g.is_two_qubit]
            if swaps_since_progress >= valve_after:
                self._release_valve(front_two)
                swaps_since_progress = 0
                continue

            extended = self._extended_set(front)
            candidates = self._candidates(front_two)
            self.stats["swap_evaluations"] += len(candidates)
            best = min(candidates, key=lambda edge: self._score(edge, front_two, extended))
            self._apply_swap(best)
            swaps_since_progress += 1
            swaps_since_reset += 1
            if swaps_since_reset >= self.options.decay_reset_interval:
                self._reset_decay()
                swaps_since_reset = 0
            else:
                self.decay[best[0]] += self.options.delta
                self.decay[best[1]] += self.options.delta

        return MappedCircuit(
            gates=tuple(self.emitted),
            num_physical=self.arch.num_qubits,
            initial_mapping=self.initial,
            final_mapping=self.mapping.copy(),
            cregs=self.circuit.cregs,
            name=self.circuit.name,
        )


def baseline_route(
    circuit: Circuit, arch: Architecture, initial: Mapping, options: Optional[BaselineOptions] = None
) -> MappedSchedule:
    router = BaselineRouter(circuit, arch, initial, options)
    mapped = router.run()
    schedule = asap_schedule(mapped, arch)
    schedule.stats.update(router.stats)
    logger.info(
        f"Baseline routed '{circuit.name}' on '{arch.name}': depth {schedule.weighted_depth}, "
        f"{schedule.swap_count} swap(s)"
    )
    return schedule
