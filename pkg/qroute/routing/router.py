"""Duration-aware swap insertion.

The router simulates the device timeline. Each iteration at time t it takes the
commutation-forward gates, launches the ones whose physical qubits are free and
coupled, then greedily inserts lock-free swaps ranked by (h_basic, h_fine) and
advances to the next lock release.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from qroute.arch import Architecture
from qroute.commute import CommutationFrontier, build_dag
from qroute.exceptions import CapacityError, RoutingBudgetExceeded, RoutingDeadlockError
from qroute.models import (
    CandidateSwap,
    Circuit,
    Gate,
    GateKind,
    MappedCircuit,
    MappedSchedule,
    Mapping,
    QubitLocks,
    ScheduledGate,
)
from qroute.routing.heuristics import (
    best_candidate,
    candidate_swaps,
    is_executable,
    score_candidate,
    swapped_position,
)
from qroute.schemas.schemas import DeadlockPolicy, RouterOptions

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def advance_time(locks: QubitLocks, t: int, progress: bool) -> int:
    """Next event time: the earliest lock release after t.

    Returns t itself when no lock extends past t. With progress that is a re-entry after
    zero-duration launches; without progress the caller is in a deadlock.
    """
    upcoming = [end for end in locks.t_end if end > t]
    if upcoming:
        return min(upcoming)
    if not progress:
        logger.debug(f"No lock pending and no progress at t={t}")
    return t


def check_capacity(circuit: Circuit, arch: Architecture) -> None:
    if circuit.num_logical > arch.num_qubits:
        logger.error(
            f"'{circuit.name}' needs {circuit.num_logical} qubits but '{arch.name}' has {arch.num_qubits}"
        )
        raise CapacityError(
            f"circuit '{circuit.name}' uses {circuit.num_logical} logical qubits; "
            f"architecture '{arch.name}' offers {arch.num_qubits}"
        )


def check_initial_mapping(circuit: Circuit, arch: Architecture, initial: Mapping) -> None:
    if initial.num_logical != circuit.num_logical or initial.num_physical != arch.num_qubits:
        raise ValueError(
            f"initial mapping covers {initial.num_logical} logical / {initial.num_physical} physical qubits; "
            f"expected {circuit.num_logical} / {arch.num_qubits}"
        )


class CometRouter:
    """One routing run. Not reusable: create a new instance per circuit."""

    def __init__(self, circuit: Circuit, arch: Architecture, initial: Mapping, options: Optional[RouterOptions] = None):
        check_capacity(circuit, arch)
        check_initial_mapping(circuit, arch, initial)
        self.circuit = circuit
        self.arch = arch
        self.options = options or RouterOptions()
        self.initial = initial.copy()
        self.mapping = initial.copy()
        self.locks = QubitLocks(arch.num_qubits)
        self.frontier = CommutationFrontier(build_dag(circuit))
        self.emitted: List[Gate] = []
        self.scheduled: List[ScheduledGate] = []
        self.budget = self.options.iteration_budget or max(10 * len(circuit) * arch.num_qubits, 1)
        self.stats: Dict[str, int] = {
            "iterations": 0,
            "launched": 0,
            "swaps": 0,
            "forced_swaps": 0,
            "committed_swaps": 0,
            "candidate_evaluations": 0,
        }
        self._forced_since_launch = 0
        self._committed_target: Optional[int] = None

    def _emit(self, gate: Gate, physical: Sequence[int], t: int, **changes) -> None:
        routed = gate.relabel(physical, gate_id=len(self.emitted), **changes)
        tau = self.arch.durations.of(routed.kind)
        for p in physical:
            self.locks.lock(p, t + tau)
        self.emitted.append(routed)
        self.scheduled.append(ScheduledGate(routed, t, tau))

    def _launch(self, cf: Sequence[Gate], t: int) -> int:
        launched = 0
        for gate in cf:
            if not is_executable(gate, self.locks, self.mapping, self.arch, t):
                continue
            physical = [self.mapping.physical(q) for q in gate.qubits]
            self._emit(gate, physical, t, source_id=gate.id)
            self.frontier.mark_done(gate.id)
            launched += 1
        self.stats["launched"] += launched
        return launched

    def _apply_swap(self, edge: Edge, t: int) -> None:
        swap = Gate(0, GateKind.SWAP, edge, inserted=True)
        self._emit(swap, edge, t)
        self.mapping.swap_physical(*edge)
        self.stats["swaps"] += 1

    def _score(self, candidates: Sequence[Edge], cf_two: Sequence[Gate], pending: Sequence[Gate]) -> List[CandidateSwap]:
        self.stats["candidate_evaluations"] += len(candidates)
        return [
            score_candidate(edge, cf_two, pending, self.mapping, self.arch, self.options.use_fine)
            for edge in candidates
        ]

    def select_swaps(self, cf_two: Sequence[Gate], pending: Sequence[Gate], t: int, forced: bool = False) -> int:
        """Apply positive-priority swaps until none remain; a forced call applies exactly the best one."""
        candidates = candidate_swaps(pending, self.locks, self.mapping, self.arch, t)
        applied = 0
        while candidates:
            best = best_candidate(self._score(candidates, cf_two, pending))
            if best.h_basic <= 0 and not forced:
                break
            logger.debug(
                f"t={t}: swap {best.edge} (h_basic={best.h_basic}, h_fine={best.h_fine}{', forced' if forced else ''})"
            )
            self._apply_swap(best.edge, t)
            applied += 1
            if forced:
                break
            candidates = [e for e in candidates if self.locks.is_free(e[0], t) and self.locks.is_free(e[1], t)]
        return applied

    def _pending_distance(self, gate: Gate) -> int:
        p1, p2 = (self.mapping.physical(q) for q in gate.qubits)
        return self.arch.distances[p1][p2]

    def _committed_swap(self, cf_two: Sequence[Gate], pending: Sequence[Gate], t: int) -> int:
        """One swap that shortens the committed gate, whatever its score."""
        if self._committed_target is None:
            if not pending:
                return 0
            chosen = min(pending, key=lambda g: (self._pending_distance(g), g.id))
            self._committed_target = chosen.id
            logger.debug(f"t={t}: committing to gate {chosen.id} ({chosen.describe()})")
        target = next((g for g in pending if g.id == self._committed_target), None)
        if target is None:
            # Already coupled; it launches once its qubits are free.
            return 0
        before = self._pending_distance(target)
        p1, p2 = (self.mapping.physical(q) for q in target.qubits)
        dist = self.arch.distances
        shortening = [
            edge
            for edge in candidate_swaps([target], self.locks, self.mapping, self.arch, t)
            if dist[swapped_position(p1, edge)][swapped_position(p2, edge)] < before
        ]
        if not shortening:
            return 0
        best = best_candidate(self._score(shortening, cf_two, pending))
        self._apply_swap(best.edge, t)
        self.stats["committed_swaps"] += 1
        return 1

    def _resolve_deadlock(self, cf_two: Sequence[Gate], pending: Sequence[Gate], t: int) -> int:
        if self.options.deadlock is DeadlockPolicy.error:
            logger.error(f"Routing deadlock in '{self.circuit.name}' at t={t}")
            raise RoutingDeadlockError(
                f"deadlock at t={t}: no executable gate and no swap with positive h_basic "
                f"({len(pending)} pending gate(s))"
            )
        if self._forced_since_launch >= self.options.deadlock_patience:
            return self._committed_swap(cf_two, pending, t)
        applied = self.select_swaps(cf_two, pending, t, forced=True)
        self._forced_since_launch += applied
        self.stats["forced_swaps"] += applied
        return applied

    def run(self) -> MappedSchedule:
        t = 0
        while True:
            self.stats["iterations"] += 1
            if self.stats["iterations"] > self.budget:
                logger.error(f"Iteration budget {self.budget} exhausted routing '{self.circuit.name}'")
                raise RoutingBudgetExceeded(
                    f"router exceeded {self.budget} iterations on '{self.circuit.name}' at t={t}"
                )
            cf = self.frontier.frontier()
            if not cf:
                break

            launched = self._launch(cf, t)
            if launched:
                self._forced_since_launch = 0
                self._committed_target = None

            cf_two = [g for g in cf if g.is_two_qubit and not self.frontier.is_done(g.id)]
            pending = [
                g for g in cf_two if not self.arch.is_coupled(*(self.mapping.physical(q) for q in g.qubits))
            ]
            if self._committed_target is not None:
                swaps = self._committed_swap(cf_two, pending, t)
            else:
                swaps = self.select_swaps(cf_two, pending, t)

            if not launched and not swaps and self.locks.all_free(t):
                swaps = self._resolve_deadlock(cf_two, pending, t)

            t = advance_time(self.locks, t, progress=bool(launched or swaps))

        return self._result()

    def _result(self) -> MappedSchedule:
        mapped = MappedCircuit(
            gates=tuple(self.emitted),
            num_physical=self.arch.num_qubits,
            initial_mapping=self.initial,
            final_mapping=self.mapping.copy(),
            cregs=self.circuit.cregs,
            name=self.circuit.name,
        )
        depth = max((sg.end for sg in self.scheduled), default=0)
        logger.info(
            f"Routed '{self.circuit.name}' on '{self.arch.name}': depth {depth}, "
            f"{self.stats['swaps']} swap(s), {self.stats['iterations']} iteration(s)"
        )
        return MappedSchedule(tuple(self.scheduled), mapped, depth, self.stats["swaps"], dict(self.stats))


def route(
    circuit: Circuit, arch: Architecture, initial: Mapping, options: Optional[RouterOptions] = None
) -> MappedSchedule:
    return CometRouter(circuit, arch, initial, options).run()
