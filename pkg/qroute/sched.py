"""ASAP (level-compaction) simulator used to score routed circuits without reordering them."""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from qroute.arch import Architecture, DurationMap
from qroute.commute import gates_commute
from qroute.exceptions import ComplianceError
from qroute.models import Circuit, Gate, GateKind, MappedCircuit, MappedSchedule, ScheduledGate
from qroute.qasm.emitter import decompose_swaps

logger = logging.getLogger(__name__)


def _asap(gates: Iterable[Gate], num_qubits: int, durations: DurationMap) -> List[ScheduledGate]:
    t_end = [0] * num_qubits
    scheduled = []
    for gate in gates:
        tau = durations.of(gate.kind)
        start = max(t_end[q] for q in gate.qubits)
        for q in gate.qubits:
            t_end[q] = start + tau
        scheduled.append(ScheduledGate(gate, start, tau))
    return scheduled


def asap_schedule(mc: MappedCircuit, arch: Architecture, check_coupling: bool = True) -> MappedSchedule:
    """Start every gate, in program order, as soon as all its qubits are free."""
    if check_coupling:
        for gate in mc.gates:
            if gate.is_two_qubit and not arch.is_coupled(*gate.qubits):
                logger.error(f"Gate {gate.id} ({gate.describe()}) acts on an uncoupled pair of '{arch.name}'")
                raise ComplianceError(
                    f"gate {gate.id} ({gate.describe()}) acts on uncoupled physical qubits {gate.qubits}"
                )
    scheduled = _asap(mc.gates, mc.num_physical, arch.durations)
    return MappedSchedule(
        scheduled=tuple(scheduled),
        mapped_circuit=mc,
        weighted_depth=_depth(scheduled),
        swap_count=mc.swap_count,
    )


def _depth(scheduled: Iterable[ScheduledGate]) -> int:
    return max((sg.end for sg in scheduled), default=0)


def weighted_depth(schedule: MappedSchedule) -> int:
    return _depth(schedule.scheduled)


def original_weighted_depth(circuit: Circuit, durations: DurationMap) -> int:
    """T_o: ASAP depth of the circuit on its own logical qubits, coupling ignored."""
    return _depth(_asap(circuit.gates, circuit.num_logical, durations))


@dataclass(frozen=True)
class ScheduleViolation:
    kind: str  # "overlap" or "order"
    qubit: int
    first: int
    second: int
    message: str


def _program_first(first: ScheduledGate, second: ScheduledGate, same_occupant: bool) -> bool:
    """Whether `first` precedes `second` in program order.

    Original gates compare by `source_id` while no inserted gate moved the occupant of the shared
    qubit between them; everything else falls back to emission order.
    """
    a, b = first.gate.source_id, second.gate.source_id
    if not same_occupant or a is None or b is None or a == b:
        return True
    return a < b


def validate_schedule(schedule: MappedSchedule, arch: Optional[Architecture] = None) -> List[ScheduleViolation]:
    """Check per-qubit interval disjointness and order of non-commuting pairs.

    Order is program order (`source_id`) for original gates on the same logical occupant and
    emission order for inserted swaps. Indices in the returned violations refer to positions in
    `schedule.scheduled`, earlier gate first. With `arch`, intervals use its duration map;
    otherwise the durations recorded in the schedule.
    """
    items = schedule.scheduled
    spans: List[Tuple[int, int]] = []
    for sg in items:
        tau = arch.durations.of(sg.gate.kind) if arch is not None else sg.duration
        spans.append((sg.start, sg.start + tau))

    by_qubit: Dict[int, List[int]] = {}
    occupant: Dict[Tuple[int, int], int] = {}
    moves: Dict[int, int] = {}
    for index, sg in enumerate(items):
        for q in sg.gate.qubits:
            by_qubit.setdefault(q, []).append(index)
            occupant[(q, index)] = moves.get(q, 0)
            if sg.gate.inserted:
                moves[q] = moves.get(q, 0) + 1

    violations: List[ScheduleViolation] = []
    seen: Set[Tuple[str, int, int]] = set()
    for qubit in sorted(by_qubit):
        indices = by_qubit[qubit]
        for pos, i in enumerate(indices):
            for j in indices[pos + 1 :]:
                start_i, end_i = spans[i]
                start_j, end_j = spans[j]
                overlap = start_i < end_j and start_j < end_i and end_i > start_i and end_j > start_j
                if overlap:
                    key = ("overlap", i, j)
                    if key not in seen:
                        seen.add(key)
                        violations.append(
                            ScheduleViolation(
                                "overlap",
                                qubit,
                                i,
                                j,
                                f"gates {i} [{start_i},{end_i}) and {j} [{start_j},{end_j}) overlap on qubit {qubit}",
                            )
                        )
                    continue
                if gates_commute(items[i].gate, items[j].gate):
                    continue
                same_occupant = occupant[(qubit, i)] == occupant[(qubit, j)]
                first, second = (i, j) if _program_first(items[i], items[j], same_occupant) else (j, i)
                end_first, start_second = spans[first][1], spans[second][0]
                if end_first > start_second:
                    key = ("order", first, second)
                    if key not in seen:
                        seen.add(key)
                        violations.append(
                            ScheduleViolation(
                                "order",
                                qubit,
                                first,
                                second,
                                f"gate {first} ends at {end_first} after dependent gate {second} "
                                f"starts at {start_second} on qubit {qubit}",
                            )
                        )
    if violations:
        logger.debug(f"Schedule of '{schedule.mapped_circuit.name}' has {len(violations)} violation(s)")
    return violations


def format_schedule(schedule: MappedSchedule) -> str:
    """One line per gate: `t=<start> <gate> <operands>`, by start time then emission order."""
    lines = []
    for sg in sorted(schedule.scheduled, key=lambda sg: sg.start):
        gate = sg.gate
        name = gate.kind.value
        if gate.params:
            name += f"({','.join(f'{p:.12g}' for p in gate.params)})"
        operands = ",".join(f"q[{q}]" for q in gate.qubits)
        lines.append(f"t={sg.start} {name} {operands}")
    return "\n".join(lines) + ("\n" if lines else "")


def decompose_schedule(schedule: MappedSchedule, arch: Architecture) -> MappedSchedule:
    """Replace swaps by CX triples while keeping every other start time.

    Each triple occupies the swap's slot back to back when 3 * tau(cx) == tau(swap); for any
    other duration map the decomposed circuit is re-simulated with `asap_schedule`.
    """
    mc = decompose_swaps(schedule.mapped_circuit)
    tau_cx = arch.durations.of(GateKind.CX)
    if 3 * tau_cx != arch.durations.of(GateKind.SWAP):
        rescheduled = asap_schedule(mc, arch)
        rescheduled.stats.update(schedule.stats)
        return rescheduled
    gates = iter(mc.gates)
    scheduled = []
    for sg in schedule.scheduled:
        if sg.gate.kind is GateKind.SWAP:
            scheduled.extend(ScheduledGate(next(gates), sg.start + k * tau_cx, tau_cx) for k in range(3))
        else:
            scheduled.append(ScheduledGate(next(gates), sg.start, sg.duration))
    return MappedSchedule(tuple(scheduled), mc, _depth(scheduled), schedule.swap_count, dict(schedule.stats))
