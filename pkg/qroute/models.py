"""Domain types shared by the parser, the routers, the scheduler and the verifier.

Logical qubits are the indices a program names; physical qubits are device indices.
`Gate` values are immutable; `Mapping` and `QubitLocks` are the two mutable pieces
of router state.
"""
import enum
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class GateKind(str, enum.Enum):
    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    U1 = "u1"
    U2 = "u2"
    U3 = "u3"
    CX = "cx"
    SWAP = "swap"
    MEASURE = "measure"
    BARRIER = "barrier"

    @property
    def num_params(self) -> int:
        return _PARAM_COUNTS.get(self, 0)

    @property
    def num_qubits(self) -> Optional[int]:
        """Fixed arity, or None for barrier (any positive number of operands)."""
        if self is GateKind.BARRIER:
            return None
        if self in TWO_QUBIT_KINDS:
            return 2
        return 1

    @property
    def is_two_qubit(self) -> bool:
        return self in TWO_QUBIT_KINDS


_PARAM_COUNTS = {
    GateKind.RX: 1,
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.U1: 1,
    GateKind.U2: 2,
    GateKind.U3: 3,
}

TWO_QUBIT_KINDS = frozenset({GateKind.CX, GateKind.SWAP})

SINGLE_QUBIT_KINDS = frozenset(
    kind for kind in GateKind if kind not in TWO_QUBIT_KINDS and kind not in (GateKind.MEASURE, GateKind.BARRIER)
)


@dataclass(frozen=True)
class Register:
    name: str
    size: int


@dataclass(frozen=True)
class Gate:
    """One operation. `qubits` are logical in a Circuit and physical in a MappedCircuit.

    `source_id` links a routed gate back to the original gate it rewrites; it is None for
    swaps the router inserted (`inserted=True`). `decomposed` marks the three CX produced
    from one swap. `cbit` is the flat classical bit a measure writes.
    """

    id: int
    kind: GateKind
    qubits: Tuple[int, ...]
    params: Tuple[float, ...] = ()
    cbit: Optional[int] = None
    source_id: Optional[int] = None
    inserted: bool = False
    decomposed: bool = False

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate {self.kind.value} repeats a qubit: {list(self.qubits)}")
        expected = self.kind.num_qubits
        if expected is None:
            if not self.qubits:
                raise ValueError("barrier needs at least one qubit")
        elif len(self.qubits) != expected:
            raise ValueError(f"gate {self.kind.value} takes {expected} qubit(s), got {len(self.qubits)}")
        if len(self.params) != self.kind.num_params:
            raise ValueError(
                f"gate {self.kind.value} takes {self.kind.num_params} parameter(s), got {len(self.params)}"
            )
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {list(self.qubits)}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.is_two_qubit

    def relabel(self, qubits: Sequence[int], gate_id: Optional[int] = None, **changes) -> "Gate":
        return replace(self, qubits=tuple(qubits), id=self.id if gate_id is None else gate_id, **changes)

    def describe(self) -> str:
        params = f"({','.join(f'{p:.6g}' for p in self.params)})" if self.params else ""
        return f"{self.kind.value}{params} {','.join(str(q) for q in self.qubits)}"


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence over `num_logical` logical qubits."""

    gates: Tuple[Gate, ...]
    num_logical: int
    qregs: Tuple[Register, ...] = ()
    cregs: Tuple[Register, ...] = ()
    name: str = "circuit"

    def __post_init__(self):
        for position, gate in enumerate(self.gates):
            if gate.id != position:
                raise ValueError(f"gate id {gate.id} at position {position}")
            if any(q >= self.num_logical for q in gate.qubits):
                raise ValueError(f"gate {gate.id} uses a qubit outside [0, {self.num_logical})")

    @classmethod
    def from_gates(cls, gates: Iterable[Gate], num_logical: int, **kwargs) -> "Circuit":
        """Build a circuit, renumbering gate ids to their positions."""
        renumbered = tuple(replace(g, id=i) for i, g in enumerate(gates))
        return cls(gates=renumbered, num_logical=num_logical, **kwargs)

    def __len__(self) -> int:
        return len(self.gates)

    def reversed(self) -> "Circuit":
        """Same gates in reverse order. Gates are not inverted."""
        return Circuit.from_gates(
            reversed(self.gates), self.num_logical, qregs=self.qregs, cregs=self.cregs, name=self.name
        )

    @property
    def cx_count(self) -> int:
        return sum(1 for g in self.gates if g.kind is GateKind.CX)

    @property
    def two_qubit_count(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)


class Mapping:
    """Injective logical -> physical assignment with its reverse view."""

    __slots__ = ("_forward", "_reverse")
    __hash__ = None

    def __init__(self, forward: Sequence[int], num_physical: int):
        forward = [int(p) for p in forward]
        if len(forward) > num_physical:
            raise ValueError(f"{len(forward)} logical qubits do not fit on {num_physical} physical qubits")
        reverse: List[Optional[int]] = [None] * num_physical
        for logical, physical in enumerate(forward):
            if not 0 <= physical < num_physical:
                raise ValueError(f"logical {logical} mapped to {physical}, outside [0, {num_physical})")
            if reverse[physical] is not None:
                raise ValueError(f"physical {physical} assigned twice (not injective)")
            reverse[physical] = logical
        self._forward = forward
        self._reverse = reverse

    @classmethod
    def identity(cls, num_logical: int, num_physical: int) -> "Mapping":
        return cls(range(num_logical), num_physical)

    @property
    def num_logical(self) -> int:
        return len(self._forward)

    @property
    def num_physical(self) -> int:
        return len(self._reverse)

    def physical(self, logical: int) -> int:
        return self._forward[logical]

    def logical(self, physical: int) -> Optional[int]:
        return self._reverse[physical]

    def swap_physical(self, p_a: int, p_b: int) -> None:
        """Exchange the occupants of two physical qubits (either may be empty)."""
        l_a, l_b = self._reverse[p_a], self._reverse[p_b]
        self._reverse[p_a], self._reverse[p_b] = l_b, l_a
        if l_a is not None:
            self._forward[l_a] = p_b
        if l_b is not None:
            self._forward[l_b] = p_a

    def copy(self) -> "Mapping":
        clone = Mapping.__new__(Mapping)
        clone._forward = list(self._forward)
        clone._reverse = list(self._reverse)
        return clone

    def as_list(self) -> List[int]:
        return list(self._forward)

    def to_dict(self) -> Dict[int, int]:
        return dict(enumerate(self._forward))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mapping):
            return NotImplemented
        return self._forward == other._forward and len(self._reverse) == len(other._reverse)

    def __repr__(self) -> str:
        return f"Mapping({self._forward}, num_physical={len(self._reverse)})"


class QubitLocks:
    """Per-physical-qubit busy-until times. A qubit is free at t iff t_end <= t."""

    __slots__ = ("t_end",)

    def __init__(self, num_physical: int):
        self.t_end: List[int] = [0] * num_physical

    def is_free(self, physical: int, t: int) -> bool:
        return self.t_end[physical] <= t

    def all_free(self, t: int) -> bool:
        return all(end <= t for end in self.t_end)

    def lock(self, physical: int, until: int) -> None:
        if until > self.t_end[physical]:
            self.t_end[physical] = until


@dataclass(frozen=True)
class ScheduledGate:
    gate: Gate
    start: int
    duration: int

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclass(frozen=True)
class MappedCircuit:
    """Gates over physical qubits, in emission order, with the mapping before and after."""

    gates: Tuple[Gate, ...]
    num_physical: int
    initial_mapping: Mapping
    final_mapping: Mapping
    cregs: Tuple[Register, ...] = ()
    name: str = "circuit"

    @classmethod
    def unrouted(cls, circuit: Circuit) -> "MappedCircuit":
        """Treat a logical circuit as already placed on identically numbered physical qubits."""
        identity = Mapping.identity(circuit.num_logical, circuit.num_logical)
        gates = tuple(replace(g, source_id=g.id) for g in circuit.gates)
        return cls(gates, circuit.num_logical, identity, identity.copy(), circuit.cregs, circuit.name)

    @property
    def swap_count(self) -> int:
        inserted = [g for g in self.gates if g.inserted]
        swaps = sum(1 for g in inserted if g.kind is GateKind.SWAP)
        return swaps + sum(1 for g in inserted if g.decomposed) // 3

    @property
    def cx_count(self) -> int:
        return sum(1 for g in self.gates if g.kind is GateKind.CX)


@dataclass
class MappedSchedule:
    scheduled: Tuple[ScheduledGate, ...]
    mapped_circuit: MappedCircuit
    weighted_depth: int
    swap_count: int
    stats: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class CandidateSwap:
    edge: Tuple[int, int]
    h_basic: int
    h_fine: int = 0

    @property
    def priority(self) -> Tuple[int, int, int, int]:
        """Max-priority key: h_basic, then h_fine, then the smaller (min, max) endpoint pair."""
        return (self.h_basic, self.h_fine, -self.edge[0], -self.edge[1])
