"""Per-cycle scoring for the duration-aware router.

All functions read the current mapping and locks and never mutate them; a candidate
swap is evaluated by relocating only the two exchanged physical positions.
"""
from typing import Iterable, List, Sequence, Tuple

from qroute.arch import Architecture, DistanceMatrix, hd_vd
from qroute.models import CandidateSwap, Gate, Mapping, QubitLocks

Edge = Tuple[int, int]


def swapped_position(p: int, edge: Edge) -> int:
    a, b = edge
    if p == a:
        return b
    if p == b:
        return a
    return p


def _positions(gate: Gate, mapping: Mapping) -> Tuple[int, int]:
    return mapping.physical(gate.qubits[0]), mapping.physical(gate.qubits[1])


def is_executable(gate: Gate, locks: QubitLocks, mapping: Mapping, arch: Architecture, t: int) -> bool:
    physical = [mapping.physical(q) for q in gate.qubits]
    if not all(locks.is_free(p, t) for p in physical):
        return False
    if gate.is_two_qubit:
        return arch.is_coupled(physical[0], physical[1])
    return True


def directly_executable(
    cf: Sequence[Gate], locks: QubitLocks, mapping: Mapping, arch: Architecture, t: int
) -> List[Gate]:
    """CF gates whose mapped operands are free at t and, for two-qubit gates, coupled."""
    return [gate for gate in cf if is_executable(gate, locks, mapping, arch, t)]


def candidate_swaps(
    pending: Iterable[Gate], locks: QubitLocks, mapping: Mapping, arch: Architecture, t: int
) -> List[Edge]:
    """Lock-free coupling edges touching a mapped operand of a pending gate, sorted."""
    candidates = set()
    for gate in pending:
        for q in gate.qubits:
            p = mapping.physical(q)
            if not locks.is_free(p, t):
                continue
            for neighbor in arch.neighbors(p):
                if locks.is_free(neighbor, t):
                    candidates.add((min(p, neighbor), max(p, neighbor)))
    return sorted(candidates)


def h_basic(edge: Edge, cf_two: Iterable[Gate], mapping: Mapping, dist: DistanceMatrix) -> int:
    """Total distance reduction over the CF two-qubit gates if `edge` were swapped."""
    gain = 0
    for gate in cf_two:
        p1, p2 = _positions(gate, mapping)
        gain += dist[p1][p2] - dist[swapped_position(p1, edge)][swapped_position(p2, edge)]
    return gain


def h_fine(edge: Edge, pending: Iterable[Gate], mapping: Mapping, arch: Architecture) -> int:
    """Sum of -|VD - HD| over pending gates after the swap; 0 on devices without a grid."""
    if not arch.has_grid:
        return 0
    total = 0
    for gate in pending:
        p1, p2 = _positions(gate, mapping)
        hd, vd = hd_vd(arch, swapped_position(p1, edge), swapped_position(p2, edge))
        total -= abs(vd - hd)
    return total


def score_candidate(
    edge: Edge,
    cf_two: Sequence[Gate],
    pending: Sequence[Gate],
    mapping: Mapping,
    arch: Architecture,
    use_fine: bool = True,
) -> CandidateSwap:
    fine = h_fine(edge, pending, mapping, arch) if use_fine else 0
    return CandidateSwap(edge, h_basic(edge, cf_two, mapping, arch.distances), fine)


def best_candidate(scored: Iterable[CandidateSwap]) -> CandidateSwap:
    return max(scored, key=lambda candidate: candidate.priority)
