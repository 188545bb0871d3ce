"""Initial placements: identity, seeded random, and reverse-traversal refinement."""
import logging
from typing import List, Optional, Tuple

import numpy as np

from qroute.arch import Architecture
from qroute.exceptions import CapacityError
from qroute.models import Circuit, Mapping
from qroute.routing.router import check_capacity, route
from qroute.schemas.schemas import InitialKind, InitialMappingOptions, RouterOptions, SelectPolicy

logger = logging.getLogger(__name__)


def _check_fits(n_logical: int, n_physical: int) -> None:
    if n_logical > n_physical:
        raise CapacityError(f"{n_logical} logical qubits do not fit on {n_physical} physical qubits")


def identity_mapping(n_logical: int, n_physical: int) -> Mapping:
    _check_fits(n_logical, n_physical)
    return Mapping.identity(n_logical, n_physical)


def random_mapping(n_logical: int, n_physical: int, seed: Optional[int] = None) -> Mapping:
    """Uniform injective placement drawn from a seeded generator."""
    _check_fits(n_logical, n_physical)
    rng = np.random.default_rng(seed)
    return Mapping(rng.permutation(n_physical)[:n_logical].tolist(), n_physical)


def _refine(
    circuit: Circuit,
    reversed_circuit: Circuit,
    arch: Architecture,
    start: Mapping,
    rounds: int,
    select: SelectPolicy,
    options: RouterOptions,
) -> Tuple[int, Mapping]:
    """Alternate forward and reversed routing from `start`; return (score, mapping)."""
    best: Optional[Tuple[int, Mapping]] = None
    mapping = start
    for round_index in range(rounds):
        forward = route(circuit, arch, mapping, options)
        if select is SelectPolicy.best and (best is None or forward.weighted_depth < best[0]):
            best = (forward.weighted_depth, mapping.copy())
        backward = route(reversed_circuit, arch, forward.mapped_circuit.final_mapping, options)
        mapping = backward.mapped_circuit.final_mapping.copy()
        logger.debug(f"Round {round_index}: forward depth {forward.weighted_depth}")
    final_score = route(circuit, arch, mapping, options).weighted_depth
    if best is None or final_score < best[0]:
        best = (final_score, mapping)
    return best


def reverse_traversal(
    circuit: Circuit,
    arch: Architecture,
    rounds: int = 3,
    restarts: int = 12,
    seed: Optional[int] = None,
    select: SelectPolicy = SelectPolicy.best,
    options: Optional[RouterOptions] = None,
) -> Mapping:
    """Refine random placements by routing the circuit forward and then backward.

    The mapping reached after routing the reversed gate list becomes the next starting
    placement. Each restart is scored by the weighted depth of a forward route; the
    lowest score wins, ties going to the earliest restart.
    """
    if rounds < 1:
        raise ValueError("reverse traversal needs rounds >= 1")
    if restarts < 1:
        raise ValueError("reverse traversal needs restarts >= 1")
    check_capacity(circuit, arch)
    options = options or RouterOptions()
    reversed_circuit = circuit.reversed()

    rng = np.random.default_rng(seed)
    restart_seeds = rng.integers(0, 2**32, size=restarts).tolist()

    scores: List[int] = []
    best: Optional[Tuple[int, int, Mapping]] = None
    for index, restart_seed in enumerate(restart_seeds):
        start = random_mapping(circuit.num_logical, arch.num_qubits, restart_seed)
        score, mapping = _refine(circuit, reversed_circuit, arch, start, rounds, select, options)
        scores.append(score)
        if best is None or (score, index) < (best[0], best[1]):
            best = (score, index, mapping)
    assert best is not None and best[0] == min(scores)
    logger.info(
        f"Reverse traversal for '{circuit.name}' on '{arch.name}': best depth {best[0]} "
        f"(restart {best[1]} of {restarts})"
    )
    return best[2]


def make_initial_mapping(
    circuit: Circuit,
    arch: Architecture,
    settings: Optional[InitialMappingOptions] = None,
    router_options: Optional[RouterOptions] = None,
) -> Mapping:
    settings = settings or InitialMappingOptions()
    if settings.kind is InitialKind.identity:
        return identity_mapping(circuit.num_logical, arch.num_qubits)
    if settings.kind is InitialKind.random:
        return random_mapping(circuit.num_logical, arch.num_qubits, settings.seed)
    return reverse_traversal(
        circuit,
        arch,
        rounds=settings.rounds,
        restarts=settings.restarts,
        seed=settings.seed,
        select=settings.select,
        options=router_options,
    )
