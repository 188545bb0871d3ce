"""Static device model: coupling graph, gate durations, lattice coordinates and hop distances."""
import logging
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import yaml
from pydantic import ValidationError

from qroute import config
from qroute.exceptions import (
    ArchitectureError,
    ArchitectureParseError,
    ArchitectureValidationError,
    NoGridError,
    UnknownArchitectureError,
    UnknownGateKindError,
)
from qroute.models import SINGLE_QUBIT_KINDS, GateKind
from qroute.schemas.schemas import ArchitectureDocument

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

DEFAULT_DURATIONS: Dict[GateKind, int] = {
    **{kind: 1 for kind in SINGLE_QUBIT_KINDS},
    GateKind.CX: 2,
    GateKind.SWAP: 6,
    GateKind.MEASURE: 1,
    GateKind.BARRIER: 0,
}


def _preset(single: int, cx: int, swap: int, measure: int = 1) -> Dict[GateKind, int]:
    entries = {kind: single for kind in SINGLE_QUBIT_KINDS}
    entries.update({GateKind.CX: cx, GateKind.SWAP: swap, GateKind.MEASURE: measure, GateKind.BARRIER: 0})
    return entries


# Relative timings per technology, in cycles of the fastest single-qubit gate.
DURATION_PRESETS: Dict[str, Dict[GateKind, int]] = {
    "superconducting": dict(DEFAULT_DURATIONS),
    "ion-trap": _preset(single=1, cx=10, swap=30),
    "neutral-atom": _preset(single=1, cx=1, swap=3),
}

_LINE_RE = re.compile(r"^line-(\d+)$")
_GRID_RE = re.compile(r"^grid-(\d+)x(\d+)$")


def _gate_kind(name: Union[str, GateKind]) -> GateKind:
    if isinstance(name, GateKind):
        return name
    try:
        return GateKind(name.lower())
    except ValueError:
        raise UnknownGateKindError(f"unknown gate kind '{name}'") from None


@dataclass(frozen=True)
class DurationMap:
    """Gate kind -> duration in clock cycles. Every kind is present."""

    entries: Mapping[GateKind, int] = field(default_factory=lambda: MappingProxyType(dict(DEFAULT_DURATIONS)))

    @classmethod
    def from_entries(
        cls, entries: Optional[Mapping[Union[str, GateKind], int]] = None, base: Optional["DurationMap"] = None
    ) -> "DurationMap":
        """Overlay `entries` on `base` (the default map when omitted) and validate."""
        merged = dict(base.entries if base is not None else DEFAULT_DURATIONS)
        for name, cycles in (entries or {}).items():
            kind = _gate_kind(name)
            if not isinstance(cycles, int) or isinstance(cycles, bool):
                raise ArchitectureValidationError(f"duration of {kind.value} must be an integer, got {cycles!r}")
            minimum = 0 if kind is GateKind.BARRIER else 1
            if cycles < minimum:
                raise ArchitectureValidationError(
                    f"duration of {kind.value} must be >= {minimum} cycles, got {cycles}"
                )
            merged[kind] = cycles
        return cls(MappingProxyType(merged))

    @classmethod
    def preset(cls, name: str) -> "DurationMap":
        if name not in DURATION_PRESETS:
            raise ArchitectureError(
                f"unknown duration preset '{name}' (known: {', '.join(sorted(DURATION_PRESETS))})"
            )
        return cls(MappingProxyType(dict(DURATION_PRESETS[name])))

    def of(self, kind: Union[str, GateKind]) -> int:
        kind = _gate_kind(kind)
        try:
            return self.entries[kind]
        except KeyError:
            raise UnknownGateKindError(f"no duration for gate kind '{kind.value}'") from None

    def as_dict(self) -> Dict[str, int]:
        return {kind.value: cycles for kind, cycles in sorted(self.entries.items(), key=lambda kv: kv[0].value)}


class DistanceMatrix:
    """All-pairs hop counts over the coupling graph."""

    def __init__(self, matrix: np.ndarray):
        self.matrix = matrix
        self.matrix.setflags(write=False)
        # Router hot loops index these lists.
        self.rows: List[List[int]] = matrix.tolist()

    def __getitem__(self, p: int) -> List[int]:
        return self.rows[p]

    def __len__(self) -> int:
        return len(self.rows)

    def hops(self, p_a: int, p_b: int) -> int:
        return self.rows[p_a][p_b]

    @property
    def diameter(self) -> int:
        return int(self.matrix.max()) if self.matrix.size else 0

    @property
    def mean_distance(self) -> float:
        n = len(self.rows)
        if n < 2:
            return 0.0
        return float(self.matrix.sum()) / (n * (n - 1))


@dataclass(frozen=True, eq=False)
class Architecture:
    name: str
    num_qubits: int
    edges: FrozenSet[Edge]
    grid: Optional[Mapping[int, Tuple[int, int]]] = None
    durations: DurationMap = field(default_factory=DurationMap)

    def __post_init__(self):
        self._validate()

    @classmethod
    def build(
        cls,
        name: str,
        num_qubits: int,
        edges: Iterable[Sequence[int]],
        grid: Optional[Mapping[int, Tuple[int, int]]] = None,
        durations: Optional[DurationMap] = None,
    ) -> "Architecture":
        """Normalize raw edge pairs and construct a validated architecture."""
        normalized = set()
        for pair in edges:
            if len(pair) != 2:
                raise ArchitectureValidationError(f"edge {list(pair)} must have exactly two endpoints")
            a, b = int(pair[0]), int(pair[1])
            if a == b:
                raise ArchitectureValidationError(f"self-loop on qubit {a}")
            for q in (a, b):
                if not 0 <= q < num_qubits:
                    raise ArchitectureValidationError(
                        f"out-of-range qubit {q} in edge ({a}, {b}); valid range is [0, {num_qubits})"
                    )
            edge = (min(a, b), max(a, b))
            if edge in normalized:
                raise ArchitectureValidationError(f"duplicate edge {edge}")
            normalized.add(edge)
        frozen_grid = MappingProxyType(dict(grid)) if grid is not None else None
        return cls(name, num_qubits, frozenset(normalized), frozen_grid, durations or DurationMap())

    def _validate(self) -> None:
        if self.num_qubits < 1:
            raise ArchitectureValidationError("num_qubits must be at least 1")
        for a, b in self.edges:
            if a == b:
                raise ArchitectureValidationError(f"self-loop on qubit {a}")
            if a > b:
                raise ArchitectureValidationError(f"edge ({a}, {b}) is not normalized")
            if not (0 <= a < self.num_qubits and 0 <= b < self.num_qubits):
                raise ArchitectureValidationError(f"out-of-range qubit in edge ({a}, {b})")
        if self.grid is not None:
            if set(self.grid) != set(range(self.num_qubits)):
                raise ArchitectureValidationError("grid must give coordinates for every qubit exactly once")
            cells = list(self.grid.values())
            if len(set(cells)) != len(cells):
                raise ArchitectureValidationError("duplicate grid coordinate")
            for a, b in sorted(self.edges):
                (ra, ca), (rb, cb) = self.grid[a], self.grid[b]
                if abs(ra - rb) + abs(ca - cb) != 1:
                    raise ArchitectureValidationError(
                        f"non-adjacent grid edge ({a}, {b}): cells ({ra}, {ca}) and ({rb}, {cb})"
                    )
        if not nx.is_connected(self.graph):
            raise ArchitectureValidationError(f"coupling graph of '{self.name}' is disconnected")

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.num_qubits))
        g.add_edges_from(sorted(self.edges))
        return g

    @cached_property
    def distances(self) -> DistanceMatrix:
        return compute_distances(self)

    @cached_property
    def edge_list(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def _adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(sorted(self.graph.neighbors(p))) for p in range(self.num_qubits))

    def neighbors(self, p: int) -> Tuple[int, ...]:
        return self._adjacency[p]

    def is_coupled(self, p_a: int, p_b: int) -> bool:
        return (min(p_a, p_b), max(p_a, p_b)) in self.edges

    @property
    def has_grid(self) -> bool:
        return self.grid is not None

    def with_durations(self, durations: DurationMap) -> "Architecture":
        return replace(self, durations=durations)

    def describe(self) -> str:
        return f"{self.num_qubits} qubits, {len(self.edges)} edges"


def compute_distances(arch: Architecture) -> DistanceMatrix:
    """Unweighted shortest-path hop counts from every qubit (BFS per source)."""
    n = arch.num_qubits
    matrix = np.full((n, n), -1, dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(arch.graph):
        for target, hops in lengths.items():
            matrix[source, target] = hops
    if (matrix < 0).any():
        raise ArchitectureValidationError(f"coupling graph of '{arch.name}' is disconnected")
    return DistanceMatrix(matrix)


def hd_vd(arch: Architecture, p_a: int, p_b: int) -> Tuple[int, int]:
    """Horizontal and vertical lattice separation of two physical qubits."""
    if arch.grid is None:
        raise NoGridError(f"architecture '{arch.name}' has no grid coordinates")
    (ra, ca), (rb, cb) = arch.grid[p_a], arch.grid[p_b]
    return abs(ca - cb), abs(ra - rb)


def duration(arch: Architecture, kind: Union[str, GateKind]) -> int:
    return arch.durations.of(kind)


def load_architecture(document: Union[str, Mapping]) -> Architecture:
    """Build an Architecture from YAML/JSON text or an already-parsed mapping."""
    if isinstance(document, str):
        try:
            document = yaml.safe_load(document)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            logger.error(f"Architecture document is not valid YAML (line {line}): {e}")
            raise ArchitectureParseError(f"invalid architecture document at line {line}: {e}") from e
    if not isinstance(document, Mapping):
        raise ArchitectureParseError("architecture document must be a mapping")

    try:
        parsed = ArchitectureDocument.model_validate(dict(document))
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        logger.error(f"Architecture document failed schema validation at '{where}': {first['msg']}")
        raise ArchitectureParseError(f"invalid architecture field '{where}': {first['msg']}") from e

    grid = None
    if parsed.grid is not None:
        grid = {}
        for qubit, row, col in parsed.grid:
            if qubit in grid:
                raise ArchitectureValidationError(f"grid lists qubit {qubit} twice")
            grid[qubit] = (row, col)
    durations = DurationMap.from_entries(parsed.durations)
    return Architecture.build(parsed.name, parsed.num_qubits, parsed.edges, grid, durations)


def load_architecture_file(path: Union[str, Path]) -> Architecture:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ArchitectureError(f"cannot read architecture file '{path}': {e}") from e
    logger.debug(f"Loading architecture from {path}")
    return load_architecture(text)


def line_architecture(n: int) -> Architecture:
    if n < 1:
        raise ArchitectureValidationError("line architectures need at least one qubit")
    edges = [(i, i + 1) for i in range(n - 1)]
    grid = {i: (0, i) for i in range(n)}
    return Architecture.build(f"line-{n}", n, edges, grid)


def grid_architecture(rows: int, cols: int) -> Architecture:
    if rows < 1 or cols < 1:
        raise ArchitectureValidationError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.append((q, q + 1))
            if r + 1 < rows:
                edges.append((q, q + cols))
    grid = {r * cols + c: (r, c) for r in range(rows) for c in range(cols)}
    return Architecture.build(f"grid-{rows}x{cols}", rows * cols, edges, grid)


def _bundled_files() -> Dict[str, Path]:
    directory = config.architectures_dir()
    if not directory.is_dir():
        raise ArchitectureError(f"architecture data directory not found: {directory}")
    return {path.stem: path for path in sorted(directory.glob("*.yaml"))}


def builtin(name: str) -> Architecture:
    """Bundled device by file name, or a parameterized `line-N` / `grid-RxC` family member."""
    bundled = _bundled_files()
    if name in bundled:
        return load_architecture_file(bundled[name])
    match = _LINE_RE.match(name)
    if match:
        return line_architecture(int(match.group(1)))
    match = _GRID_RE.match(name)
    if match:
        return grid_architecture(int(match.group(1)), int(match.group(2)))
    logger.warning(f"Unknown architecture requested: '{name}'")
    raise UnknownArchitectureError(f"unknown architecture '{name}'")


def list_builtins() -> List[str]:
    return sorted(_bundled_files()) + ["line-N", "grid-RxC"]


def resolve_durations(value: Optional[str]) -> DurationMap:
    """`default`, `preset:<name>`, or a YAML/JSON file mapping gate kind to cycles."""
    if value is None or value == "default":
        return DurationMap()
    if value.startswith("preset:"):
        return DurationMap.preset(value.split(":", 1)[1])
    path = Path(value)
    try:
        entries = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ArchitectureError(f"cannot read duration file '{path}': {e}") from e
    except yaml.YAMLError as e:
        raise ArchitectureParseError(f"invalid duration file '{path}': {e}") from e
    if not isinstance(entries, Mapping):
        raise ArchitectureParseError(f"duration file '{path}' must map gate kinds to cycles")
    return DurationMap.from_entries(entries)
