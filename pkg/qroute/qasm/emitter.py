import logging
from dataclasses import replace
from typing import List, Tuple

from qroute.models import Gate, GateKind, MappedCircuit, Mapping, Register

logger = logging.getLogger(__name__)

PHYSICAL_REGISTER = "q"


def physical_register_name(cregs: Tuple[Register, ...]) -> str:
    """`q`, or `q1`, `q2`, ... when a classical register already holds the name."""
    taken = {register.name for register in cregs}
    name, suffix = PHYSICAL_REGISTER, 0
    while name in taken:
        suffix += 1
        name = f"{PHYSICAL_REGISTER}{suffix}"
    return name


def _format_param(value: float) -> str:
    return f"{value:.12g}"


def _format_mapping(mapping: Mapping) -> str:
    return " ".join(f"{logical}->{physical}" for logical, physical in enumerate(mapping.as_list()))


def _creg_slot(cregs: Tuple[Register, ...], cbit: int) -> Tuple[str, int]:
    offset = 0
    for register in cregs:
        if cbit < offset + register.size:
            return register.name, cbit - offset
        offset += register.size
    raise ValueError(f"classical bit {cbit} is outside the declared registers")


def _statement(gate: Gate, cregs: Tuple[Register, ...], qreg: str) -> str:
    operands = ",".join(f"{qreg}[{q}]" for q in gate.qubits)
    if gate.kind is GateKind.MEASURE:
        name, index = _creg_slot(cregs, gate.cbit)
        line = f"measure {operands} -> {name}[{index}];"
    elif gate.params:
        line = f"{gate.kind.value}({','.join(_format_param(p) for p in gate.params)}) {operands};"
    else:
        line = f"{gate.kind.value} {operands};"
    markers = [marker for marker, flag in (("inserted", gate.inserted), ("decomposed", gate.decomposed)) if flag]
    if markers:
        line += f" // {' '.join(markers)}"
    return line


def emit(mc: MappedCircuit) -> str:
    """OpenQASM 2.0 text for a routed circuit over a single physical register."""
    qreg = physical_register_name(mc.cregs)
    lines: List[str] = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// initial mapping: {_format_mapping(mc.initial_mapping)}".rstrip(),
        f"// final mapping: {_format_mapping(mc.final_mapping)}".rstrip(),
        f"qreg {qreg}[{mc.num_physical}];",
    ]
    lines.extend(f"creg {register.name}[{register.size}];" for register in mc.cregs)
    lines.extend(_statement(gate, mc.cregs, qreg) for gate in mc.gates)
    return "\n".join(lines) + "\n"


def decompose_swaps(mc: MappedCircuit) -> MappedCircuit:
    """Replace every swap(a, b) with cx(a, b); cx(b, a); cx(a, b)."""
    gates: List[Gate] = []
    replaced = 0
    for gate in mc.gates:
        if gate.kind is not GateKind.SWAP:
            gates.append(replace(gate, id=len(gates)))
            continue
        replaced += 1
        a, b = gate.qubits
        for control, target in ((a, b), (b, a), (a, b)):
            gates.append(replace(gate, id=len(gates), kind=GateKind.CX, qubits=(control, target), decomposed=True))
    logger.debug(f"Decomposed {replaced} swap(s) of '{mc.name}' into CX triples")
    return replace(mc, gates=tuple(gates))
