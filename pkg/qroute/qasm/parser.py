"""OpenQASM 2.0 subset reader.

The grammar only recognises statements; meaning (register lookup, broadcast, arity)
is resolved afterwards by `_CircuitBuilder`, so errors carry the statement position.
"""
import logging
import math
import operator
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pyparsing as pp

from qroute.exceptions import QasmError, QasmSemanticError, QasmSyntaxError, UnsupportedConstructError
from qroute.models import Circuit, Gate, GateKind, MappedCircuit, Mapping, Register

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

# OpenQASM built-ins and the qelib1 names we route.
_GATE_ALIASES = {"CX": GateKind.CX, "U": GateKind.U3}
_GATE_STATEMENT_KINDS = {kind.value: kind for kind in GateKind if kind not in (GateKind.MEASURE, GateKind.BARRIER)}

_BINARY_OPS = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": operator.truediv}


@dataclass(frozen=True)
class _Statement:
    kind: str
    line: int
    col: int
    tokens: Any


def _apply_sign(tokens):
    *signs, value = tokens[0]
    for sign in reversed(signs):
        if sign == "-":
            value = -value
    return value


def _fold_binary(tokens):
    items = tokens[0]
    value = items[0]
    for symbol, operand in zip(items[1::2], items[2::2]):
        value = _BINARY_OPS[symbol](value, operand)
    return value


def _statement(kind: str):
    def action(s, loc, toks):
        return _Statement(kind, pp.lineno(loc, s), pp.col(loc, s), toks)

    return action


def _reject(s, loc, toks):
    raise UnsupportedConstructError(toks[0], pp.lineno(loc, s))


def _build_grammar() -> pp.ParserElement:
    LPAR, RPAR, LBRA, RBRA, SEMI = map(pp.Suppress, "()[];")
    ARROW = pp.Suppress("->")

    ident = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
    number = pp.Regex(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?").set_parse_action(lambda t: float(t[0]))
    pi = pp.CaselessKeyword("pi").set_parse_action(lambda: math.pi)

    expr = pp.infix_notation(
        number | pi,
        [
            (pp.one_of("+ -"), 1, pp.OpAssoc.RIGHT, _apply_sign),
            (pp.one_of("* /"), 2, pp.OpAssoc.LEFT, _fold_binary),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _fold_binary),
        ],
    )

    argument = pp.Group(ident("reg") + pp.Opt(LBRA + integer("index") + RBRA))
    arguments = pp.Group(pp.delimited_list(argument))("args")

    header = pp.Keyword("OPENQASM") + pp.Regex(r"\d+(\.\d+)?")("version") + SEMI
    unsupported = (
        pp.Keyword("gate") | pp.Keyword("opaque") | pp.Keyword("if") | pp.Keyword("reset")
    ).set_parse_action(_reject)
    include = (pp.Keyword("include") + pp.QuotedString('"')("path") + SEMI).set_parse_action(
        _statement("include")
    )
    qreg = (pp.Keyword("qreg") + ident("name") + LBRA + integer("size") + RBRA + SEMI).set_parse_action(
        _statement("qreg")
    )
    creg = (pp.Keyword("creg") + ident("name") + LBRA + integer("size") + RBRA + SEMI).set_parse_action(
        _statement("creg")
    )
    measure = (pp.Keyword("measure") + argument("source") + ARROW + argument("target") + SEMI).set_parse_action(
        _statement("measure")
    )
    barrier = (pp.Keyword("barrier") + arguments + SEMI).set_parse_action(_statement("barrier"))
    params = pp.Group(LPAR + pp.Opt(pp.delimited_list(expr)) + RPAR)("params")
    gate_op = (ident("name") + pp.Opt(params) + arguments + SEMI).set_parse_action(_statement("gate"))

    statement = unsupported | qreg | creg | include | measure | barrier | gate_op
    program = header.set_parse_action(_statement("header")) + pp.ZeroOrMore(statement)
    program.ignore(pp.cpp_style_comment)
    return program


_GRAMMAR = _build_grammar()


class _CircuitBuilder:
    """Turns parsed statements into gates over a flat logical index space."""

    def __init__(self):
        self.qregs: Dict[str, Tuple[int, int]] = {}
        self.cregs: Dict[str, Tuple[int, int]] = {}
        self.qreg_order: List[Register] = []
        self.creg_order: List[Register] = []
        self.num_qubits = 0
        self.num_cbits = 0
        self.gates: List[Gate] = []
        self.lines: List[int] = []

    def feed(self, statement: _Statement) -> None:
        handler = getattr(self, f"_on_{statement.kind}")
        handler(statement)

    def _on_header(self, statement: _Statement) -> None:
        version = statement.tokens["version"]
        if float(version) != 2.0:
            raise UnsupportedConstructError(f"OPENQASM {version}", statement.line)

    def _on_include(self, statement: _Statement) -> None:
        logger.debug(f"Ignoring include '{statement.tokens['path']}' (line {statement.line})")

    def _declare(self, statement: _Statement, table: Dict[str, Tuple[int, int]], order: List[Register], offset: int):
        name, size = statement.tokens["name"], statement.tokens["size"]
        if name in self.qregs or name in self.cregs:
            raise QasmSemanticError(f"register '{name}' declared twice (line {statement.line})")
        if size < 1:
            raise QasmSemanticError(f"register '{name}' must have positive size (line {statement.line})")
        table[name] = (offset, size)
        order.append(Register(name, size))
        return size

    def _on_qreg(self, statement: _Statement) -> None:
        self.num_qubits += self._declare(statement, self.qregs, self.qreg_order, self.num_qubits)

    def _on_creg(self, statement: _Statement) -> None:
        self.num_cbits += self._declare(statement, self.cregs, self.creg_order, self.num_cbits)

    def _resolve(self, arg, table: Dict[str, Tuple[int, int]], what: str, line: int) -> List[int]:
        name = arg["reg"]
        if name not in table:
            raise QasmSemanticError(f"undeclared {what} register '{name}' (line {line})")
        offset, size = table[name]
        index = arg.get("index")
        if index is None:
            return list(range(offset, offset + size))
        if not 0 <= index < size:
            raise QasmSemanticError(f"index {index} out of range for '{name}[{size}]' (line {line})")
        return [offset + index]

    def _broadcast(self, operands: List[List[int]], line: int) -> List[Tuple[int, ...]]:
        widths = {len(qubits) for qubits in operands if len(qubits) > 1}
        if len(widths) > 1:
            raise QasmSemanticError(f"register arguments of different sizes (line {line})")
        width = widths.pop() if widths else 1
        return [tuple(q[i] if len(q) > 1 else q[0] for q in operands) for i in range(width)]

    def _append(self, line: int, kind: GateKind, qubits: Tuple[int, ...], params=(), cbit=None) -> None:
        try:
            gate = Gate(len(self.gates), kind, tuple(qubits), tuple(params), cbit)
        except ValueError as e:
            raise QasmSemanticError(f"{e} (line {line})") from e
        self.gates.append(gate)
        self.lines.append(line)

    def _on_gate(self, statement: _Statement) -> None:
        toks, line = statement.tokens, statement.line
        name = toks["name"]
        kind = _GATE_ALIASES.get(name) or _GATE_STATEMENT_KINDS.get(name)
        if kind is None:
            raise UnsupportedConstructError(f"gate {name}", line)
        params = list(toks["params"]) if "params" in toks else []
        if len(params) != kind.num_params:
            raise QasmSemanticError(
                f"{name} takes {kind.num_params} parameter(s), got {len(params)} (line {line})"
            )
        args = toks["args"]
        if len(args) != kind.num_qubits:
            raise QasmSemanticError(f"{name} takes {kind.num_qubits} qubit(s), got {len(args)} (line {line})")
        operands = [self._resolve(arg, self.qregs, "quantum", line) for arg in args]
        for qubits in self._broadcast(operands, line):
            self._append(line, kind, qubits, params)

    def _on_measure(self, statement: _Statement) -> None:
        toks, line = statement.tokens, statement.line
        qubits = self._resolve(toks["source"], self.qregs, "quantum", line)
        cbits = self._resolve(toks["target"], self.cregs, "classical", line)
        if len(qubits) != len(cbits):
            raise QasmSemanticError(f"measure sizes differ: {len(qubits)} qubits, {len(cbits)} bits (line {line})")
        for qubit, cbit in zip(qubits, cbits):
            self._append(line, GateKind.MEASURE, (qubit,), cbit=cbit)

    def _on_barrier(self, statement: _Statement) -> None:
        qubits: List[int] = []
        for arg in statement.tokens["args"]:
            for q in self._resolve(arg, self.qregs, "quantum", statement.line):
                if q not in qubits:
                    qubits.append(q)
        self._append(statement.line, GateKind.BARRIER, tuple(qubits))


def _run(text: str) -> _CircuitBuilder:
    try:
        statements = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        logger.error(f"OpenQASM syntax error at line {e.lineno}, column {e.col}: {e.msg}")
        raise QasmSyntaxError(f"syntax error at line {e.lineno}, column {e.col}: {e.msg}", e.lineno, e.col) from e
    except ZeroDivisionError as e:
        raise QasmSemanticError("division by zero in angle expression") from e

    builder = _CircuitBuilder()
    for statement in statements:
        builder.feed(statement)
    return builder


def parse(text: str, name: str = "circuit") -> Circuit:
    """Parse OpenQASM 2.0 source into a logical Circuit."""
    builder = _run(text)
    circuit = Circuit(
        gates=tuple(builder.gates),
        num_logical=builder.num_qubits,
        qregs=tuple(builder.qreg_order),
        cregs=tuple(builder.creg_order),
        name=name,
    )
    logger.debug(f"Parsed '{name}': {circuit.num_logical} qubits, {len(circuit)} gates")
    return circuit


def parse_file(path: Union[str, Path]) -> Circuit:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise QasmError(f"cannot read '{path}': {e}") from e
    return parse(text, name=path.stem)


_MAPPING_RE = re.compile(r"^//\s*(initial|final) mapping:(.*)$", re.MULTILINE)
_PAIR_RE = re.compile(r"(\d+)->(\d+)")
_MARKER_RE = re.compile(r"//\s*((?:inserted|decomposed)(?:\s+(?:inserted|decomposed))*)\s*$")


def _header_mapping(text: str, which: str, num_physical: int) -> Optional[Mapping]:
    for match in _MAPPING_RE.finditer(text):
        if match.group(1) != which:
            continue
        pairs = sorted((int(l), int(p)) for l, p in _PAIR_RE.findall(match.group(2)))
        if [l for l, _ in pairs] != list(range(len(pairs))):
            raise QasmSemanticError(f"{which} mapping header must list logical qubits 0..n-1")
        try:
            return Mapping([p for _, p in pairs], num_physical)
        except ValueError as e:
            raise QasmSemanticError(f"invalid {which} mapping header: {e}") from e
    return None


def parse_mapped(text: str, name: str = "circuit") -> MappedCircuit:
    """Read an emitted routed file back, including its mapping header and gate markers."""
    builder = _run(text)
    num_physical = builder.num_qubits
    initial = _header_mapping(text, "initial", num_physical)
    final = _header_mapping(text, "final", num_physical)
    if initial is None or final is None:
        raise QasmSemanticError("routed file lacks the initial/final mapping header")

    source_lines = text.splitlines()
    gates = []
    for gate, line in zip(builder.gates, builder.lines):
        match = _MARKER_RE.search(source_lines[line - 1])
        markers = set(match.group(1).split()) if match else set()
        gates.append(gate.relabel(gate.qubits, inserted="inserted" in markers, decomposed="decomposed" in markers))
    return MappedCircuit(tuple(gates), num_physical, initial, final, tuple(builder.creg_order), name)
