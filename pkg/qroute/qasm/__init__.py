from qroute.qasm.emitter import decompose_swaps, emit
from qroute.qasm.parser import parse, parse_file, parse_mapped

__all__ = ["parse", "parse_file", "parse_mapped", "emit", "decompose_swaps"]
