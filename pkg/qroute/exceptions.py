from typing import Optional


class QrouteError(Exception):
    """Base class for every error raised by the toolkit. `exit_code` is what the CLI returns."""

    exit_code = 5


class QasmError(QrouteError):
    """Invalid or unsupported OpenQASM input."""

    exit_code = 2


class QasmSyntaxError(QasmError):
    """Source text does not match the OpenQASM 2.0 grammar."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.line = line
        self.column = column


class UnsupportedConstructError(QasmError):
    """Construct outside the supported subset (gate bodies, opaque, if, reset, unknown gates)."""

    def __init__(self, construct: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unsupported construct '{construct}'{where}")
        self.construct = construct
        self.line = line


class QasmSemanticError(QasmError):
    """Well-formed statement with a bad meaning: arity, undeclared register, index out of range."""


class ArchitectureError(QrouteError):
    """Problem with an architecture description or lookup."""

    exit_code = 3


class ArchitectureParseError(ArchitectureError):
    """Architecture document could not be read (bad YAML or schema mismatch)."""


class ArchitectureValidationError(ArchitectureError):
    """Architecture violates one of its invariants (the message names it)."""


class UnknownArchitectureError(ArchitectureError):
    """No bundled or parameterized architecture with that name."""


class NoGridError(ArchitectureError):
    """Lattice coordinates requested from an architecture without a grid."""


class UnknownGateKindError(ArchitectureError):
    """Gate kind missing from the duration map and its defaults."""


class CapacityError(QrouteError):
    """More logical qubits than the device offers."""

    exit_code = 4


class RoutingError(QrouteError):
    """Internal routing failure. Reaching one of these is a bug or an explicit policy stop."""

    exit_code = 5


class RoutingDeadlockError(RoutingError):
    """Deadlock reached while the deadlock policy is `error`."""


class RoutingBudgetExceeded(RoutingError):
    """Router exceeded its iteration budget."""


class ComplianceError(RoutingError):
    """A two-qubit gate acts on an uncoupled physical pair."""


class VerificationSizeError(RoutingError):
    """Statevector oracle asked to simulate more qubits than it supports."""


class UsageError(QrouteError):
    """Command-line options that cannot work together."""

    exit_code = 2
