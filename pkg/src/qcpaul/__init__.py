"""Dense verification and rewriting of small quantum circuits built from
Pauli, Hadamard, CNOT, Exchanger and projector-controlled gates."""

from .circuit import (Bra, Circuit, CircuitError, Control, ControlKind, EvalResult, Gate,
                      Ket, Projector, Scalar, adjoint, compose, conjugate, evaluate,
                      transpose)
from .dsl import ParseError, parse, to_text
from .tensor import DEFAULT_TOL, MAX_WIRES

__version__ = "0.1.0"

__all__ = [
    "Bra", "Circuit", "CircuitError", "Control", "ControlKind", "EvalResult", "Gate",
    "Ket", "Projector", "Scalar", "adjoint", "compose", "conjugate", "evaluate",
    "transpose", "ParseError", "parse", "to_text", "DEFAULT_TOL", "MAX_WIRES",
]
