"""Quantum Fourier transform identities."""

from __future__ import annotations

import numpy as np

from .. import qft
from ..circuit import transpose
from ._kit import bra, circ, const, ket, mat
from .registry import choice, identity, ints


def _bits(v: int, nb: int) -> list[int]:
    return [(v >> (nb - 1 - i)) & 1 for i in range(nb)]


identity(
    "qft.123-eq-321", "the 1-2-3 and 3-2-1 orderings give the same transform",
    ints("nb", range(1, 6)),
    lhs=lambda p: qft.build_qft(p["nb"], "123"),
    rhs=lambda p: qft.build_qft(p["nb"], "321"),
)

identity(
    "qft.vs-dft", "the circuit evaluates to <y|U|x> = e^{2πixy/N}/√N",
    (choice("form", ("123", "321")), ints("nb", range(1, 7))),
    lhs=lambda p: qft.build_qft(p["nb"], p["form"]),
    rhs=lambda p: circ(qft.wires(p["nb"]), mat(qft.dft_matrix(p["nb"]), *qft.wires(p["nb"]))),
)

identity(
    "qft.symmetric", "U_FT^T = U_FT",
    (choice("form", ("123", "321")), ints("nb", range(1, 6))),
    lhs=lambda p: transpose(qft.build_qft(p["nb"], p["form"])),
    rhs=lambda p: qft.build_qft(p["nb"], p["form"]),
)

identity(
    "qft.reversal-placement", "the bit reversal may be applied first or last",
    (choice("form", ("123", "321")), ints("nb", range(1, 6))),
    lhs=lambda p: qft.build_qft(p["nb"], p["form"], reversal_first=True),
    rhs=lambda p: qft.build_qft(p["nb"], p["form"]),
)


def _reversal_matrix(nb: int) -> np.ndarray:
    n = 1 << nb
    r = np.zeros((n, n))
    for x in range(n):
        r[int(format(x, f"0{nb}b")[::-1], 2), x] = 1
    return r


identity(
    "qft.reversal", "the exchanger network reverses digit significance",
    (choice("network", ("minimal", "all-pairs")), ints("nb", range(1, 7))),
    lhs=lambda p: qft.bit_reversal_circuit(p["nb"], p["network"]),
    rhs=lambda p: circ(qft.wires(p["nb"]), mat(_reversal_matrix(p["nb"]), *qft.wires(p["nb"]))),
)


def _element_lhs(p):
    w = qft.wires(4)
    xs, ys = _bits(p["x"], 4), _bits(p["y"], 4)
    c = qft.build_qft(4)
    return circ(w, [ket(q, b) for q, b in zip(w, xs)], c.elements,
                [bra(q, b) for q, b in zip(w, ys)])


identity(
    "qft.matrix-element", "<y|U_FT|x> as a product of one H and one phase per wire, at nb = 4",
    (ints("x", range(16)), ints("y", range(16))),
    lhs=_element_lhs,
    rhs=lambda p: const(qft.wires(4), qft.qft_matrix_element(_bits(p["x"], 4), _bits(p["y"], 4))),
)
