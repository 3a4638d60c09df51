"""Bell and GHZ states."""

from __future__ import annotations

import numpy as np

from ..circuit import proj_z
from ._kit import (SQRT2, Projector, bra, bra_box, circ, cnot, const, gate, ket, ket_box,
                   power, scalar)
from .registry import bits, choice, identity

W2 = ("a", "b")
W3 = ("a", "b", "c")

B00 = np.array([1, 0, 0, 1]) / SQRT2
GHZ = np.array([1, 0, 0, 0, 0, 0, 0, 1]) / SQRT2

# |B_{xz}> written out in the computational basis
_TABLE = {
    (0, 0): np.array([1, 0, 0, 1]) / SQRT2,
    (1, 0): np.array([0, 1, 1, 0]) / SQRT2,
    (1, 1): np.array([0, 1, -1, 0]) / SQRT2,
    (0, 1): np.array([1, 0, 0, -1]) / SQRT2,
}


def _lam(w, x, z):
    """``σx^x σz^z`` on ``w``: σz acts first."""
    return [power("Z", w, z), power("X", w, x)]


def _sub(x, z):
    """|B_{xz}>: Λ^{xz} on the second wire of |B00>."""
    return [ket_box(W2, B00), _lam("b", x, z)]


def _super(x, z):
    """|B^{xz}>: Λ^{xz} on the first wire of |B00>."""
    return [ket_box(W2, B00), _lam("a", x, z)]


identity(
    "bell.b00-circuit", "|B00> = CNOT(a→b) H(a) |00>",
    lhs=lambda p: circ(W2, ket("a", 0), ket("b", 0), gate("H", "a"), cnot("a", "b")),
    rhs=lambda p: circ(W2, ket_box(W2, B00)),
)

for _name, _g in (("x", "X"), ("z", "Z"), ("h", "H")):
    identity(
        f"bell.move-{_name}", f"{_g} on the second wire of |B00> moves to the first",
        lhs=lambda p, g=_g: circ(W2, ket_box(W2, B00), gate(g, "b")),
        rhs=lambda p, g=_g: circ(W2, ket_box(W2, B00), gate(g, "a")),
    )

identity(
    "bell.xz-table", "|B_{xz}> = (|0x> + (-1)^z |1x̄>)/√2, tabulated",
    bits("x", "z"),
    lhs=lambda p: circ(W2, _sub(p["x"], p["z"])),
    rhs=lambda p: circ(W2, ket_box(W2, _TABLE[p["x"], p["z"]])),
)

identity(
    "bell.y-form", "|B_{11}> = (-i)σy(b)|B00>",
    lhs=lambda p: circ(W2, _sub(1, 1)),
    rhs=lambda p: circ(W2, ket_box(W2, B00), gate("Y", "b"), scalar(-1j)),
)

identity(
    "bell.e-raises", "E|B^{xz}> = |B_{xz}>",
    bits("x", "z"),
    lhs=lambda p: circ(W2, _super(p["x"], p["z"]), gate("E", "a", "b")),
    rhs=lambda p: circ(W2, _sub(p["x"], p["z"])),
)

identity(
    "bell.swap-eigen", "E|B^{xz}> = (-1)^{xz}|B^{xz}> and E|B_{xz}> = (-1)^{xz}|B_{xz}>",
    (choice("state", ("super", "sub")), bits("x", "z")),
    lhs=lambda p: circ(W2, (_super if p["state"] == "super" else _sub)(p["x"], p["z"]),
                       gate("E", "a", "b")),
    rhs=lambda p: circ(W2, (_super if p["state"] == "super" else _sub)(p["x"], p["z"]),
                       scalar((-1) ** (p["x"] * p["z"]))),
)


def _sub_circuit(x, z):
    return [ket("a", z), ket("b", x), gate("H", "a"), cnot("a", "b")]


def _sub_circuit_dagger(x, z):
    return [cnot("a", "b"), gate("H", "a"), bra("a", z), bra("b", x)]


identity(
    "bell.sub-circuit", "|B_{xz}> = CNOT(a→b) H(a) |z, x>",
    bits("x", "z"),
    lhs=lambda p: circ(W2, _sub_circuit(p["x"], p["z"])),
    rhs=lambda p: circ(W2, _sub(p["x"], p["z"])),
)

identity(
    "bell.super-circuit", "|B^{xz}> = CNOT(b→a) H(b) |x, z>",
    bits("x", "z"),
    lhs=lambda p: circ(W2, ket("a", p["x"]), ket("b", p["z"]), gate("H", "b"), cnot("b", "a")),
    rhs=lambda p: circ(W2, _super(p["x"], p["z"])),
)

identity(
    "bell.orthonormal", "<B_{x'z'}|B_{xz}> = δ_{xx'} δ_{zz'}",
    bits("x", "z", "x2", "z2"),
    lhs=lambda p: circ(W2, _sub_circuit(p["x"], p["z"]), _sub_circuit_dagger(p["x2"], p["z2"])),
    rhs=lambda p: const(W2, float(p["x"] == p["x2"] and p["z"] == p["z2"])),
)


def _bell_projector(x, z):
    v = _TABLE[x, z].reshape(-1, 1)
    return Projector(W2, v @ v.conj().T)


identity(
    "bell.completeness", "Σ_{xz} |B_{xz}><B_{xz}| = 1",
    lhs=lambda p: tuple(circ(W2, _bell_projector(x, z)) for x in (0, 1) for z in (0, 1)),
    rhs=lambda p: circ(W2),
)


def _marginal_lhs(p):
    x, z, c = p["x"], p["z"], p["outcome"]
    terms = []
    for other in (0, 1):
        ja, jb = (c, other) if p["wire"] == "a" else (other, c)
        terms.append(circ(W2, _sub_circuit(x, z), proj_z(ja, "a"), proj_z(jb, "b"),
                          _sub_circuit_dagger(x, z)))
    return tuple(terms)


identity(
    "bell.marginals", "P(a|x,z) = P(b|x,z) = ½ for every Bell state, as Σ of |<a,b|B_{xz}>|²",
    (choice("wire", ("a", "b")), bits("x", "z", "outcome")),
    lhs=_marginal_lhs,
    rhs=lambda p: const(W2, 0.5),
)


# GHZ ----------------------------------------------------------------------------

identity(
    "ghz.circuit", "|GHZ> = CNOT(c→a) CNOT(c→b) H(c) |000>",
    lhs=lambda p: circ(W3, ket("a", 0), ket("b", 0), ket("c", 0), gate("H", "c"),
                       cnot("c", "b"), cnot("c", "a")),
    rhs=lambda p: circ(W3, ket_box(W3, GHZ)),
)


def _pauli_layer(word):
    return [gate(w, q) for w, q in zip(word, W3)]


identity(
    "ghz.xyy", "σ_XYY|GHZ> = σ_YXY|GHZ> = σ_YYX|GHZ> = -|GHZ>",
    choice("word", ("XYY", "YXY", "YYX")),
    lhs=lambda p: circ(W3, ket_box(W3, GHZ), _pauli_layer(p["word"])),
    rhs=lambda p: circ(W3, ket_box(W3, GHZ), scalar(-1)),
)

identity(
    "ghz.product", "σ_XYY σ_YXY σ_YYX |GHZ> = -|GHZ>",
    lhs=lambda p: circ(W3, ket_box(W3, GHZ), _pauli_layer("YYX"), _pauli_layer("YXY"),
                       _pauli_layer("XYY")),
    rhs=lambda p: circ(W3, ket_box(W3, GHZ), scalar(-1)),
)

identity(
    "ghz.xxx", "σ_XXX|GHZ> = +|GHZ>",
    lhs=lambda p: circ(W3, ket_box(W3, GHZ), _pauli_layer("XXX")),
    rhs=lambda p: circ(W3, ket_box(W3, GHZ)),
)

identity(
    "ghz.expectations", "<GHZ|σ|GHZ> = -1 for XYY, YXY, YYX and +1 for XXX",
    choice("word", ("XYY", "YXY", "YYX", "XXX")),
    lhs=lambda p: circ(W3, ket_box(W3, GHZ), _pauli_layer(p["word"]), bra_box(W3, GHZ)),
    rhs=lambda p: const(W3, 1.0 if p["word"] == "XXX" else -1.0),
)
