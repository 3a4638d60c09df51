"""Measurements as projectors, scattering circuits, teleportation and dense coding.

The scattering and teleportation identities carry their normalization
factors, so they double as scalar-fidelity checks.
"""

from __future__ import annotations

from .. import gates
from ..circuit import proj_z, proj_zz
from ._kit import (SQRT2, bra, bra_box, circ, cnot, gate, ket, ket_box, n, padded,
                   power, scalar)
from .registry import bits, identity, states

W2 = ("a", "b")
W3 = ("a", "b", "c")
W4 = ("a", "b", "c", "d")


def _psi(w, p):
    return ket_box((w,), p["psi"])


# measurement conversions --------------------------------------------------------

identity(
    "meas.internal-to-final", "an internal measurement of b as a CNOT into a fresh wire measured at the end",
    bits("j"),
    lhs=lambda p: padded(W2, proj_z(p["j"], "b")),
    rhs=lambda p: circ(W2, ket("a", 0), cnot("b", "a"), bra("a", p["j"])),
)

identity(
    "meas.bibit-to-2cnots", "Π^j_ZZ(a,b) = CNOT(a→b) n_j(b) CNOT(a→b)",
    bits("j"),
    lhs=lambda p: circ(W2, proj_zz(p["j"], "a", "b")),
    rhs=lambda p: circ(W2, cnot("a", "b"), proj_z(p["j"], "b"), cnot("a", "b")),
)

identity(
    "meas.bibit-to-1cnot", "a bi-bit measurement followed by <k|(a) needs one CNOT",
    bits("j", "k"),
    lhs=lambda p: circ(W2, proj_zz(p["j"], "a", "b"), bra("a", p["k"])),
    rhs=lambda p: circ(W2, cnot("a", "b"), proj_z(p["j"], "b"), power("X", "b", p["k"]),
                       bra("a", p["k"])),
)

identity(
    "meas.bibit-alt", "Π^j_ZZ(b,c) by two CNOTs into an ancilla measured in <j|",
    bits("j"),
    lhs=lambda p: padded(W3, proj_zz(p["j"], "b", "c")),
    rhs=lambda p: circ(W3, ket("a", 0), cnot("c", "a"), cnot("b", "a"), bra("a", p["j"])),
)


def _cnot_2meas_rhs(p):
    j1, j2, k = p["j1"], p["j2"], p["k"]
    sign = (-1) ** (((k + j1) % 2) * j2)
    return circ(W3, ket("b", 0), gate("H", "b"), proj_zz(j1, "a", "b"), gate("H", "b"),
                gate("H", "c"), proj_zz(j2, "b", "c"), gate("H", "b"), gate("H", "c"),
                power("Z", "a", j2), power("X", "c", (k + j1) % 2), bra("b", k),
                scalar(sign * 2 * SQRT2))


identity(
    "meas.cnot-to-2meas", "CNOT(a→c) from two bi-bit measurements on an ancilla, times (-1)^{(k+j1)j2} 2√2",
    bits("j1", "j2", "k"),
    lhs=lambda p: padded(W3, cnot("a", "c")),
    rhs=_cnot_2meas_rhs,
)

# The tempting correction σz^j(a) is wrong: on |a=1> that leaves a stray (-1)^{j+k}
# whenever j != k.  σz^k(a) makes the equation hold for all four (j, k).
identity(
    "meas.cnot-to-1meas", "CNOT(a→b) on |j>(b) from one bi-bit measurement, times (-1)^{jk} √2",
    bits("j", "k"),
    lhs=lambda p: circ(W2, ket("b", p["j"]), cnot("a", "b")),
    rhs=lambda p: circ(W2, ket("b", p["k"]), gate("H", "b"), proj_zz(p["j"], "a", "b"),
                       power("Z", "a", p["k"]), scalar((-1) ** (p["j"] * p["k"]) * SQRT2)),
)


# scattering: the state on a reappears on b ----------------------------------------

def _moved(p):
    return padded(W2, _psi("b", p))


identity(
    "scat.exchanger", "√2 <z|(a) H(a) E |ψ,0> = |ψ>(b)",
    (states("psi"), bits("z")),
    lhs=lambda p: circ(W2, _psi("a", p), ket("b", 0), gate("E", "a", "b"), gate("H", "a"),
                       bra("a", p["z"]), scalar(SQRT2)),
    rhs=_moved,
)

identity(
    "scat.cnot1", "√2 <z|(a) σz^z(b) H(a) CNOT(a→b) |ψ,0> = |ψ>(b)",
    (states("psi"), bits("z")),
    lhs=lambda p: circ(W2, _psi("a", p), ket("b", 0), cnot("a", "b"), gate("H", "a"),
                       power("Z", "b", p["z"]), bra("a", p["z"]), scalar(SQRT2)),
    rhs=_moved,
)

identity(
    "scat.cnot2", "√2 <x|(a) σx^x(b) CNOT(b→a) H(b) |ψ,0> = |ψ>(b)",
    (states("psi"), bits("x")),
    lhs=lambda p: circ(W2, _psi("a", p), ket("b", 0), gate("H", "b"), cnot("b", "a"),
                       power("X", "b", p["x"]), bra("a", p["x"]), scalar(SQRT2)),
    rhs=_moved,
)

identity(
    "scat.proj", "2 <j|(a) σz^j(b) σx^k(b) H(a) Π^k_ZZ H(b) |ψ,0> = |ψ>(b)",
    (states("psi"), bits("j", "k")),
    lhs=lambda p: circ(W2, _psi("a", p), ket("b", 0), gate("H", "b"),
                       proj_zz(p["k"], "a", "b"), gate("H", "a"), power("X", "b", p["k"]),
                       power("Z", "b", p["j"]), bra("a", p["j"]), scalar(2)),
    rhs=_moved,
)


# teleportation ---------------------------------------------------------------------

def _bell(x, z, upper=False):
    return gates.bell_state(x, z, upper=upper).reshape(-1)


identity(
    "tele.main", "2 <B_{xz}|(a,b) |ψ>(a) |B^{xz}>(b,c) = |ψ>(c)",
    (states("psi"), bits("x", "z")),
    lhs=lambda p: circ(W3, _psi("a", p), ket_box(("b", "c"), _bell(p["x"], p["z"], True)),
                       bra_box(W2, _bell(p["x"], p["z"])), scalar(2)),
    rhs=lambda p: padded(W3, _psi("c", p)),
)

identity(
    "tele.variant", "2 <B^{xz}|(a,b) σx^x(c) σz^z(c) |ψ>(a) |B00>(b,c) = |ψ>(c)",
    (states("psi"), bits("x", "z")),
    lhs=lambda p: circ(W3, _psi("a", p), ket_box(("b", "c"), _bell(0, 0)),
                       power("Z", "c", p["z"]), power("X", "c", p["x"]),
                       bra_box(W2, _bell(p["x"], p["z"], True)), scalar(2)),
    rhs=lambda p: padded(W3, _psi("c", p)),
)


# dense coding ----------------------------------------------------------------------

identity(
    "dense.coding", "two classical bits x, z sent through one half of |B00>",
    bits("x", "z"),
    lhs=lambda p: circ(W4, ket("a", p["x"]), ket("b", p["z"]), ket("c", 0), ket("d", 0),
                       gate("H", "d"), cnot("d", "c"), gate("Z", "c", ctrl=(n("b"),)),
                       cnot("a", "c"), cnot("d", "c"), gate("H", "d")),
    rhs=lambda p: circ(W4, ket("a", p["x"]), ket("b", p["z"]), ket("c", p["x"]), ket("d", p["z"])),
)

