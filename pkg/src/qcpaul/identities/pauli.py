"""Single-qubit algebra: Pauli products, H, i^n, rotations, and n-bit Hadamards."""

from __future__ import annotations

import math

import numpy as np

from .. import gates
from ..circuit import transpose
from ._kit import SQRT2, Projector, bra, circ, const, gate, ket, mat, power, scalar
from .registry import angles, choice, identity, ints

A = ("a",)

# σ_u σ_v = coeff * σ_w  (w None means the identity)
_PRODUCTS = {
    "XX": (1, None), "YY": (1, None), "ZZ": (1, None),
    "XY": (1j, "Z"), "YZ": (1j, "X"), "ZX": (1j, "Y"),
    "YX": (-1j, "Z"), "ZY": (-1j, "X"), "XZ": (-1j, "Y"),
}


def _product_rhs(p):
    coeff, w = _PRODUCTS[p["uv"]]
    return circ(A, gate(w, "a") if w else None, scalar(coeff) if coeff != 1 else None)


identity(
    "pauli.mult-table", "Pauli multiplication table: σ_w² = 1 and σ_Xσ_Y = iσ_Z cyclically",
    choice("uv", tuple(_PRODUCTS)),
    # σ_u σ_v acts with σ_v first
    lhs=lambda p: circ(A, gate(p["uv"][1], "a"), gate(p["uv"][0], "a")),
    rhs=_product_rhs,
)

identity(
    "pauli.anticommute", "distinct Pauli matrices anticommute: σ_uσ_v = -σ_vσ_u",
    choice("uv", ("XY", "YZ", "ZX", "YX", "ZY", "XZ")),
    lhs=lambda p: circ(A, gate(p["uv"][1], "a"), gate(p["uv"][0], "a")),
    rhs=lambda p: circ(A, gate(p["uv"][0], "a"), gate(p["uv"][1], "a"), scalar(-1)),
)

_HAD = {
    "HH": (lambda: [gate("H", "a"), gate("H", "a")], lambda: []),
    "HXH": (lambda: [gate("H", "a"), gate("X", "a"), gate("H", "a")], lambda: [gate("Z", "a")]),
    "HZH": (lambda: [gate("H", "a"), gate("Z", "a"), gate("H", "a")], lambda: [gate("X", "a")]),
    "H|0>": (lambda: [ket("a", 0), gate("H", "a")], lambda: [ket("a", "+X")]),
    "H|1>": (lambda: [ket("a", 1), gate("H", "a")], lambda: [ket("a", "-X")]),
}


def _had_rhs(p):
    if p["rel"] == "H=(X+Z)/sqrt2":
        return (circ(A, gate("X", "a"), scalar(1 / SQRT2)), circ(A, gate("Z", "a"), scalar(1 / SQRT2)))
    return circ(A, _HAD[p["rel"]][1]())


identity(
    "pauli.hadamard", "H relations: H² = 1, HσxH = σz, HσzH = σx, H|b> = |b_X>, H = (σx+σz)/√2",
    choice("rel", tuple(_HAD) + ("H=(X+Z)/sqrt2",)),
    lhs=lambda p: circ(A, gate("H", "a")) if p["rel"] == "H=(X+Z)/sqrt2"
    else circ(A, _HAD[p["rel"]][0]()),
    rhs=_had_rhs,
)

_S_DAG = np.diag([1, -1j])

identity(
    "pauli.phase-gate", "i^n = diag(1, i): (i^n)² = σz, i^n σx i^-n = σy, i^-n σx i^n = -σy",
    choice("rel", ("square", "conj", "conj-inverse")),
    lhs=lambda p: {
        "square": circ(A, gate("S", "a"), gate("S", "a")),
        "conj": circ(A, mat(_S_DAG, "a"), gate("X", "a"), gate("S", "a")),
        "conj-inverse": circ(A, gate("S", "a"), gate("X", "a"), mat(_S_DAG, "a")),
    }[p["rel"]],
    rhs=lambda p: {
        "square": circ(A, gate("Z", "a")),
        "conj": circ(A, gate("Y", "a")),
        "conj-inverse": circ(A, gate("Y", "a"), scalar(-1)),
    }[p["rel"]],
)

identity(
    "pauli.number-op", "σ_w = 1 - 2 n_w with n_w = (1 - σ_w)/2",
    choice("w", ("X", "Y", "Z")),
    lhs=lambda p: circ(A, gate(p["w"], "a")),
    rhs=lambda p: (circ(A), circ(A, Projector(A, gates.number_op(p["w"])), scalar(-2))),
)

_EIGEN_LABEL = {("X", 1): "+X", ("X", -1): "-X", ("Y", 1): "+Y", ("Y", -1): "-Y",
                ("Z", 1): "0", ("Z", -1): "1"}

identity(
    "pauli.eigenvectors", "σ_w |±_w> = ±|±_w> for the standard eigenvectors",
    (choice("w", ("X", "Y", "Z")), choice("sign", (1, -1))),
    lhs=lambda p: circ(A, ket("a", _EIGEN_LABEL[p["w"], p["sign"]]), gate(p["w"], "a")),
    rhs=lambda p: circ(A, ket("a", _EIGEN_LABEL[p["w"], p["sign"]]), scalar(p["sign"])),
)


def _xz_lhs(p):
    a, b = p["a"], p["b"]
    if p["rel"] == "x":
        return circ(A, ket("a", a), power("X", "a", b))
    if p["rel"] == "z":
        return circ(A, ket("a", a), power("Z", "a", b))
    return circ(A, ket("a", b), gate("H", "a"), bra("a", a))


def _xz_rhs(p):
    a, b = p["a"], p["b"]
    if p["rel"] == "x":
        return circ(A, ket("a", a ^ b))
    if p["rel"] == "z":
        return circ(A, ket("a", a), scalar((-1) ** (a * b)))
    return const(A, (-1) ** (a * b) / SQRT2)


identity(
    "pauli.xz-action", "basis action: σx^b|a> = |a⊕b>, σz^b|a> = (-1)^{ab}|a>, <a|H|b> = (-1)^{ab}/√2",
    (choice("rel", ("x", "z", "h")), ints("a", (0, 1)), ints("b", (0, 1))),
    lhs=_xz_lhs,
    rhs=_xz_rhs,
)

identity(
    "pauli.rotation", "z rotation: exp(iθσz) = cos θ + iσz sin θ",
    angles("theta"),
    lhs=lambda p: circ(A, gate("RZ", "a", params=(p["theta"],))),
    rhs=lambda p: circ(A, mat(math.cos(p["theta"]) * np.eye(2)
                               + 1j * math.sin(p["theta"]) * gates.pauli("Z"), "a")),
)


def _expm_series(m: np.ndarray, terms: int = 60) -> np.ndarray:
    # independent of the closed form used by the ROT gate
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ m / k
        out = out + term
    return out


def _rot_series(p):
    gen = sum(p[t] * gates.pauli(w) for t, w in (("tx", "X"), ("ty", "Y"), ("tz", "Z")))
    return _expm_series(1j * gen)


identity(
    "pauli.rotation-general", "general rotation: exp(iθ⃗·σ⃗) = cos θ + i(θ̂·σ⃗) sin θ",
    angles("tx", "ty", "tz"),
    lhs=lambda p: circ(A, gate("ROT", "a", params=(p["tx"], p["ty"], p["tz"]))),
    rhs=lambda p: circ(A, mat(_rot_series(p), "a")),
)


# n-bit Hadamards --------------------------------------------------------------

HW = ("a", "b", "c", "d")


def _h_layer(nbits: int):
    return [gate("H", w) for w in HW[:nbits]]


identity(
    "had.self-inverse", "H_nb² = 1 for the nb-fold tensor power",
    ints("nb", range(1, 5)),
    lhs=lambda p: circ(HW[:p["nb"]], _h_layer(p["nb"]), _h_layer(p["nb"])),
    rhs=lambda p: circ(HW[:p["nb"]]),
)

identity(
    "had.symmetric", "H_nb^T = H_nb",
    ints("nb", range(1, 5)),
    lhs=lambda p: transpose(circ(HW[:p["nb"]], _h_layer(p["nb"]))),
    rhs=lambda p: circ(HW[:p["nb"]], _h_layer(p["nb"])),
)


def _bits_of(x: int, width: int) -> list[int]:
    return [(x >> (width - 1 - i)) & 1 for i in range(width)]


def _had_entry_lhs(p):
    w = HW[:3]
    xs, ys = _bits_of(p["x"], 3), _bits_of(p["y"], 3)
    return circ(w, [ket(q, b) for q, b in zip(w, xs)], _h_layer(3),
                [bra(q, b) for q, b in zip(w, ys)])


def _had_entry_rhs(p):
    dot = bin(p["x"] & p["y"]).count("1")
    return const(HW[:3], (-1) ** dot / math.sqrt(8))


identity(
    "had.entries", "(H_nb)_{b,b'} = (-1)^{b·b'}/√(2^nb), checked at nb = 3",
    (ints("x", range(8)), ints("y", range(8))),
    lhs=_had_entry_lhs,
    rhs=_had_entry_rhs,
)
