"""CNOT identities: basis action, expansions, wakes, brothers and nearest-neighbor forms."""

from __future__ import annotations

from ._kit import circ, cnot, gate, ket, n, nb, power, scalar
from ..circuit import proj_z
from .registry import bits, choice, identity

W2 = ("a", "b")
W3 = ("a", "b", "c")
W4 = ("a", "b", "c", "d")


def _basis_lhs(p):
    a, b, c = p["a"], p["b"], p["c"]
    op = {
        "cnot": cnot("a", "b"),
        "toffoli": gate("X", "c", ctrl=(n("a"), n("b"))),
        "nbar": gate("X", "b", ctrl=(nb("a"),)),
        "cz": gate("Z", "b", ctrl=(n("a"),)),
    }[p["rel"]]
    return circ(W3, ket("a", a), ket("b", b), ket("c", c), op)


def _basis_rhs(p):
    a, b, c = p["a"], p["b"], p["c"]
    rel = p["rel"]
    if rel == "cz":
        return circ(W3, ket("a", a), ket("b", b), ket("c", c), scalar((-1) ** (a * b)))
    out = {"cnot": (a, b ^ a, c), "toffoli": (a, b, c ^ (a & b)), "nbar": (a, b ^ (1 - a), c)}[rel]
    return circ(W3, [ket(w, v) for w, v in zip(W3, out)])


identity(
    "cnot.basis-action",
    "basis action: CNOT|a,b> = |a,b⊕a>, n²-controlled NOT, open-dot CNOT and (-1)^{n n}",
    (choice("rel", ("cnot", "toffoli", "nbar", "cz")), bits("a", "b", "c")),
    lhs=_basis_lhs,
    rhs=_basis_rhs,
)

identity(
    "cnot.nbar-form", "CNOT(b→a) = σx(a) n(b) + n̄(b)",
    lhs=lambda p: circ(W2, cnot("b", "a")),
    rhs=lambda p: (circ(W2, proj_z(1, "b"), gate("X", "a")), circ(W2, proj_z(0, "b"))),
)

identity(
    "cnot.pauli-sum", "CNOT(b→a) = ½ Σ_{x,z} σx^x(a) σz^z(b) (-1)^{xz}",
    lhs=lambda p: circ(W2, cnot("b", "a")),
    rhs=lambda p: tuple(
        circ(W2, power("X", "a", x), power("Z", "b", z), scalar((-1) ** (x * z) / 2))
        for x in (0, 1) for z in (0, 1)
    ),
)

identity(
    "cnot.wake-chain", "permuting 2 CNOTs in a chain emits the wake CNOT(c→a)",
    lhs=lambda p: circ(W3, cnot("c", "b"), cnot("b", "a")),
    rhs=lambda p: circ(W3, cnot("b", "a"), cnot("c", "b"), cnot("c", "a")),
)

identity(
    "cnot.wake-chain-alt", "permuting 2 CNOTs in a chain, wake emitted on the other side",
    lhs=lambda p: circ(W3, cnot("c", "b"), cnot("b", "a")),
    rhs=lambda p: circ(W3, cnot("c", "a"), cnot("b", "a"), cnot("c", "b")),
)

identity(
    "cnot.wake-loop", "permuting 2 CNOTs whose chain closes on itself",
    lhs=lambda p: circ(W2, cnot("a", "b"), cnot("b", "a")),
    rhs=lambda p: circ(W2, cnot("b", "a"), cnot("a", "b"), cnot("b", "a"), cnot("a", "b")),
)

identity(
    "cnot.wake-sigz", "permuting σz(b) past CNOT(a→b) emits σz(a)",
    lhs=lambda p: circ(W2, gate("Z", "b"), cnot("a", "b")),
    rhs=lambda p: circ(W2, cnot("a", "b"), gate("Z", "b"), gate("Z", "a")),
)

identity(
    "cnot.two-brothers", "CNOT(a→b) conjugating CNOT(b→c) gives two CNOTs into c",
    lhs=lambda p: circ(W3, cnot("a", "b"), cnot("b", "c"), cnot("a", "b")),
    rhs=lambda p: circ(W3, cnot("b", "c"), cnot("a", "c")),
)

identity(
    "cnot.three-brothers", "nested CNOT ladder equals three CNOTs into d",
    lhs=lambda p: circ(W4, cnot("a", "b"), cnot("b", "c"), cnot("c", "d"),
                       cnot("b", "c"), cnot("a", "b")),
    rhs=lambda p: circ(W4, cnot("a", "d"), cnot("b", "d"), cnot("c", "d")),
)

identity(
    "cnot.nn2", "next-nearest-neighbor CNOT(a→c) from 4 nearest-neighbor CNOTs",
    lhs=lambda p: circ(W3, cnot("b", "c"), cnot("a", "b"), cnot("b", "c"), cnot("a", "b")),
    rhs=lambda p: circ(W3, cnot("a", "c")),
)

_NN3_DRAWN = [("a", "b"), ("b", "c"), ("c", "d"), ("b", "c"),
              ("a", "b"), ("b", "c"), ("c", "d"), ("b", "c")]

identity(
    "cnot.nn3", "next-next-nearest-neighbor CNOT(a→d) from 8 nearest-neighbor CNOTs",
    # columns as drawn, read right to left
    lhs=lambda p: circ(W4, [cnot(c, t) for c, t in reversed(_NN3_DRAWN)]),
    rhs=lambda p: circ(W4, cnot("a", "d")),
)
