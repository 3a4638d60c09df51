"""Exchanger (swap) identities."""

from __future__ import annotations

from .. import gates
from ..circuit import proj_z
from ..tensor import dagger
from ._kit import circ, cnot, gate, ket, mat, n, nb, scalar
from .registry import bits, choice, identity, unitaries

W2 = ("a", "b")
W3 = ("a", "b", "c")


def _e(x="a", y="b"):
    return gate("E", x, y)


identity(
    "exch.def-involution", "E(a,b)² = 1",
    lhs=lambda p: circ(W2, _e(), _e()),
    rhs=lambda p: circ(W2),
)

identity(
    "exch.symmetric", "E(a,b) = E(b,a)",
    lhs=lambda p: circ(W2, _e("a", "b")),
    rhs=lambda p: circ(W2, _e("b", "a")),
)

identity(
    "exch.basis-action", "E|a,b> = |b,a>",
    bits("x", "y"),
    lhs=lambda p: circ(W2, ket("a", p["x"]), ket("b", p["y"]), _e()),
    rhs=lambda p: circ(W2, ket("a", p["y"]), ket("b", p["x"])),
)

identity(
    "exch.3cnot", "E = CNOT(b→a) CNOT(a→b) CNOT(b→a)",
    lhs=lambda p: circ(W2, _e()),
    rhs=lambda p: circ(W2, cnot("b", "a"), cnot("a", "b"), cnot("b", "a")),
)


def _xnot(c, t, open_=False):
    return gate("X", t, ctrl=(nb(c) if open_ else n(c),))


_FORMS = {
    "dots": lambda: [_xnot("b", "a"), _xnot("a", "b"), _xnot("b", "a")],
    "open-dots": lambda: [_xnot("b", "a", True), _xnot("a", "b", True), _xnot("b", "a", True)],
    "open-dots-flipped": lambda: [_xnot("a", "b", True), _xnot("b", "a", True), _xnot("a", "b", True)],
    "dots-flipped": lambda: [_xnot("a", "b"), _xnot("b", "a"), _xnot("a", "b")],
}

identity(
    "exch.four-forms", "E as three CNOTs with filled or open dots, either wire on top",
    choice("form", tuple(_FORMS)),
    lhs=lambda p: circ(W2, _e()),
    rhs=lambda p: circ(W2, _FORMS[p["form"]]()),
)

identity(
    "exch.uv-invariance", "(U⊗V) E (V†⊗U†) = E for any 2x2 unitaries U, V",
    unitaries("U", "V"),
    lhs=lambda p: circ(W2, mat(dagger(p["V"]), "a"), mat(dagger(p["U"]), "b"), _e(),
                       mat(p["U"], "a"), mat(p["V"], "b")),
    rhs=lambda p: circ(W2, _e()),
)

identity(
    "exch.three-wire", "E(a,c) = E(a,b) E(b,c) E(a,b)",
    lhs=lambda p: circ(W3, _e("a", "c")),
    rhs=lambda p: circ(W3, _e("a", "b"), _e("b", "c"), _e("a", "b")),
)

identity(
    "exch.n-nbar", "E = [n n + n̄ n̄] + σxσx [n n̄ + n̄ n]",
    lhs=lambda p: circ(W2, _e()),
    rhs=lambda p: (
        circ(W2, proj_z(1, "a"), proj_z(1, "b")),
        circ(W2, proj_z(0, "a"), proj_z(0, "b")),
        circ(W2, proj_z(1, "a"), proj_z(0, "b"), gate("X", "a"), gate("X", "b")),
        circ(W2, proj_z(0, "a"), proj_z(1, "b"), gate("X", "a"), gate("X", "b")),
    ),
)


def _heis_rhs(p):
    if p["form"] == "lambda":
        return tuple(
            circ(W2, mat(gates.lambda_xz(x, z), "a"), mat(dagger(gates.lambda_xz(x, z)), "b"),
                 scalar(0.5))
            for x in (0, 1) for z in (0, 1)
        )
    return (circ(W2, scalar(0.5)),) + tuple(
        circ(W2, gate(w, "a"), gate(w, "b"), scalar(0.5)) for w in ("X", "Y", "Z"))


identity(
    "exch.heisenberg", "E = ½ Σ Λ^{xz}(a) Λ^{xz}(b)† = ½(1 + σ⃗(a)·σ⃗(b))",
    choice("form", ("lambda", "pauli")),
    lhs=lambda p: circ(W2, _e()),
    rhs=_heis_rhs,
)
