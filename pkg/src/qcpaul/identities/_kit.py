"""Small builders shared by the catalog groups."""

from __future__ import annotations

import numpy as np

from .. import gates
from ..circuit import (Bra, Circuit, Control, Gate, Ket, Projector, Scalar, bra, cnot,
                       ctrl_matrix, gate, ket, mat, phase_on, product_control, scalar)

__all__ = [
    "Bra", "Circuit", "Control", "Gate", "Ket", "Projector", "Scalar", "bra", "cnot", "gate",
    "ket", "mat", "scalar", "circ", "padded", "const", "ket_box", "bra_box", "n", "nb",
    "power", "ctrl_matrix", "phase_on", "product_control", "PI_CHOICES", "PI_PAIRS", "SQRT2",
]

SQRT2 = np.sqrt(2.0)


def _flatten(items):
    for it in items:
        if it is None:
            continue
        if isinstance(it, (list, tuple)):
            yield from _flatten(it)
        else:
            yield it


def circ(wires, *elements) -> Circuit:
    """Circuit from possibly nested element lists; ``None`` entries are skipped."""
    return Circuit(tuple(wires), tuple(_flatten(elements)))


def padded(wires, *elements) -> Circuit:
    """Like :func:`circ`, closing every untouched wire with ``|0>`` and ``<0|``."""
    els = list(_flatten(elements))
    used = {w for e in els for w in e.wires}
    idle = [w for w in wires if w not in used]
    return Circuit(tuple(wires), tuple([ket(w) for w in idle] + els + [bra(w) for w in idle]))


def const(wires, value: complex) -> Circuit:
    """A closed circuit evaluating to the 1x1 matrix ``[[value]]``."""
    return padded(wires, scalar(value))


def ket_box(wires, vector) -> Ket:
    return Ket(tuple(wires), np.asarray(vector, dtype=complex).reshape(-1))


def bra_box(wires, vector) -> Bra:
    """``<v|`` for the column ``v``: the row holds the conjugated entries."""
    return Bra(tuple(wires), np.conj(np.asarray(vector, dtype=complex)).reshape(-1))


def n(w: str) -> Control:
    return Control.n(w)


def nb(w: str) -> Control:
    return Control.nbar(w)


def power(name: str, w: str, k: int):
    """``σ_name(w)^k`` for a bit exponent, ``None`` when ``k`` is even."""
    return gate(name, w) if k % 2 else None


# control projectors on wires ("a", "b") used by the general identities
PI_CHOICES = {
    "n": (Control.n("a"),),
    "nbar": (Control.nbar("a"),),
    "n-n": (Control.n("a"), Control.n("b")),
    "nbar-n": (Control.nbar("a"), Control.n("b")),
    "proj": (Control.proj(("a", "b"), gates.pi_pair("X", "Y", 1)),),
}

# commuting pairs (π1, π2)
PI_PAIRS = {
    "n,n": ((Control.n("a"),), (Control.n("b"),)),
    "n,n-same": ((Control.n("a"),), (Control.n("a"),)),
    "n,nbar-same": ((Control.n("a"),), (Control.nbar("a"),)),
    "xx,zz": ((Control.proj(("a", "b"), gates.pi_pair("X", "X", 0)),),
              (Control.proj(("a", "b"), gates.pi_pair("Z", "Z", 0)),)),
    "n,zz": ((Control.n("a"),), (Control.proj(("a", "b"), gates.pi_pair("Z", "Z", 1)),)),
    "nn,n": ((Control.n("a"), Control.n("b")), (Control.n("b"),)),
}
