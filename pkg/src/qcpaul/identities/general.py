"""Projector-controlled unitaries: decompositions, permutation wakes, square-root reductions.

Control projectors live on wires ``a`` and ``b``; ``c`` plays the role of the
single dotted wire and ``d`` carries the payload unitary.
"""

from __future__ import annotations

import numpy as np

from .. import gates
from ..tensor import dagger
from ._kit import (PI_CHOICES, PI_PAIRS, circ, ctrl_matrix, gate, mat, n, phase_on,
                   product_control)
from .registry import angles, choice, identity, unitaries

W2 = ("a", "b")
W3 = ("a", "b", "c")
W4 = ("a", "b", "c", "d")
W5 = ("a", "b", "c", "d", "e")


def _rz(theta, w, ctrl=()):
    return gate("RZ", w, params=(theta,), ctrl=ctrl)


def _decomposition(u, target, controls):
    """Seven-box sequence for ``U(target)^π``, chronological order."""
    dz = gates.diagonalize_2x2_unitary(u)
    v, delta, tbar = dz.v, dz.delta, dz.theta_bar
    return [
        mat(dagger(v), target),
        gate("X", target, ctrl=controls),
        _rz(-delta / 2, target),
        gate("X", target, ctrl=controls),
        _rz(delta / 2, target),
        mat(v, target),
        phase_on(tbar, controls),
    ]


identity(
    "gen.ctrl-u-decomp",
    "U^π = e^{iθ̄π} V e^{iΔσz/2} X^π e^{-iΔσz/2} X^π V† from U = V diag(e^{iθ1}, e^{iθ2}) V†",
    (unitaries("U"), choice("pi", tuple(PI_CHOICES))),
    lhs=lambda p: circ(W3, mat(p["U"], "c", ctrl=PI_CHOICES[p["pi"]])),
    rhs=lambda p: circ(W3, _decomposition(p["U"], "c", PI_CHOICES[p["pi"]])),
)


def _n1_rhs(p):
    dz = gates.diagonalize_2x2_unitary(p["U"])
    return circ(W2, mat(dagger(dz.v), "b"), gate("X", "b", ctrl=(n("a"),)),
                _rz(-dz.delta / 2, "b"), gate("X", "b", ctrl=(n("a"),)),
                _rz(dz.delta / 2, "b"), mat(dz.v, "b"),
                mat(gates.phase_gate(dz.theta_bar), "a"))


identity(
    "gen.n1-ctrl-u", "n¹-controlled U through one phase box e^{iθ̄n} and two CNOTs",
    unitaries("U"),
    lhs=lambda p: circ(W2, mat(p["U"], "b", ctrl=(n("a"),))),
    rhs=_n1_rhs,
)


def _n2_rhs(p):
    dz = gates.diagonalize_2x2_unitary(p["U"])
    c2 = (n("a"), n("b"))
    return circ(W3, mat(dagger(dz.v), "c"), gate("X", "c", ctrl=c2),
                _rz(-dz.delta / 2, "c"), gate("X", "c", ctrl=c2),
                _rz(dz.delta / 2, "c"), mat(dz.v, "c"),
                mat(gates.phase_gate(dz.theta_bar), "b", ctrl=(n("a"),)))


identity(
    "gen.n2-ctrl-u", "n²-controlled U with the phase box itself n-controlled",
    unitaries("U"),
    lhs=lambda p: circ(W3, mat(p["U"], "c", ctrl=(n("a"), n("b")))),
    rhs=_n2_rhs,
)


def _perm_lhs(p):
    pi1, pi2 = PI_PAIRS[p["pis"]]
    # U1^{π1} U2^{π2}: U2 acts first
    return circ(W3, mat(p["U2"], "c", ctrl=pi2), mat(p["U1"], "c", ctrl=pi1))


def _perm_rhs(p):
    pi1, pi2 = PI_PAIRS[p["pis"]]
    u1, u2 = p["U1"], p["U2"]
    wake = u1 @ u2 @ dagger(u1) @ dagger(u2)
    return circ(W3, mat(u1, "c", ctrl=pi1), mat(u2, "c", ctrl=pi2),
                mat(wake, "c", ctrl=(product_control(pi1, pi2),)))


identity(
    "gen.perm-two-ctrl-u",
    "U1^{π1} U2^{π2} = (U1 U2 U1† U2†)^{π1π2} U2^{π2} U1^{π1} for commuting π1, π2",
    (unitaries("U1", "U2"), choice("pis", tuple(PI_PAIRS))),
    lhs=_perm_lhs,
    rhs=_perm_rhs,
)


def _times_dot_rhs(p):
    pi1, u = PI_CHOICES[p["pi"]], p["U"]
    u_m2 = np.linalg.matrix_power(dagger(u), 2)
    return circ(W4, gate("X", "c", ctrl=pi1), mat(u, "d", ctrl=(n("c"),)),
                mat(u, "d", ctrl=pi1), mat(u_m2, "d", ctrl=pi1 + (n("c"),)))


identity(
    "gen.wake-times-dot", "moving X(c)^π past U(d)^{n(c)} emits U^π (U^{-2})^{π n(c)}",
    (unitaries("U"), choice("pi", tuple(PI_CHOICES))),
    lhs=lambda p: circ(W4, mat(p["U"], "d", ctrl=(n("c"),)),
                       gate("X", "c", ctrl=PI_CHOICES[p["pi"]])),
    rhs=_times_dot_rhs,
)


def _sqrt_sequence(u, pi1, dot, target):
    half = gates.sqrt_unitary(u)
    return [mat(half, target, ctrl=(n(dot),)), gate("X", dot, ctrl=pi1),
            mat(dagger(half), target, ctrl=(n(dot),)), gate("X", dot, ctrl=pi1),
            mat(half, target, ctrl=pi1)]


identity(
    "gen.sqrt-reduction", "U^{π n(c)} from U^{±1/2} boxes and two X(c)^π",
    (unitaries("U"), choice("pi", tuple(PI_CHOICES))),
    lhs=lambda p: circ(W4, mat(p["U"], "d", ctrl=PI_CHOICES[p["pi"]] + (n("c"),))),
    rhs=lambda p: circ(W4, _sqrt_sequence(p["U"], PI_CHOICES[p["pi"]], "c", "d")),
)

identity(
    "gen.n2-sqrt", "n²-controlled U from n¹-controlled U^{±1/2} and two CNOTs",
    unitaries("U"),
    lhs=lambda p: circ(W3, mat(p["U"], "c", ctrl=(n("a"), n("b")))),
    rhs=lambda p: circ(W3, _sqrt_sequence(p["U"], (n("a"),), "b", "c")),
)

identity(
    "gen.n3-sqrt", "n³-controlled U from n¹-controlled U^{±1/2} and two n²-controlled NOTs",
    unitaries("U"),
    lhs=lambda p: circ(W4, mat(p["U"], "d", ctrl=(n("a"), n("b"), n("c")))),
    rhs=lambda p: circ(W4, _sqrt_sequence(p["U"], (n("a"), n("b")), "c", "d")),
)


def _chain_gen_rhs(p):
    pi1, pi2 = PI_PAIRS[p["pis"]]
    wires = ("a", "b")
    sign = np.eye(4) - 2 * ctrl_matrix(pi1, wires) @ ctrl_matrix(pi2, wires)
    return circ(W3, gate("X", "c", ctrl=pi1), gate("Z", "c", ctrl=pi2), mat(sign, *wires))


identity(
    "gen.wake-chain-gen", "X(c)^{π1} σz(c)^{π2} = (-1)^{π1π2} σz^{π2} X^{π1}",
    choice("pis", tuple(PI_PAIRS)),
    lhs=lambda p: circ(W3, gate("Z", "c", ctrl=PI_PAIRS[p["pis"]][1]),
                       gate("X", "c", ctrl=PI_PAIRS[p["pis"]][0])),
    rhs=_chain_gen_rhs,
)

identity(
    "gen.n3-to-n2", "n³-controlled NOT from four n²-controlled NOTs through a borrowed wire d",
    lhs=lambda p: circ(W5, gate("X", "e", ctrl=(n("a"), n("d"))), gate("X", "d", ctrl=(n("b"), n("c"))),
                       gate("X", "e", ctrl=(n("a"), n("d"))), gate("X", "d", ctrl=(n("b"), n("c")))),
    rhs=lambda p: circ(W5, gate("X", "e", ctrl=(n("a"), n("b"), n("c")))),
)

identity(
    "gen.wake-theta", "moving X(c)^π past e^{iθσz} emits (e^{-2iθσz})^π",
    (angles("theta"), choice("pi", tuple(PI_CHOICES))),
    lhs=lambda p: circ(W3, _rz(p["theta"], "c"), gate("X", "c", ctrl=PI_CHOICES[p["pi"]])),
    rhs=lambda p: circ(W3, gate("X", "c", ctrl=PI_CHOICES[p["pi"]]), _rz(p["theta"], "c"),
                       _rz(-2 * p["theta"], "c", ctrl=PI_CHOICES[p["pi"]])),
)
