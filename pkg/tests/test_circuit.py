from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuit_gen import random_circuit
from oracle import oracle_matrix
from qcpaul import gates
from qcpaul.circuit import (Bra, Circuit, CircuitError, Control, Gate, Ket, Projector, adjoint,
                            bra, cnot, compose, conjugate, equivalent, evaluate, gate, ket, mat,
                            max_deviation, proj_z, scalar, transpose)
from qcpaul.tensor import approx_equal


def test_empty_circuit_is_identity():
    r = evaluate(Circuit(("a", "b")))
    assert approx_equal(r.matrix, np.eye(4))
    assert r.in_wires == r.out_wires == ("a", "b")


def test_bell_preparation():
    c = Circuit(("a", "b"), (ket("a"), ket("b"), gate("H", "a"), cnot("a", "b")))
    r = evaluate(c)
    assert r.in_wires == ()
    assert approx_equal(r.matrix.ravel(), np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_bra_ket_amplitude():
    c = Circuit(("a",), (ket("a", 0), gate("H", "a"), bra("a", 1)))
    assert abs(evaluate(c).matrix[0, 0] - 1 / np.sqrt(2)) < 1e-15


def test_controlled_gate_convention():
    # U^π = π⊗U + (1-π)⊗I with controls ordered first
    u = gates.random_unitary(np.random.default_rng(1))
    g = mat(u, "b", ctrl=(Control.nbar("a"),))
    expect = np.kron(np.diag([1, 0]), u) + np.kron(np.diag([0, 1]), np.eye(2))
    assert approx_equal(evaluate(Circuit(("a", "b"), (g,))).matrix, expect)


def test_first_element_acts_first():
    c = Circuit(("a",), (gate("H", "a"), gate("Z", "a")))
    assert approx_equal(evaluate(c).matrix, gates.pauli("Z") @ gates.hadamard())


def test_structural_errors():
    with pytest.raises(CircuitError):
        Circuit(("a",), (gate("X", "b"),))
    with pytest.raises(CircuitError):
        Circuit(("a",), (ket("a"), ket("a")))
    with pytest.raises(CircuitError):
        Circuit(("a",), (gate("X", "a"), ket("a")))
    with pytest.raises(CircuitError):
        Circuit(("a",), (bra("a"), gate("X", "a")))
    with pytest.raises(CircuitError):
        gate("X", "a", ctrl=(Control.n("a"),))
    with pytest.raises(CircuitError):
        Control.proj(("a",), gates.pauli("X"))
    with pytest.raises(CircuitError):
        Projector(("a",), np.eye(2) * 2)
    with pytest.raises(CircuitError):
        gate("FOO", "a")


def test_wire_limit():
    with pytest.raises(ValueError):
        Circuit(tuple(f"w{i}" for i in range(13)))


def test_twelve_wires_evaluate():
    wires = tuple(f"w{i}" for i in range(12))
    c = Circuit(wires, tuple(ket(w) for w in wires) + (gate("H", "w0"), cnot("w0", "w11")))
    v = evaluate(c).matrix.ravel()
    assert abs(v[0] - 1 / np.sqrt(2)) < 1e-15 and abs(v[(1 << 11) | 1] - 1 / np.sqrt(2)) < 1e-15


def test_scalar_and_projector():
    c = Circuit(("a",), (proj_z(1, "a"), scalar(2j)))
    assert approx_equal(evaluate(c).matrix, np.diag([0, 2j]))


def test_compose_checks_legs():
    prep = Circuit(("a",), (ket("a"), gate("H", "a")))
    meas = Circuit(("a",), (bra("a", 0),))
    assert abs(evaluate(compose(prep, meas)).matrix[0, 0] - 1 / np.sqrt(2)) < 1e-15
    with pytest.raises(CircuitError):
        compose(meas, meas)


def test_max_deviation_leg_mismatch_is_inf():
    a = evaluate(Circuit(("a",), (ket("a"),)))
    b = evaluate(Circuit(("a",)))
    assert max_deviation(a, b) == float("inf")


def test_element_equality_and_hash():
    g1 = mat(np.eye(2), "a", ctrl=(Control.n("b"),))
    g2 = mat(np.eye(2), "a", ctrl=(Control.n("b"),))
    assert g1 == g2 and hash(g1) == hash(g2)
    assert isinstance(ket("a"), Ket) and isinstance(bra("a"), Bra) and isinstance(g1, Gate)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adjoint_is_conjugate_transpose(seed):
    c = random_circuit(np.random.default_rng(seed))
    r, a = evaluate(c), evaluate(adjoint(c))
    assert a.in_wires == r.out_wires and a.out_wires == r.in_wires
    assert approx_equal(a.matrix, r.matrix.conj().T, 1e-12)
    assert approx_equal(evaluate(conjugate(c)).matrix, r.matrix.conj(), 1e-12)
    assert approx_equal(evaluate(transpose(c)).matrix, r.matrix.T, 1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_evaluator_matches_oracle(seed):
    c = random_circuit(np.random.default_rng(seed))
    r = evaluate(c)
    m, ins, outs = oracle_matrix(c)
    assert (r.in_wires, r.out_wires) == (ins, outs)
    assert approx_equal(r.matrix, m, 1e-12)


def test_equivalent():
    c1 = Circuit(("a", "b"), (cnot("a", "b"), cnot("a", "b")))
    assert equivalent(c1, Circuit(("a", "b")))
