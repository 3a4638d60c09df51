from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcpaul import gates
from qcpaul.tensor import approx_equal, dagger, is_unitary

PAULIS = ("X", "Y", "Z")


def test_pauli_squares_and_products():
    x, y, z = (gates.pauli(w) for w in PAULIS)
    for p in (x, y, z):
        assert approx_equal(p @ p, np.eye(2))
    assert approx_equal(x @ y, 1j * z)
    assert approx_equal(x @ y, -(y @ x))


def test_hadamard_power_entries():
    h3 = gates.hadamard(3)
    for x in range(8):
        for y in range(8):
            assert abs(h3[y, x] - (-1) ** bin(x & y).count("1") / np.sqrt(8)) < 1e-15


def test_eigenstates():
    for w in PAULIS:
        for s in (1, -1):
            v = gates.eigenstate(w, s)
            assert approx_equal(gates.pauli(w) @ v, s * v)


def test_lambda_table():
    assert approx_equal(gates.lambda_xz(0, 1), gates.pauli("Z"))
    assert approx_equal(gates.lambda_xz(1, 0), gates.pauli("X"))
    assert approx_equal(gates.lambda_xz(1, 1), -1j * gates.pauli("Y"))
    with pytest.raises(ValueError):
        gates.lambda_xz(2, 0)


def test_rotation_closed_form():
    assert approx_equal(gates.rotation((0, 0, 0.3)), gates.rz(0.3))
    assert approx_equal(gates.rotation((0, 0, 0)), np.eye(2))


def test_bell_and_ghz():
    b = gates.bell_state(0, 0)
    assert approx_equal(b.ravel(), np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert approx_equal(gates.bell_state(1, 1).ravel(), np.array([0, 1, -1, 0]) / np.sqrt(2))
    assert abs(np.linalg.norm(gates.ghz_state()) - 1) < 1e-15


def test_cnot_and_exchanger():
    e = gates.exchanger()
    assert approx_equal(e @ e, np.eye(4))
    assert approx_equal(gates.cnot() @ gates.cnot(), np.eye(4))


def test_diagonalize_degenerate_unitary():
    u = np.exp(0.9j) * np.eye(2)
    d = gates.diagonalize_2x2_unitary(u)
    assert abs(d.delta) < 1e-12
    assert approx_equal(d.reconstruct(), u)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_diagonalize_reconstructs(seed):
    u = gates.random_unitary(np.random.default_rng(seed))
    d = gates.diagonalize_2x2_unitary(u)
    assert is_unitary(d.v)
    assert approx_equal(d.reconstruct(), u, 1e-10)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sqrt_unitary_squares_back(seed):
    u = gates.random_unitary(np.random.default_rng(seed))
    r = gates.sqrt_unitary(u)
    assert is_unitary(r)
    assert approx_equal(r @ r, u, 1e-10)
    assert approx_equal(r @ dagger(r), np.eye(2), 1e-10)
