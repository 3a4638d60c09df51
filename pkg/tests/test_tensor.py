from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcpaul import gates
from qcpaul.tensor import (DimensionError, apply_local, approx_equal, check_wires, dagger, embed,
                           equal_up_to_phase, is_projector, is_unitary, kron, kron_all,
                           max_abs_diff, num_qubits, permute_wires)

WIRES = ("a", "b", "c", "d")


def test_kron_first_factor_is_most_significant():
    k = kron(gates.ket(1), gates.ket(0))
    assert np.argmax(np.abs(k)) == 2


def test_kron_all_empty_is_scalar_one():
    assert kron_all([]).shape == (1, 1)


def test_num_qubits_rejects_non_powers():
    assert num_qubits(8) == 3
    with pytest.raises(DimensionError):
        num_qubits(6)


def test_check_wires_rejects_duplicates_and_too_many():
    with pytest.raises(ValueError):
        check_wires(("a", "a"))
    with pytest.raises(ValueError):
        check_wires(tuple(str(i) for i in range(13)))


def test_embed_single_wire():
    x = gates.pauli("X")
    assert approx_equal(embed(x, ["b"], ["a", "b"]), np.kron(np.eye(2), x))
    assert approx_equal(embed(x, ["a"], ["a", "b"]), np.kron(x, np.eye(2)))


def test_embed_reversed_targets_of_cnot():
    # control on b, target a
    m = embed(gates.cnot(), ["b", "a"], ["a", "b"])
    expect = np.zeros((4, 4))
    for a in (0, 1):
        for b in (0, 1):
            expect[2 * (a ^ b) + b, 2 * a + b] = 1
    assert approx_equal(m, expect)


def test_embed_shape_error():
    with pytest.raises(DimensionError):
        embed(np.eye(4), ["a"], ["a", "b"])


def test_permute_round_trip():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    p = permute_wires(m, "abc", "cab")
    assert approx_equal(permute_wires(p, "cab", "abc"), m)


def test_phase_and_predicates():
    u = gates.random_unitary(np.random.default_rng(0))
    assert is_unitary(u)
    assert equal_up_to_phase(u, np.exp(0.7j) * u)
    assert not approx_equal(u, np.exp(0.7j) * u)
    assert is_projector(gates.number_op())
    assert not is_projector(gates.pauli("X"))
    assert max_abs_diff(dagger(dagger(u)), u) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 3))
def test_apply_local_matches_embed(seed, n, cols):
    rng = np.random.default_rng(seed)
    wires = WIRES[:n]
    k = int(rng.integers(1, n + 1))
    targets = [wires[int(i)] for i in rng.permutation(n)[:k]]
    op = rng.normal(size=(1 << k, 1 << k)) + 1j * rng.normal(size=(1 << k, 1 << k))
    state = rng.normal(size=(1 << n, cols)) + 0j
    assert max_abs_diff(apply_local(op, targets, wires, state), embed(op, targets, wires) @ state) < 1e-12
