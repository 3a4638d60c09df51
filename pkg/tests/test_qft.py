from __future__ import annotations

import math

import numpy as np
import pytest

from qcpaul import qft
from qcpaul.circuit import Circuit, evaluate, ket
from qcpaul.tensor import approx_equal, is_unitary


def test_nb1_is_hadamard():
    c = qft.build_qft(1)
    assert [e.name for e in c.elements] == ["H"]
    assert approx_equal(evaluate(c).matrix, np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def test_dft_entries_and_unitarity():
    assert abs(qft.dft_matrix(2)[3, 3] - 0.5j) < 1e-15
    for nb in range(1, 9):
        assert is_unitary(qft.dft_matrix(nb), 1e-12)


def test_v_gate_phase_and_action():
    g = qft.v_gate(3, 0)
    assert abs(g.matrix[1, 1] - np.exp(1j * math.pi / 8)) < 1e-15
    m = evaluate(Circuit(("1", "0"), (qft.v_gate(1, 0),))).matrix
    assert approx_equal(m, np.diag([1, 1, 1, 1j]))
    with pytest.raises(ValueError):
        qft.v_gate(2, 2)


def test_nb4_gate_sequence_123():
    c = qft.build_qft(4, "123")
    names = [(e.name, e.targets, tuple(ct.wires for ct in e.controls)) for e in c.elements]
    expected = [("H", ("3",), ())]
    expected += [("MAT", ("2",), (("3",),)), ("H", ("2",), ())]
    expected += [("MAT", ("1",), (("3",),)), ("MAT", ("1",), (("2",),)), ("H", ("1",), ())]
    expected += [("MAT", ("0",), (("3",),)), ("MAT", ("0",), (("2",),)), ("MAT", ("0",), (("1",),)),
                 ("H", ("0",), ())]
    expected += [("E", ("0", "3"), ()), ("E", ("1", "2"), ())]
    assert names == expected


@pytest.mark.parametrize("nb", range(1, 9))
def test_gate_counts(nb):
    for form in ("123", "321"):
        counts = qft.gate_counts(qft.build_qft(nb, form))
        assert counts == {"H": nb, "V": nb * (nb - 1) // 2, "E": nb // 2}


def test_both_forms_equal_nb3():
    a = evaluate(qft.build_qft(3, "123")).matrix
    b = evaluate(qft.build_qft(3, "321")).matrix
    assert approx_equal(a, b, 1e-12)


@pytest.mark.parametrize("nb", range(1, 7))
def test_reversal_networks(nb):
    for network in ("minimal", "all-pairs"):
        r = evaluate(qft.bit_reversal_circuit(nb, network)).matrix
        assert approx_equal(r @ r, np.eye(1 << nb))
        for x in range(1 << nb):
            y = int(format(x, f"0{nb}b")[::-1], 2)
            assert r[y, x] == 1


def test_all_pairs_network_has_six_swaps_at_nb4():
    assert len(qft.bit_reversal_circuit(4, "all-pairs").elements) == 6
    assert qft.bit_reversal_circuit(1).elements == ()


def test_reversal_first_variant():
    for form in ("123", "321"):
        c = qft.build_qft(5, form, reversal_first=True)
        assert approx_equal(evaluate(c).matrix, qft.dft_matrix(5), 1e-10)


def test_matrix_element_small_cases():
    assert abs(qft.qft_matrix_element([0] * 4, [0] * 4) - 0.25) < 1e-15
    for x in (0, 1):
        for y in (0, 1):
            assert abs(qft.qft_matrix_element([x], [y]) - (-1) ** (x * y) / math.sqrt(2)) < 1e-15
    with pytest.raises(ValueError):
        qft.qft_matrix_element([0, 1], [0])


def test_matrix_element_via_kets():
    c = qft.build_qft(3)
    state = Circuit(c.wires, tuple(ket(w, b) for w, b in zip(c.wires, (1, 0, 1))) + c.elements)
    col = evaluate(state).matrix.ravel()
    assert approx_equal(col, qft.dft_matrix(3)[:, 5], 1e-12)


@pytest.mark.parametrize("bad", [0, 9, 2.0, True])
def test_nb_range(bad):
    with pytest.raises(ValueError):
        qft.build_qft(bad)
