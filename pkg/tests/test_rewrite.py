from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuit_gen import planted_circuit, random_circuit
from qcpaul.circuit import (Circuit, Control, bra, cnot, evaluate, gate, ket, max_deviation, mat,
                            proj_z)
from qcpaul.gates import random_unitary
from qcpaul.rewrite import (MEASUREMENT_RULES, RewriteError, apply, convert_measurement,
                            decompose_controlled_u, find_sites, get_rule, list_rules,
                            lower_n3_cnot, lower_to_cnots, nearest_neighbor_cnots,
                            nearest_neighborize, reduce_control, site_at)

RULES = [r.id for r in list_rules()]
OUTCOMES = {"meas-cnot-to-2meas": ("j1", "j2", "k"), "meas-cnot-to-1meas": ("k",)}

TOFFOLI = np.eye(8, dtype=complex)
TOFFOLI[6:, 6:] = [[0, 1], [1, 0]]


def _sound(c, site, tol=1e-10):
    return max_deviation(evaluate(c), evaluate(apply(c, site))) <= tol


def test_rule_catalog():
    assert len(RULES) == len(set(RULES))
    for base in ("wake-chain", "wake-loop", "wake-sigz", "perm-two-ctrl-u", "wake-times-dot",
                 "wake-chain-gen", "wake-theta"):
        assert base in RULES and base + "-inv" in RULES
    for op in ("decompose-controlled-u", "reduce-control", "nearest-neighbor", "lower-n3-cnot",
               *MEASUREMENT_RULES):
        assert op in RULES
    with pytest.raises(RewriteError):
        get_rule("no-such-rule")


@pytest.mark.parametrize("rule", RULES)
def test_soundness_on_planted_circuits(rule):
    rng = np.random.default_rng(7)
    for seed in range(25):
        c = planted_circuit(rule, seed)
        sites = find_sites(c, rule)
        assert sites, f"{rule}: planted site not found (seed {seed})"
        ref = evaluate(c)
        for s in sites:
            if rule in OUTCOMES:
                s = s.with_params(**{k: int(rng.integers(2)) for k in OUTCOMES[rule]})
            dev = max_deviation(ref, evaluate(apply(c, s)))
            assert dev <= 1e-10, f"{rule} seed {seed} at {s.start}: {dev:.2e}"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_every_found_site_is_sound(seed):
    c = random_circuit(np.random.default_rng(seed), max_wires=4, max_elements=6)
    ref = evaluate(c)
    for rule in RULES:
        for s in find_sites(c, rule):
            assert max_deviation(ref, evaluate(apply(c, s))) <= 1e-10, (rule, s.start)


def test_empty_circuit_has_no_sites():
    c = Circuit(("a", "b", "c"), ())
    assert all(find_sites(c, r) == [] for r in RULES)


def test_wake_chain_single_site_and_output():
    c = Circuit(("a", "b", "c"), (cnot("c", "b"), cnot("b", "a")))
    (s,) = find_sites(c, "wake-chain")
    out = apply(c, s)
    assert [e.wires for e in out.elements] == [("b", "a"), ("c", "b"), ("c", "a")]
    assert _sound(c, s)
    (back,) = find_sites(out, "wake-chain-inv")
    assert apply(out, back) == c


def test_noncommuting_projectors_do_not_match():
    rng = np.random.default_rng(3)
    px = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    pz = np.diag([1.0, 0.0]).astype(complex)
    u1, u2 = random_unitary(rng), random_unitary(rng)
    c = Circuit(("a", "t"), (mat(u2, "t", ctrl=(Control.proj(("a",), pz),)),
                             mat(u1, "t", ctrl=(Control.proj(("a",), px),))))
    assert find_sites(c, "perm-two-ctrl-u") == []


def test_stale_site_is_rejected():
    c = Circuit(("a", "b", "c"), (cnot("c", "b"), cnot("b", "a")))
    (s,) = find_sites(c, "wake-chain")
    changed = c.with_elements(c.elements + (gate("H", "a"),))
    with pytest.raises(RewriteError, match="stale"):
        apply(changed, s)
    with pytest.raises(RewriteError):
        site_at(c, "wake-chain", 1)


def test_applying_changes_the_circuit():
    for rule in RULES:
        c = planted_circuit(rule, 0)
        for s in find_sites(c, rule):
            assert apply(c, s) != c


@pytest.mark.parametrize("d, count", [(2, 4), (3, 8), (4, 18), (5, 38)])
def test_nearest_neighbor_counts(d, count):
    order = tuple("abcdefg"[:d + 1])
    for ctl, tgt in ((order[0], order[-1]), (order[-1], order[0])):
        c = Circuit(order, (cnot(ctl, tgt),))
        out = nearest_neighborize(c)
        assert len(out.elements) == count
        assert all(abs(order.index(e.wires[0]) - order.index(e.wires[1])) == 1 for e in out.elements)
        assert max_deviation(evaluate(c), evaluate(out)) <= 1e-12
    assert len(nearest_neighbor_cnots(order[0], order[-1], order)) == count


def test_adjacent_cnots_are_left_alone():
    c = Circuit(("a", "b", "c"), (cnot("a", "b"), cnot("c", "b"), gate("H", "a")))
    assert nearest_neighborize(c) == c
    assert find_sites(c, "nearest-neighbor") == []


def test_lower_n3_cnot_with_borrowed_wire():
    wires = ("a", "b", "c", "t", "x")
    g = gate("X", "t", ctrl=(Control.n("a"), Control.n("b"), Control.n("c")))
    c = Circuit(wires, (gate("H", "x"), g))
    out = lower_n3_cnot(c, 1)
    assert len(out.elements) == 5
    assert all(len(e.controls) == 2 for e in out.elements[1:])
    assert evaluate(out).matrix.shape == (32, 32)
    assert max_deviation(evaluate(c), evaluate(out)) <= 1e-12
    other = lower_n3_cnot(c, 1, ancilla="x")
    assert max_deviation(evaluate(c), evaluate(other)) <= 1e-12


def test_lower_n3_cnot_without_ancilla():
    g = gate("X", "t", ctrl=(Control.n("a"), Control.n("b"), Control.n("c")))
    with pytest.raises(RewriteError, match="no ancilla"):
        lower_n3_cnot(Circuit(("a", "b", "c", "t"), (g,)), 0)
    closed = Circuit(("a", "b", "c", "t", "x"), (ket("x", 0), bra("x", 0), g))
    with pytest.raises(RewriteError, match="no ancilla"):
        lower_n3_cnot(closed, 2)
    with pytest.raises(RewriteError):
        lower_n3_cnot(Circuit(("a", "b", "c", "t", "x"), (g,)), 0, ancilla="a")


def test_decompose_controlled_identity_and_phase():
    for u in (np.eye(2), np.exp(0.7j) * np.eye(2), np.diag([1, 1j])):
        c = Circuit(("a", "b"), (mat(u, "b", ctrl=(Control.n("a"),)),))
        out = decompose_controlled_u(c, 0)
        assert len(out.elements) == 7
        assert max_deviation(evaluate(c), evaluate(out)) <= 1e-12


def test_toffoli_lowers_to_cnots():
    c = Circuit(("a", "b", "c"), (gate("X", "c", ctrl=(Control.n("a"), Control.n("b"))),))
    out = lower_to_cnots(c)
    for e in out.elements:
        assert not e.controls or (e.name == "X" and len(e.controls) == 1)
    assert np.max(np.abs(evaluate(out).matrix - TOFFOLI)) <= 1e-10


def test_reduce_control_needs_two_controls():
    c = Circuit(("a", "b"), (gate("X", "b", ctrl=(Control.n("a"),)),))
    with pytest.raises(RewriteError):
        reduce_control(c, 0)


def test_measurement_conversion_round_trip():
    c = Circuit(("p", "a", "b"), (ket("p", 0), gate("H", "b"), proj_z(1, "b"), bra("p", 0)))
    final = convert_measurement(c, 2, "meas-internal-to-final")
    assert max_deviation(evaluate(c), evaluate(final)) <= 1e-12
    (back,) = [s for s in find_sites(final, "meas-internal-to-final-inv")]
    restored = apply(final, back)
    assert max_deviation(evaluate(c), evaluate(restored)) <= 1e-12
    with pytest.raises(RewriteError):
        convert_measurement(c, 2, "sideways")


def test_cnot_to_2meas_every_outcome():
    c = Circuit(("p", "a", "b"), (ket("p", 0), cnot("a", "b"), bra("p", 0)))
    ref = evaluate(c)
    for j1 in (0, 1):
        for j2 in (0, 1):
            for k in (0, 1):
                out = convert_measurement(c, 1, "meas-cnot-to-2meas", j1=j1, j2=j2, k=k)
                assert max_deviation(ref, evaluate(out)) <= 1e-12
