from __future__ import annotations

import math

import numpy as np
import pytest

from qcpaul.circuit import Circuit, scalar
from qcpaul.identities import (CatalogError, get, instantiate, list_identities, param_points,
                               point_deviation, verify, verify_all)

IDS = [i.id for i in list_identities()]


def test_catalog_size_and_groups():
    assert len(IDS) >= 50
    assert len(set(IDS)) == len(IDS)
    groups = {i.group for i in list_identities()}
    for g in ("pauli", "had", "cnot", "exch", "gen", "bell", "ghz", "meas", "scat", "tele",
              "dense", "qft"):
        assert g in groups


@pytest.mark.parametrize("ident", IDS)
def test_identity_holds(ident):
    r = verify(ident)
    assert r.passed, f"{ident}: max deviation {r.max_deviation:.2e}"
    assert r.points >= 1


def test_boolean_spaces_are_exhaustive():
    assert len(param_points(get("tele.main"))) % 4 == 0
    pts = param_points(get("meas.cnot-to-2meas"))
    assert {(p["j1"], p["j2"], p["k"]) for p in pts} == {
        (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)}
    assert len(param_points(get("bell.marginals"))) == 16


def test_points_are_seeded():
    a = param_points(get("gen.ctrl-u-decomp"), seed=1)
    b = param_points(get("gen.ctrl-u-decomp"), seed=1)
    c = param_points(get("gen.ctrl-u-decomp"), seed=2)
    assert all(np.array_equal(x["U"], y["U"]) for x, y in zip(a, b))
    assert not all(np.array_equal(x["U"], y["U"]) for x, y in zip(a, c))



def test_dropping_a_prefactor_is_detected():
    psi = np.array([[0.6], [0.8j]])
    for ident_id, point in [("tele.main", {"psi": psi, "x": 1, "z": 1}),
                            ("scat.cnot1", {"psi": psi, "z": 1}),
                            ("meas.cnot-to-2meas", {"j1": 1, "j2": 1, "k": 0})]:
        ident = get(ident_id)
        lhs, rhs = instantiate(ident_id, point)
        assert point_deviation(ident, lhs, rhs) < 1e-12
        halved = Circuit(rhs.wires, rhs.elements + (scalar(0.5),))
        assert point_deviation(ident, lhs, halved) > 0.1


def test_wrong_sign_is_detected():
    ident = get("ghz.xyy")
    lhs, rhs = instantiate("ghz.xyy", {"word": "YXY"})
    flipped = Circuit(rhs.wires, rhs.elements + (scalar(-1),))
    assert point_deviation(ident, lhs, flipped) > 1


def test_leg_mismatch_is_infinite():
    ident = get("scat.exchanger")
    lhs, _ = instantiate("scat.exchanger", {"psi": np.array([[1], [0]]), "z": 0})
    assert point_deviation(ident, lhs, Circuit(("a", "b"), ())) == math.inf


def test_unknown_identity_and_bad_point():
    with pytest.raises(CatalogError):
        verify("nope.nothing")
    with pytest.raises(CatalogError):
        instantiate("tele.main", {"x": 3})


def test_verify_all_order_independent_of_workers():
    a = verify_all(workers=1)
    b = verify_all(workers=4)
    assert [r.id for r in a] == [r.id for r in b] == IDS
    assert [r.max_deviation for r in a] == [r.max_deviation for r in b]
