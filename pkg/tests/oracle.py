"""Reference evaluator: pushes each input basis state through the circuit.

States are sparse dicts from wire assignments to amplitudes.  Gate matrices
are rebuilt here from their textbook definitions instead of reusing the
library's, so agreement is evidence about both.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from qcpaul.circuit import Bra, Circuit, ControlKind, Gate, Ket, Projector, Scalar

_S2 = 1 / math.sqrt(2)
_FIXED = {
    "X": [[0, 1], [1, 0]],
    "Y": [[0, -1j], [1j, 0]],
    "Z": [[1, 0], [0, -1]],
    "H": [[_S2, _S2], [_S2, -_S2]],
    "S": [[1, 0], [0, 1j]],
    "E": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
}


def _payload(g: Gate) -> np.ndarray:
    if g.name == "MAT":
        return np.array(g.matrix)
    if g.name in _FIXED:
        return np.array(_FIXED[g.name], dtype=complex)
    if g.name == "RZ":
        t = g.params[0]
        return np.array([[cmath.exp(1j * t), 0], [0, cmath.exp(-1j * t)]])
    tx, ty, tz = g.params
    theta = math.sqrt(tx * tx + ty * ty + tz * tz)
    if theta == 0:
        return np.eye(2, dtype=complex)
    nx, ny, nz = tx / theta, ty / theta, tz / theta
    c, s = math.cos(theta), math.sin(theta)
    # cos θ + i sin θ (n·σ)
    return np.array([[c + 1j * s * nz, 1j * s * (nx - 1j * ny)],
                     [1j * s * (nx + 1j * ny), c - 1j * s * nz]])


def _control_proj(ctl) -> np.ndarray:
    if ctl.kind is ControlKind.N:
        return np.diag([0.0, 1.0]).astype(complex)
    if ctl.kind is ControlKind.NBAR:
        return np.diag([1.0, 0.0]).astype(complex)
    return np.array(ctl.matrix)


def _gate_matrix(g: Gate) -> np.ndarray:
    u = _payload(g)
    if not g.controls:
        return u
    pi = np.array([[1.0 + 0j]])
    for ctl in g.controls:
        pi = np.kron(pi, _control_proj(ctl))
    return np.kron(pi, u) + np.kron(np.eye(pi.shape[0]) - pi, np.eye(u.shape[0]))


def _index(assign: dict, wires) -> int:
    out = 0
    for w in wires:
        out = 2 * out + assign[w]
    return out


def _bits(k: int, n: int) -> list[int]:
    return [(k >> (n - 1 - i)) & 1 for i in range(n)]


def _apply_local(state: dict, wires, m: np.ndarray) -> dict:
    out: dict = {}
    n = len(wires)
    for key, amp in state.items():
        assign = dict(key)
        col = _index(assign, wires)
        for row in range(1 << n):
            z = m[row, col]
            if z == 0:
                continue
            new = dict(assign)
            new.update(zip(wires, _bits(row, n)))
            k = tuple(sorted(new.items()))
            out[k] = out.get(k, 0) + amp * z
    return out


def _step(state: dict, e) -> dict:
    if isinstance(e, Scalar):
        return {k: v * e.value for k, v in state.items()}
    if isinstance(e, Ket):
        vec = np.asarray(e.vector).reshape(-1)
        n = len(e.targets)
        out = {}
        for key, amp in state.items():
            for idx in range(1 << n):
                if vec[idx] != 0:
                    new = dict(key)
                    new.update(zip(e.targets, _bits(idx, n)))
                    out[tuple(sorted(new.items()))] = amp * vec[idx]
        return out
    if isinstance(e, Bra):
        row = np.asarray(e.vector).reshape(-1)
        out = {}
        for key, amp in state.items():
            assign = dict(key)
            z = row[_index(assign, e.targets)]
            for w in e.targets:
                del assign[w]
            k = tuple(sorted(assign.items()))
            out[k] = out.get(k, 0) + amp * z
        return out
    if isinstance(e, Projector):
        return _apply_local(state, e.targets, np.array(e.matrix))
    if isinstance(e, Gate):
        return _apply_local(state, e.wires, _gate_matrix(e))
    raise TypeError(f"unknown element {e!r}")


def oracle_matrix(c: Circuit) -> tuple[np.ndarray, tuple, tuple]:
    """``(matrix, in_wires, out_wires)`` with wires in declaration order."""
    kets = {w for e in c.elements if isinstance(e, Ket) for w in e.targets}
    bras = {w for e in c.elements if isinstance(e, Bra) for w in e.targets}
    ins = tuple(w for w in c.wires if w not in kets)
    outs = tuple(w for w in c.wires if w not in bras)
    m = np.zeros((1 << len(outs), 1 << len(ins)), dtype=complex)
    for col in range(1 << len(ins)):
        state = {tuple(sorted(zip(ins, _bits(col, len(ins))))): 1.0 + 0j}
        for e in c.elements:
            state = _step(state, e)
        for key, amp in state.items():
            m[_index(dict(key), outs), col] += amp
    return m, ins, outs
