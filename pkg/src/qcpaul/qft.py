"""Quantum Fourier transform circuits in natural labelling.

Wire ``k`` carries the binary digit of weight ``2^k``; circuits declare their
wires as ``("nb-1", ..., "1", "0")`` so the most significant digit comes
first, matching the basis convention of :mod:`qcpaul.tensor`.

``V(a, b) = exp(iπ n(a) n(b) / 2^|a-b|)`` is the controlled phase used only
here.  Both orderings are built with the bit reversal ``R`` applied
chronologically last; since ``H``, ``V`` and ``R`` are all symmetric matrices
the reversed sequence (``R`` first) evaluates to the same transform, and
``reversal_first=True`` builds that variant.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .circuit import Circuit, Control, Gate, gate
from .tensor import ComplexMatrix

MAX_NB = 8


class QftForm(str, Enum):
    ONE_TWO_THREE = "123"
    THREE_TWO_ONE = "321"


def _check_nb(nb: int) -> int:
    if isinstance(nb, bool) or not isinstance(nb, (int, np.integer)) or not 1 <= nb <= MAX_NB:
        raise ValueError(f"nb must be an integer in 1..{MAX_NB}, got {nb!r}")
    return int(nb)


def wires(nb: int) -> tuple[str, ...]:
    return tuple(str(k) for k in range(_check_nb(nb) - 1, -1, -1))


def v_phase(alpha: int, beta: int) -> float:
    if alpha == beta:
        raise ValueError("V needs two distinct wires")
    return math.pi / 2 ** abs(alpha - beta)


def v_gate(alpha: int, beta: int) -> Gate:
    """``V(alpha, beta)`` as ``diag(1, e^{iπ/2^|α-β|})`` on ``beta`` controlled by ``n(alpha)``."""
    phi = v_phase(alpha, beta)
    m = np.diag([1.0, np.exp(1j * phi)])
    return Gate("MAT", (str(beta),), (), m, (Control.n(str(alpha)),))


def bit_reversal_circuit(nb: int, network: str = "minimal") -> Circuit:
    """Exchanger network reversing the significance of the ``nb`` digits.

    ``network="minimal"`` uses the ``floor(nb/2)`` disjoint swaps
    ``E(k, nb-1-k)``.  ``network="all-pairs"`` swaps every pair once
    (``nb(nb-1)/2`` swaps), which also reverses the digits.
    """
    nb = _check_nb(nb)
    if network == "minimal":
        els = [gate("E", str(k), str(nb - 1 - k)) for k in range(nb // 2)]
    elif network == "all-pairs":
        els = [gate("E", str(k), str(m)) for m in range(nb - 1) for k in range(m + 1, nb)]
    else:
        raise ValueError(f"unknown reversal network {network!r}")
    return Circuit(wires(nb), els)


def build_qft(nb: int, form: QftForm | str = QftForm.ONE_TWO_THREE, *,
              reversal: str = "minimal", reversal_first: bool = False) -> Circuit:
    """QFT circuit evaluating to :func:`dft_matrix`.

    1-2-3 form: for ``k = nb-1 .. 0`` the ladder ``V(j, k)`` for
    ``j = nb-1 .. k+1`` followed by ``H(k)``.  3-2-1 form: for
    ``k = nb-1 .. 0``, ``H(k)`` followed by ``V(j, k)`` for ``j = k-1 .. 0``.
    """
    nb = _check_nb(nb)
    form = QftForm(getattr(form, "value", form))
    body: list = []
    for k in range(nb - 1, -1, -1):
        if form is QftForm.ONE_TWO_THREE:
            body += [v_gate(j, k) for j in range(nb - 1, k, -1)]
            body.append(gate("H", str(k)))
        else:
            body.append(gate("H", str(k)))
            body += [v_gate(j, k) for j in range(k - 1, -1, -1)]
    r = list(bit_reversal_circuit(nb, reversal).elements)
    if reversal_first:
        els = r + body[::-1]
    else:
        els = body + r
    return Circuit(wires(nb), els)


def dft_matrix(nb: int) -> ComplexMatrix:
    """``<y|U|x> = exp(2πi x y / N) / sqrt(N)`` with ``N = 2^nb``."""
    n = 1 << _check_nb(nb)
    idx = np.arange(n)
    # reduce x*y mod N before scaling so large products keep full precision
    phase = (np.outer(idx, idx) % n) * (2 * math.pi / n)
    return np.exp(1j * phase) / math.sqrt(n)


def _bits(v, name: str) -> list[int]:
    out = [int(b) for b in v]
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"{name} must contain only bits")
    return out


def qft_matrix_element(x_bits, y_bits) -> complex:
    """``<y|U_FT|x>`` as a product of one local factor per wire.

    Bits are listed most significant first: ``(x_{nb-1}, ..., x_0)``.  The
    factor for wire ``k`` is ``<y_k| H exp(iπ n Σ_{j<k} y_j / 2^{k-j}) |x_{nb-1-k}>``.
    """
    xs, ys = _bits(x_bits, "x_bits"), _bits(y_bits, "y_bits")
    if len(xs) != len(ys):
        raise ValueError(f"bit vectors differ in length: {len(xs)} vs {len(ys)}")
    nb = _check_nb(len(xs))
    x = {k: xs[nb - 1 - k] for k in range(nb)}
    y = {k: ys[nb - 1 - k] for k in range(nb)}
    out = 1.0 + 0j
    for k in range(nb):
        xin = x[nb - 1 - k]
        phase = math.pi * sum(y[j] / 2 ** (k - j) for j in range(k))
        out *= np.exp(1j * phase * xin) * (-1) ** (xin * y[k]) / math.sqrt(2)
    return complex(out)


def gate_counts(c: Circuit) -> dict[str, int]:
    counts = {"H": 0, "V": 0, "E": 0}
    for e in c.elements:
        if isinstance(e, Gate):
            if e.name == "H":
                counts["H"] += 1
            elif e.name == "E":
                counts["E"] += 1
            elif e.name == "MAT" and e.controls:
                counts["V"] += 1
    return counts
