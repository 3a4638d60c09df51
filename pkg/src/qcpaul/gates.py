"""Named matrices, states and projectors, plus 2x2 unitary helpers.

Sign conventions follow the usual physics ones: ``rotation(v)`` is
``exp(i v·σ)`` (note the plus sign), ``number_op(w)`` projects onto the
``-1`` eigenvector of ``σ_w``, and ``phase_i_n()`` is ``diag(1, i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .tensor import (DEFAULT_TOL, MAX_WIRES, ComplexMatrix, as_matrix, dagger,
                     identity, is_unitary, kron)

SQRT2 = math.sqrt(2.0)


class Axis(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


def _axis(w: Axis | str) -> Axis:
    try:
        return Axis(str(getattr(w, "value", w)).upper())
    except ValueError:
        raise ValueError(f"unknown Pauli axis {w!r}") from None


_PAULI = {
    Axis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Axis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Axis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}

_EIGEN = {
    (Axis.X, 1): np.array([1, 1], dtype=complex) / SQRT2,
    (Axis.X, -1): np.array([1, -1], dtype=complex) / SQRT2,
    (Axis.Y, 1): np.array([1, 1j], dtype=complex) / SQRT2,
    (Axis.Y, -1): np.array([1, -1j], dtype=complex) / SQRT2,
    (Axis.Z, 1): np.array([1, 0], dtype=complex),
    (Axis.Z, -1): np.array([0, 1], dtype=complex),
}


def pauli(w: Axis | str) -> ComplexMatrix:
    return _PAULI[_axis(w)].copy()


def pauli_string(axes: str) -> ComplexMatrix:
    """Tensor product such as ``"XYY"`` -> σ_X ⊗ σ_Y ⊗ σ_Y."""
    out = np.ones((1, 1), dtype=complex)
    for w in axes:
        out = kron(out, pauli(w))
    return out


def hadamard(nb: int = 1) -> ComplexMatrix:
    if not 1 <= nb <= MAX_WIRES:
        raise ValueError(f"nb must be in 1..{MAX_WIRES}, got {nb}")
    h1 = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
    out = h1
    for _ in range(nb - 1):
        out = kron(out, h1)
    return out


def ket(bit: int) -> ComplexMatrix:
    """Computational basis column ``|0>`` or ``|1>``."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    v = np.zeros((2, 1), dtype=complex)
    v[bit, 0] = 1
    return v


def basis_ket(bits) -> ComplexMatrix:
    """``|b1 b2 ... bk>`` with the first bit most significant."""
    out = np.ones((1, 1), dtype=complex)
    for b in bits:
        out = kron(out, ket(int(b)))
    return out


def eigenstate(w: Axis | str, sign: int) -> ComplexMatrix:
    """Column vector ``|±_w>`` with ``σ_w v = sign·v``."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return _EIGEN[(_axis(w), sign)].reshape(2, 1).copy()


def number_op(w: Axis | str = Axis.Z, bar: bool = False) -> ComplexMatrix:
    """``n_w = (1 - σ_w)/2``, or ``n̄_w = (1 + σ_w)/2`` when ``bar``."""
    s = pauli(w)
    return (identity(2) + s) / 2 if bar else (identity(2) - s) / 2


def lambda_xz(x: int, z: int) -> ComplexMatrix:
    """``σ_X^x σ_Z^z``.

    ``Λ^{00} = 1``, ``Λ^{01} = σ_Z``, ``Λ^{10} = σ_X``, ``Λ^{11} = σ_X σ_Z``.
    """
    if x not in (0, 1) or z not in (0, 1):
        raise ValueError("x and z must be bits")
    return np.linalg.matrix_power(pauli("X"), x) @ np.linalg.matrix_power(pauli("Z"), z)


def phase_i_n() -> ComplexMatrix:
    """``i^n = diag(1, i)``."""
    return np.diag([1, 1j]).astype(complex)


def phase_gate(phi: float) -> ComplexMatrix:
    """``exp(i phi n) = diag(1, e^{i phi})``."""
    return np.diag([1, np.exp(1j * phi)]).astype(complex)


def rotation(theta_vec) -> ComplexMatrix:
    """``exp(i θ⃗·σ⃗) = cos θ + i (θ̂·σ⃗) sin θ`` with ``θ = |θ⃗|``."""
    v = np.asarray(theta_vec, dtype=float).reshape(3)
    theta = float(np.linalg.norm(v))
    if theta == 0.0:
        return identity(2)
    n = v / theta
    gen = n[0] * _PAULI[Axis.X] + n[1] * _PAULI[Axis.Y] + n[2] * _PAULI[Axis.Z]
    return math.cos(theta) * identity(2) + 1j * math.sin(theta) * gen


def rz(theta: float) -> ComplexMatrix:
    """``exp(i θ σ_Z)``."""
    return np.diag([np.exp(1j * theta), np.exp(-1j * theta)]).astype(complex)


def exchanger() -> ComplexMatrix:
    e = np.zeros((4, 4), dtype=complex)
    for a in (0, 1):
        for b in (0, 1):
            e[2 * b + a, 2 * a + b] = 1
    return e


def cnot() -> ComplexMatrix:
    """CNOT with the first wire as control and the second as target."""
    return kron(number_op(bar=True), identity(2)) + kron(number_op(), pauli("X"))


def pi_pair(w1: Axis | str, w2: Axis | str, j: int) -> ComplexMatrix:
    """Projector onto the ``(-1)^j`` eigenspace of ``σ_{w1} ⊗ σ_{w2}``."""
    if j not in (0, 1):
        raise ValueError(f"j must be a bit, got {j}")
    sign = 1 if j == 0 else -1
    return (identity(4) + sign * kron(pauli(w1), pauli(w2))) / 2


def bell_state(x: int, z: int, upper: bool = False) -> ComplexMatrix:
    """``|B_{xz}>`` (Λ on the second qubit) or ``|B^{xz}>`` (Λ on the first)."""
    b00 = np.array([1, 0, 0, 1], dtype=complex).reshape(4, 1) / SQRT2
    lam = lambda_xz(x, z)
    op = kron(lam, identity(2)) if upper else kron(identity(2), lam)
    return op @ b00


def ghz_state() -> ComplexMatrix:
    v = np.zeros((8, 1), dtype=complex)
    v[0, 0] = v[7, 0] = 1 / SQRT2
    return v


@dataclass(frozen=True)
class UnitaryDiagonalization:
    """``u = V diag(e^{iθ1}, e^{iθ2}) V†`` with derived half-sum and half-difference."""

    v: ComplexMatrix
    theta1: float
    theta2: float

    @property
    def delta(self) -> float:
        return (self.theta1 - self.theta2) / 2

    @property
    def theta_bar(self) -> float:
        return (self.theta1 + self.theta2) / 2

    def reconstruct(self) -> ComplexMatrix:
        d = np.diag([np.exp(1j * self.theta1), np.exp(1j * self.theta2)])
        return self.v @ d @ dagger(self.v)


def _principal_phase(z: complex) -> float:
    # angle() returns [-pi, pi]; fold -pi onto +pi
    phi = float(np.angle(z))
    return math.pi if phi <= -math.pi else phi


def _unit_column(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    k = 0 if abs(v[0]) > 1e-12 else 1
    return v * (abs(v[k]) / v[k])


def diagonalize_2x2_unitary(u: ComplexMatrix, tol: float = DEFAULT_TOL) -> UnitaryDiagonalization:
    """Spectral decomposition of a 2x2 unitary.

    Eigenphases lie in ``(-π, π]`` and are sorted ascending; a degenerate
    spectrum returns ``V = I``. Eigenvector columns are scaled so their first
    non-zero entry is real and positive.
    """
    u = as_matrix(u)
    if u.shape != (2, 2) or not is_unitary(u, tol):
        raise ValueError("expected a 2x2 unitary matrix")
    a, b, c, d = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    # eigenvalues of a normal matrix are well conditioned; the closed-form
    # discriminant is not (sqrt amplifies rounding near degeneracy)
    lams = list(np.linalg.eigvals(u))
    phases = [_principal_phase(lam) for lam in lams]
    if abs(lams[0] - lams[1]) < 1e-12:
        phi = _principal_phase((a + d) / 2)
        return UnitaryDiagonalization(identity(2), phi, phi)
    order = sorted(range(2), key=lambda i: phases[i])
    lam = lams[order[0]]
    # eigenvector of lam from whichever row of (u - lam) is better conditioned
    r1 = np.array([b, lam - a])
    r2 = np.array([lam - d, c])
    v1 = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
    v1 = _unit_column(v1)
    v2 = _unit_column(np.array([-np.conj(v1[1]), np.conj(v1[0])]))
    v = np.column_stack([v1, v2])
    return UnitaryDiagonalization(v, phases[order[0]], phases[order[1]])


def sqrt_unitary(u: ComplexMatrix, tol: float = DEFAULT_TOL) -> ComplexMatrix:
    """Principal square root: eigenphases in ``(-π, π]`` are halved."""
    dz = diagonalize_2x2_unitary(u, tol)
    d = np.diag([np.exp(0.5j * dz.theta1), np.exp(0.5j * dz.theta2)])
    return dz.v @ d @ dagger(dz.v)


def unitary_power(u: ComplexMatrix, p: float, tol: float = DEFAULT_TOL) -> ComplexMatrix:
    """``u**p`` on the principal branch; ``p = 0.5`` agrees with :func:`sqrt_unitary`."""
    dz = diagonalize_2x2_unitary(u, tol)
    d = np.diag([np.exp(1j * p * dz.theta1), np.exp(1j * p * dz.theta2)])
    return dz.v @ d @ dagger(dz.v)


def random_unitary(rng: np.random.Generator) -> ComplexMatrix:
    """Seeded 2x2 unitary ``rotation(θ⃗) · diag(e^{iφ}, 1)``."""
    theta = rng.uniform(-math.pi, math.pi, size=3)
    phi = rng.uniform(-math.pi, math.pi)
    return rotation(theta) @ np.diag([np.exp(1j * phi), 1])


def random_state(rng: np.random.Generator) -> ComplexMatrix:
    """Seeded normalized single-qubit column vector."""
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return (v / np.linalg.norm(v)).reshape(2, 1)
