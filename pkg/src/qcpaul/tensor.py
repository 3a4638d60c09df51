"""Dense complex linear algebra over small qubit registers.

Matrices are plain ``numpy`` complex128 arrays with two axes; kets are
``(2**k, 1)`` columns and bras ``(1, 2**k)`` rows, so every map carries its
row and column dimensions explicitly.

Basis convention: the first wire in a wire list is the most significant bit
of the basis index, so ``|01>`` on wires ``(a, b)`` is ``(0, 1, 0, 0)^T``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

MAX_WIRES = 12
DEFAULT_TOL = 1e-10

ComplexMatrix = np.ndarray


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit together."""


def as_matrix(data, *, copy: bool = True) -> ComplexMatrix:
    """Coerce ``data`` into a finite 2-D complex128 array.

    One-dimensional input is treated as a column vector.
    """
    arr = np.array(data, dtype=complex) if copy else np.asarray(data, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def frozen(data) -> ComplexMatrix:
    """Return a read-only complex copy of ``data``."""
    arr = as_matrix(data)
    arr.setflags(write=False)
    return arr


def identity(dim: int) -> ComplexMatrix:
    return np.eye(dim, dtype=complex)


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    return np.conj(np.asarray(a)).T


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; ``(a ⊗ b)[i1*rb + i2, j1*cb + j2] = a[i1, j1] * b[i2, j2]``."""
    return np.kron(as_matrix(a, copy=False), as_matrix(b, copy=False))


def kron_all(mats: Sequence[ComplexMatrix]) -> ComplexMatrix:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def num_qubits(dim: int) -> int:
    """Number of qubits ``k`` with ``2**k == dim``."""
    k = int(dim).bit_length() - 1
    if dim < 1 or (1 << k) != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return k


def check_wires(wires: Sequence[str]) -> tuple[str, ...]:
    wires = tuple(wires)
    if len(set(wires)) != len(wires):
        raise ValueError(f"duplicate wire labels in {list(wires)}")
    if len(wires) > MAX_WIRES:
        raise ValueError(f"{len(wires)} wires exceeds the dense-register limit of {MAX_WIRES}")
    return wires


def permute_wires(mat: ComplexMatrix, src: Sequence[str], dst: Sequence[str]) -> ComplexMatrix:
    """Reorder the tensor factors of a square operator from ``src`` to ``dst`` order.

    ``src`` and ``dst`` must hold the same labels; the basis bits are permuted
    so that the result acts identically with wires listed in ``dst`` order.
    """
    src, dst = tuple(src), tuple(dst)
    if sorted(src) != sorted(dst):
        raise ValueError("wire lists must be permutations of each other")
    n = len(src)
    if src == dst:
        return np.array(mat, dtype=complex)
    perm = [src.index(w) for w in dst]
    t = np.asarray(mat).reshape((2,) * (2 * n))
    t = t.transpose(perm + [n + p for p in perm])
    return t.reshape(1 << n, 1 << n)


def embed(op: ComplexMatrix, targets: Sequence[str], all_wires: Sequence[str]) -> ComplexMatrix:
    """Lift ``op`` acting on ``targets`` (in that order) to the full register.

    Identity acts on every wire of ``all_wires`` not in ``targets``.
    """
    op = as_matrix(op, copy=False)
    targets = check_wires(targets)
    all_wires = check_wires(all_wires)
    k = len(targets)
    if op.shape != (1 << k, 1 << k):
        raise DimensionError(
            f"operator of shape {op.shape} does not act on {k} target wire(s)")
    missing = [w for w in targets if w not in all_wires]
    if missing:
        raise ValueError(f"target wire(s) {missing} not in register {list(all_wires)}")
    rest = [w for w in all_wires if w not in targets]
    full = np.kron(op, identity(1 << len(rest)))
    return permute_wires(full, list(targets) + rest, all_wires)


def _same_shape(a, b) -> tuple[np.ndarray, np.ndarray]:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def max_abs_diff(a: ComplexMatrix, b: ComplexMatrix) -> float:
    a, b = _same_shape(a, b)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def approx_equal(a: ComplexMatrix, b: ComplexMatrix, tol: float = DEFAULT_TOL) -> bool:
    """True iff the largest entrywise deviation is at most ``tol``."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return max_abs_diff(a, b) <= tol


def equal_up_to_phase(a: ComplexMatrix, b: ComplexMatrix,
                      tol: float = DEFAULT_TOL) -> complex | None:
    """Find a unit-modulus ``lam`` with ``a ≈ lam * b``, or ``None``.

    ``lam`` is read off the largest-magnitude entry of ``b``.
    """
    a, b = _same_shape(a, b)
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    pivot = b[idx]
    if abs(pivot) == 0.0:
        return 1.0 + 0j if approx_equal(a, b, tol) else None
    lam = a[idx] / pivot
    if abs(lam) == 0.0:
        return None
    lam = lam / abs(lam)
    return complex(lam) if approx_equal(a, lam * b, tol) else None


def is_unitary(u: ComplexMatrix, tol: float = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return approx_equal(dagger(u) @ u, identity(u.shape[0]), tol)


def is_projector(p: ComplexMatrix, tol: float = DEFAULT_TOL) -> bool:
    p = np.asarray(p)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        return False
    return approx_equal(p @ p, p, tol) and approx_equal(dagger(p), p, tol)


def apply_local(op: ComplexMatrix, targets: Sequence[str], all_wires: Sequence[str],
                state: ComplexMatrix) -> ComplexMatrix:
    """Compute ``embed(op, targets, all_wires) @ state`` without forming the embedding.

    ``state`` has ``2**len(all_wires)`` rows and any number of columns.
    """
    op = np.asarray(op)
    all_wires = list(all_wires)
    n, k = len(all_wires), len(targets)
    if op.shape != (1 << k, 1 << k):
        raise DimensionError(f"operator of shape {op.shape} does not act on {k} target wire(s)")
    if state.shape[0] != 1 << n:
        raise DimensionError(f"state has {state.shape[0]} rows, register needs {1 << n}")
    axes = [all_wires.index(w) for w in targets]
    cols = state.shape[1]
    t = state.reshape((2,) * n + (cols,))
    t = np.tensordot(op.reshape((2,) * (2 * k)), t, axes=(list(range(k, 2 * k)), axes))
    # tensordot puts the op's output axes first; move them back into place
    t = np.moveaxis(t, list(range(k)), axes)
    return t.reshape(1 << n, cols)
