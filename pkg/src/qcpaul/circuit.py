"""Circuit data model and the dense evaluator.

Elements are stored in chronological order: element 0 acts first.  Diagrams
drawn with time flowing right to left are transcribed by reading their
columns from the rightmost one.

Kets and bras are boxes on one or more wires.  A ket must precede every
other element touching its wires and a bra must follow all of them; the
evaluator contracts kets into the input legs and bras into the output legs,
so the result maps the un-prepared wires to the un-selected wires.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from . import gates
from .tensor import (DEFAULT_TOL, ComplexMatrix, apply_local, check_wires,
                     dagger, embed, frozen, identity, is_projector, kron_all, num_qubits)


class CircuitError(ValueError):
    """A circuit violates a structural rule."""


def _mkey(m: np.ndarray | None):
    if m is None:
        return None
    return (m.shape, tuple(complex(z) for z in m.ravel()))


class ControlKind(str, Enum):
    N = "n"
    NBAR = "nbar"
    PROJ = "proj"


@dataclass(frozen=True, eq=False)
class Control:
    """A control box: filled dot (``n``), open dot (``n̄``) or a general projector."""

    kind: ControlKind
    wires: tuple[str, ...]
    matrix: ComplexMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ControlKind(self.kind))
        object.__setattr__(self, "wires", tuple(self.wires))
        if self.kind is ControlKind.PROJ:
            if self.matrix is None:
                raise CircuitError("projector control needs a matrix")
            m = frozen(self.matrix)
            if m.shape != (1 << len(self.wires),) * 2:
                raise CircuitError(f"projector control of shape {m.shape} on {len(self.wires)} wire(s)")
            if not is_projector(m, 1e-9):
                raise CircuitError("control matrix is not an orthogonal projector")
            object.__setattr__(self, "matrix", m)
        else:
            if len(self.wires) != 1 or self.matrix is not None:
                raise CircuitError("dot controls act on exactly one wire and carry no matrix")

    @classmethod
    def n(cls, wire: str) -> Control:
        return cls(ControlKind.N, (wire,))

    @classmethod
    def nbar(cls, wire: str) -> Control:
        return cls(ControlKind.NBAR, (wire,))

    @classmethod
    def proj(cls, wires, matrix) -> Control:
        return cls(ControlKind.PROJ, tuple(wires), matrix)

    def projector(self) -> ComplexMatrix:
        if self.kind is ControlKind.N:
            return gates.number_op()
        if self.kind is ControlKind.NBAR:
            return gates.number_op(bar=True)
        return np.array(self.matrix)

    def _key(self):
        return (self.kind, self.wires, _mkey(self.matrix))

    def __eq__(self, other):
        return isinstance(other, Control) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class Element:
    """Common base for diagram boxes."""

    @property
    def wires(self) -> tuple[str, ...]:
        raise NotImplementedError

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


GATE_ARITY = {"X": 1, "Y": 1, "Z": 1, "H": 1, "S": 1, "E": 2, "RZ": 1, "ROT": 1}
GATE_PARAMS = {"RZ": 1, "ROT": 3}


@dataclass(frozen=True, eq=False)
class Gate(Element):
    """A (possibly projector-controlled) unitary.

    ``name`` is one of X, Y, Z, H, S (= i^n), E, RZ (exp(iθσ_Z)),
    ROT (exp(iθ⃗·σ⃗)) or MAT (explicit matrix on any number of targets).
    """

    name: str
    targets: tuple[str, ...]
    params: tuple[float, ...] = ()
    matrix: ComplexMatrix | None = None
    controls: tuple[Control, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        object.__setattr__(self, "controls", tuple(self.controls))
        name = self.name
        if name == "MAT":
            if self.matrix is None:
                raise CircuitError("MAT gate needs a matrix")
            m = frozen(self.matrix)
            if m.shape != (1 << len(self.targets),) * 2:
                raise CircuitError(
                    f"MAT of shape {m.shape} does not act on {len(self.targets)} target(s)")
            object.__setattr__(self, "matrix", m)
        elif name in GATE_ARITY:
            if self.matrix is not None:
                raise CircuitError(f"gate {name} takes no matrix")
            if len(self.targets) != GATE_ARITY[name]:
                raise CircuitError(f"gate {name} acts on {GATE_ARITY[name]} wire(s)")
            if len(self.params) != GATE_PARAMS.get(name, 0):
                raise CircuitError(f"gate {name} takes {GATE_PARAMS.get(name, 0)} parameter(s)")
        else:
            raise CircuitError(f"unknown gate name {name!r}")
        if len(set(self.targets)) != len(self.targets):
            raise CircuitError("target wires must be distinct")
        cw = [w for c in self.controls for w in c.wires]
        if len(set(cw)) != len(cw):
            raise CircuitError("control wires must be distinct")
        if set(cw) & set(self.targets):
            raise CircuitError("control wires must be disjoint from target wires")

    @property
    def control_wires(self) -> tuple[str, ...]:
        return tuple(w for c in self.controls for w in c.wires)

    @property
    def wires(self) -> tuple[str, ...]:
        return self.control_wires + self.targets

    def payload(self) -> ComplexMatrix:
        """The unitary applied to the targets when the controls are satisfied."""
        n, p = self.name, self.params
        if n == "MAT":
            return np.array(self.matrix)
        if n in ("X", "Y", "Z"):
            return gates.pauli(n)
        if n == "H":
            return gates.hadamard(1)
        if n == "S":
            return gates.phase_i_n()
        if n == "E":
            return gates.exchanger()
        if n == "RZ":
            return gates.rz(p[0])
        return gates.rotation(p)

    def control_projector(self) -> ComplexMatrix:
        return kron_all([c.projector() for c in self.controls])

    def local_matrix(self) -> ComplexMatrix:
        """Matrix on ``self.wires`` (controls first): ``π⊗U + (1-π)⊗I``."""
        u = self.payload()
        if not self.controls:
            return u
        pi = self.control_projector()
        return np.kron(pi, u) + np.kron(identity(pi.shape[0]) - pi, identity(u.shape[0]))

    def with_controls(self, controls) -> Gate:
        return Gate(self.name, self.targets, self.params, self.matrix, tuple(controls))

    def _key(self):
        return (self.name, self.targets, self.params, _mkey(self.matrix), self.controls)


@dataclass(frozen=True, eq=False)
class Projector(Element):
    """A post-selected measurement box such as ``|j><j|`` or ``Π^j_{ZZ}``.

    ``label`` records how the projector was named (``("z", j)``,
    ``("zz", j)``, ``("pair", w1, w2, j)``) or ``("mat",)`` for a literal.
    """

    targets: tuple[str, ...]
    matrix: ComplexMatrix
    label: tuple = ("mat",)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        m = frozen(self.matrix)
        if m.shape != (1 << len(self.targets),) * 2:
            raise CircuitError(f"projector of shape {m.shape} on {len(self.targets)} wire(s)")
        if len(set(self.targets)) != len(self.targets):
            raise CircuitError("projector wires must be distinct")
        if not is_projector(m, 1e-9):
            raise CircuitError("projector matrix is not idempotent and Hermitian")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "label", tuple(self.label))

    @property
    def wires(self) -> tuple[str, ...]:
        return self.targets

    def local_matrix(self) -> ComplexMatrix:
        return np.array(self.matrix)

    def _key(self):
        return (self.targets, _mkey(self.matrix), self.label)


NAMED_STATES = {
    "0": ("Z", 1), "1": ("Z", -1),
    "+X": ("X", 1), "-X": ("X", -1),
    "+Y": ("Y", 1), "-Y": ("Y", -1),
}


def named_state(label: str) -> ComplexMatrix:
    w, s = NAMED_STATES[label]
    return gates.eigenstate(w, s)


@dataclass(frozen=True, eq=False)
class Ket(Element):
    """State preparation box; ``vector`` need not be normalized."""

    targets: tuple[str, ...]
    vector: ComplexMatrix
    label: str | None = None

    def __post_init__(self):
        _init_box(self)

    @property
    def wires(self) -> tuple[str, ...]:
        return self.targets

    def column(self) -> ComplexMatrix:
        return np.array(self.vector).reshape(-1, 1)

    def _key(self):
        return (self.targets, _mkey(self.vector), self.label)


@dataclass(frozen=True, eq=False)
class Bra(Element):
    """Post-selection box; ``vector`` holds the row entries of the covector."""

    targets: tuple[str, ...]
    vector: ComplexMatrix
    label: str | None = None

    def __post_init__(self):
        _init_box(self)

    @property
    def wires(self) -> tuple[str, ...]:
        return self.targets

    def row(self) -> ComplexMatrix:
        return np.array(self.vector).reshape(1, -1)

    def _key(self):
        return (self.targets, _mkey(self.vector), self.label)


def _init_box(box) -> None:
    object.__setattr__(box, "targets", tuple(box.targets))
    v = frozen(np.asarray(box.vector, dtype=complex).reshape(-1))
    if v.shape[0] != 1 << len(box.targets):
        raise CircuitError(f"vector of length {v.shape[0]} on {len(box.targets)} wire(s)")
    if len(set(box.targets)) != len(box.targets):
        raise CircuitError("box wires must be distinct")
    if box.label is not None and box.label not in NAMED_STATES:
        raise CircuitError(f"unknown state label {box.label!r}")
    object.__setattr__(box, "vector", v.reshape(-1, 1))


@dataclass(frozen=True, eq=False)
class Scalar(Element):
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not np.isfinite(v):
            raise CircuitError("scalar must be finite")
        object.__setattr__(self, "value", v)

    @property
    def wires(self) -> tuple[str, ...]:
        return ()

    def _key(self):
        return (self.value,)


ElementT = Union[Gate, Projector, Ket, Bra, Scalar]


# constructors used throughout the catalog and rewrite rules

def ket(wire: str, state: int | str = 0) -> Ket:
    label = str(state)
    return Ket((wire,), named_state(label), label)


def bra(wire: str, state: int | str = 0) -> Bra:
    label = str(state)
    return Bra((wire,), np.conj(named_state(label)), label)


def ket_vec(wires, vector) -> Ket:
    wires = (wires,) if isinstance(wires, str) else tuple(wires)
    return Ket(wires, vector)


def bra_vec(wires, vector) -> Bra:
    """Bra whose row is the conjugate transpose of the column ``vector``."""
    wires = (wires,) if isinstance(wires, str) else tuple(wires)
    return Bra(wires, np.conj(np.asarray(vector, dtype=complex)).reshape(-1))


def gate(name: str, *targets: str, params=(), ctrl=(), matrix=None) -> Gate:
    return Gate(name, tuple(targets), tuple(params), matrix, tuple(ctrl))


def mat(matrix, *targets: str, ctrl=()) -> Gate:
    return Gate("MAT", tuple(targets), (), matrix, tuple(ctrl))


def cnot(control: str, target: str) -> Gate:
    return Gate("X", (target,), controls=(Control.n(control),))


def proj_z(j: int, wire: str) -> Projector:
    return Projector((wire,), gates.ket(j) @ gates.ket(j).T, ("z", int(j)))


def proj_zz(j: int, a: str, b: str) -> Projector:
    return Projector((a, b), gates.pi_pair("Z", "Z", j), ("zz", int(j)))


def proj_pair(w1: str, w2: str, j: int, a: str, b: str) -> Projector:
    return Projector((a, b), gates.pi_pair(w1, w2, j), ("pair", str(w1), str(w2), int(j)))


def scalar(value: complex) -> Scalar:
    return Scalar(value)


def ctrl_matrix(controls, wires) -> np.ndarray:
    """The product projector of ``controls`` embedded on ``wires``."""
    local = [w for c in controls for w in c.wires]
    p = kron_all([c.projector() for c in controls])
    return embed(p, local, wires)


def phase_on(theta: float, controls) -> Gate:
    """``exp(iθπ)`` for the product projector ``π`` of ``controls``.

    The last control carries the phase as a literal matrix; the remaining
    controls stay controls, so dot controls give the drawn ``e^{iθ n}`` box.
    """
    *rest, last = controls
    p = last.projector()
    m = identity(p.shape[0]) + (np.exp(1j * theta) - 1) * p
    return Gate("MAT", last.wires, (), m, tuple(rest))


def product_control(first, second) -> Control:
    """A single projector control for the product of two commuting control lists."""
    wires: list[str] = []
    for c in list(first) + list(second):
        for w in c.wires:
            if w not in wires:
                wires.append(w)
    p = ctrl_matrix(first, wires) @ ctrl_matrix(second, wires)
    return Control.proj(tuple(wires), p)


@dataclass(frozen=True)
class Circuit:
    """Wire declaration plus chronologically ordered elements."""

    wires: tuple[str, ...]
    elements: tuple[ElementT, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "wires", check_wires(self.wires))
        object.__setattr__(self, "elements", tuple(self.elements))
        _validate(self)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def ket_wires(self) -> tuple[str, ...]:
        return tuple(w for e in self.elements if isinstance(e, Ket) for w in e.targets)

    @property
    def bra_wires(self) -> tuple[str, ...]:
        return tuple(w for e in self.elements if isinstance(e, Bra) for w in e.targets)

    @property
    def in_wires(self) -> tuple[str, ...]:
        kw = set(self.ket_wires)
        return tuple(w for w in self.wires if w not in kw)

    @property
    def out_wires(self) -> tuple[str, ...]:
        bw = set(self.bra_wires)
        return tuple(w for w in self.wires if w not in bw)

    def replace(self, start: int, stop: int, new) -> Circuit:
        els = self.elements[:start] + tuple(new) + self.elements[stop:]
        return Circuit(self.wires, els)

    def with_elements(self, elements) -> Circuit:
        return Circuit(self.wires, tuple(elements))

    def then(self, *elements) -> Circuit:
        return Circuit(self.wires, self.elements + tuple(elements))


def _validate(c: Circuit) -> None:
    declared = set(c.wires)
    prepared: set[str] = set()
    selected: set[str] = set()
    touched: set[str] = set()
    for i, e in enumerate(c.elements):
        if not isinstance(e, (Gate, Projector, Ket, Bra, Scalar)):
            raise CircuitError(f"element {i} has unsupported type {type(e).__name__}")
        unknown = [w for w in e.wires if w not in declared]
        if unknown:
            raise CircuitError(f"element {i} references undeclared wire(s) {unknown}")
        closed = selected.intersection(e.wires)
        if closed:
            raise CircuitError(f"element {i} acts on wire(s) {sorted(closed)} after their bra")
        if isinstance(e, Ket):
            dup = prepared.intersection(e.targets)
            if dup:
                raise CircuitError(f"duplicate ket on wire(s) {sorted(dup)}")
            late = touched.intersection(e.targets)
            if late:
                raise CircuitError(f"ket on wire(s) {sorted(late)} after they were used")
            prepared.update(e.targets)
        elif isinstance(e, Bra):
            selected.update(e.targets)
        touched.update(e.wires)


@dataclass(frozen=True)
class EvalResult:
    matrix: ComplexMatrix
    in_wires: tuple[str, ...]
    out_wires: tuple[str, ...]


def _reorder_axis(mat: np.ndarray, src, dst, axis: int) -> np.ndarray:
    """Permute the qubit factors of one axis of ``mat`` from ``src`` to ``dst``."""
    src, dst = list(src), list(dst)
    if src == dst:
        return mat
    n = len(src)
    perm = [src.index(w) for w in dst]
    if axis == 0:
        t = mat.reshape((2,) * n + (mat.shape[1],))
        return t.transpose(perm + [n]).reshape(mat.shape)
    t = mat.reshape((mat.shape[0],) + (2,) * n)
    return t.transpose([0] + [1 + p for p in perm]).reshape(mat.shape)


def operator_matrix(e: ElementT, wires) -> ComplexMatrix:
    """Full-register matrix of a gate or projector."""
    return embed(e.local_matrix(), e.wires, wires)


def evaluate(c: Circuit) -> EvalResult:
    """Contract the circuit into a ``2^|out| x 2^|in|`` matrix.

    The map is held as a dense matrix; each gate or projector is applied to
    it in chronological order by contracting its local matrix with the
    matching register axes.
    """
    wires = list(c.wires)
    kets = [e for e in c.elements if isinstance(e, Ket)]
    bras = [e for e in c.elements if isinstance(e, Bra)]
    in_wires, out_wires = list(c.in_wires), list(c.out_wires)

    prep = kron_all([k.column() for k in kets] + [identity(1 << len(in_wires))])
    prep_order = [w for k in kets for w in k.targets] + in_wires
    m = _reorder_axis(prep, prep_order, wires, axis=0)

    for e in c.elements:
        if isinstance(e, Scalar):
            m = e.value * m
        elif isinstance(e, (Gate, Projector)):
            m = apply_local(e.local_matrix(), e.wires, wires, m)

    post = kron_all([b.row() for b in bras] + [identity(1 << len(out_wires))])
    post_order = [w for b in bras for w in b.targets] + out_wires
    post = _reorder_axis(post, post_order, wires, axis=1)
    return EvalResult(post @ m, tuple(in_wires), tuple(out_wires))


def _dagger_element(e: ElementT) -> ElementT:
    if isinstance(e, Scalar):
        return Scalar(np.conj(e.value))
    if isinstance(e, Ket):
        return Bra(e.targets, np.conj(e.vector).reshape(-1), e.label)
    if isinstance(e, Bra):
        return Ket(e.targets, np.conj(e.vector).reshape(-1), e.label)
    if isinstance(e, Projector):
        return Projector(e.targets, dagger(e.matrix), e.label)
    if e.name in ("X", "Y", "Z", "H", "E"):
        return e
    if e.name == "RZ":
        return Gate("RZ", e.targets, (-e.params[0],), None, e.controls)
    if e.name == "ROT":
        return Gate("ROT", e.targets, tuple(-p for p in e.params), None, e.controls)
    return Gate("MAT", e.targets, (), dagger(e.payload()), e.controls)


def adjoint(c: Circuit) -> Circuit:
    """Reverse the order and dagger every element; kets and bras swap roles."""
    return Circuit(c.wires, tuple(_dagger_element(e) for e in reversed(c.elements)))


def _conj_control(ctl: Control) -> Control:
    if ctl.kind is ControlKind.PROJ:
        return Control.proj(ctl.wires, np.conj(ctl.matrix))
    return ctl


def _conj_element(e: ElementT) -> ElementT:
    if isinstance(e, Scalar):
        return Scalar(np.conj(e.value))
    if isinstance(e, (Ket, Bra)):
        v = np.conj(e.vector).reshape(-1)
        if e.label is not None and np.array_equal(v, np.asarray(e.vector).reshape(-1)):
            return e
        return type(e)(e.targets, v)
    if isinstance(e, Projector):
        m = np.conj(e.matrix)
        label = e.label if np.array_equal(m, e.matrix) else ("mat",)
        return Projector(e.targets, m, label)
    controls = tuple(_conj_control(c) for c in e.controls)
    if e.name == "RZ":
        return Gate("RZ", e.targets, (-e.params[0],), None, controls)
    u = e.payload()
    if e.name != "MAT" and np.array_equal(np.conj(u), u):
        return Gate(e.name, e.targets, e.params, None, controls)
    return Gate("MAT", e.targets, (), np.conj(u), controls)


def conjugate(c: Circuit) -> Circuit:
    """Entrywise complex conjugate of every element (same order)."""
    return Circuit(c.wires, tuple(_conj_element(e) for e in c.elements))


def transpose(c: Circuit) -> Circuit:
    """Circuit evaluating to the transpose: ``conjugate(adjoint(c))``."""
    return conjugate(adjoint(c))


def compose(first: Circuit, then: Circuit) -> Circuit:
    """``first`` followed by ``then`` over the same wire declaration."""
    if first.wires != then.wires:
        raise CircuitError(f"wire declarations differ: {list(first.wires)} vs {list(then.wires)}")
    closed = set(first.bra_wires)
    reopened = closed.intersection(w for e in then.elements for w in e.wires)
    if reopened:
        raise CircuitError(f"wire(s) {sorted(reopened)} are bra-selected before the second circuit")
    return Circuit(first.wires, first.elements + then.elements)


def max_deviation(a: EvalResult, b: EvalResult) -> float:
    """Largest entrywise difference; infinite when the maps have different legs."""
    if a.in_wires != b.in_wires or a.out_wires != b.out_wires or a.matrix.shape != b.matrix.shape:
        return float("inf")
    if a.matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(a.matrix - b.matrix)))


def equivalent(a: Circuit, b: Circuit, tol: float = DEFAULT_TOL) -> bool:
    return max_deviation(evaluate(a), evaluate(b)) <= tol


def register_size(c: Circuit) -> int:
    return num_qubits(1 << len(c.wires))
