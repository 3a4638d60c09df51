"""Identity records, parameter spaces and the verification driver."""

from __future__ import annotations

import itertools
import math
import time
import zlib
from collections.abc import Callable, Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .. import gates
from ..circuit import Circuit, EvalResult, evaluate
from ..tensor import DEFAULT_TOL, equal_up_to_phase, is_unitary

DEFAULT_SEED = 0xC0FFEE
ANGLE_GRID = (0.0, math.pi / 7, math.pi / 3, 1.0, 2.5)
RANDOM_DRAWS = 10
GLOBAL_PHASE = 0.9  # phase used for the U = e^{iφ} I degenerate slot

Side = Union[Circuit, tuple]
Point = dict


class CatalogError(KeyError):
    """Unknown identity id or a parameter point outside its space."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class Param:
    """One axis of a parameter space.

    ``kind`` is ``bit``, ``int`` or ``choice`` (enumerated exhaustively) or
    ``angle``, ``unitary`` or ``state`` (sampled).
    """

    name: str
    kind: str
    values: tuple = ()

    @property
    def discrete(self) -> bool:
        return self.kind in ("bit", "int", "choice")


def bits(*names: str) -> tuple[Param, ...]:
    return tuple(Param(n, "bit", (0, 1)) for n in names)


def ints(name: str, values) -> Param:
    return Param(name, "int", tuple(int(v) for v in values))


def choice(name: str, values) -> Param:
    return Param(name, "choice", tuple(values))


def angles(*names: str) -> tuple[Param, ...]:
    return tuple(Param(n, "angle") for n in names)


def unitaries(*names: str) -> tuple[Param, ...]:
    return tuple(Param(n, "unitary") for n in names)


def states(*names: str) -> tuple[Param, ...]:
    return tuple(Param(n, "state") for n in names)


@dataclass(frozen=True)
class Identity:
    """A parameterized equation ``lhs(p) == rhs(p)``.

    A side is a :class:`Circuit` or a tuple of circuits whose evaluations are
    summed.  ``mode`` is ``"exact"`` (entrywise, scalars included) or
    ``"phase"`` (equal up to a global phase).
    """

    id: str
    citation: str
    params: tuple[Param, ...]
    lhs: Callable[[Point], Side]
    rhs: Callable[[Point], Side]
    mode: str = "exact"

    @property
    def group(self) -> str:
        return self.id.split(".", 1)[0]

    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)


@dataclass(frozen=True)
class VerificationReport:
    id: str
    citation: str
    points: int
    max_deviation: float
    passed: bool
    elapsed: float


_REGISTRY: dict[str, Identity] = {}


def register(identity: Identity) -> Identity:
    if identity.id in _REGISTRY:
        raise ValueError(f"duplicate identity id {identity.id!r}")
    if identity.mode not in ("exact", "phase"):
        raise ValueError(f"unknown comparison mode {identity.mode!r}")
    _REGISTRY[identity.id] = identity
    return identity


def identity(
    id: str, citation: str, params=(), *, lhs, rhs, mode: str = "exact"
) -> Identity:
    if isinstance(params, Param):
        params = (params,)
    flat: list[Param] = []
    for p in params:
        flat.extend(p if isinstance(p, tuple) else (p,))
    return register(Identity(id, citation, tuple(flat), lhs, rhs, mode))


def list_identities() -> tuple[Identity, ...]:
    return tuple(_REGISTRY.values())


def get(identity_id: str) -> Identity:
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise CatalogError(f"unknown identity {identity_id!r}") from None


# parameter points -------------------------------------------------------------

def _rng(seed: int, identity_id: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) & (2**64 - 1), zlib.crc32(identity_id.encode())])


def _special_values(p: Param) -> list:
    if p.kind == "angle":
        return list(ANGLE_GRID)
    if p.kind == "unitary":
        return [gates.identity(2), np.exp(1j * GLOBAL_PHASE) * gates.identity(2)]
    return [gates.ket(0)]


def _draw(p: Param, rng: np.random.Generator):
    if p.kind == "angle":
        return float(rng.uniform(-math.pi, math.pi))
    if p.kind == "unitary":
        return gates.random_unitary(rng)
    return gates.random_state(rng)


def param_points(ident: Identity, seed: int = DEFAULT_SEED) -> list[Point]:
    """Every point checked by :func:`verify`, in a fixed order.

    Discrete axes are enumerated exhaustively.  Sampled axes contribute the
    product of their special values (angle grid, ``U = I``, ``U = e^{iφ}I``,
    ``ψ = |0>``) plus ``RANDOM_DRAWS`` seeded joint draws.
    """
    discrete = [p for p in ident.params if p.discrete]
    sampled = [p for p in ident.params if not p.discrete]
    disc_points = [dict(zip([p.name for p in discrete], combo))
                   for combo in itertools.product(*[p.values for p in discrete])]
    if sampled:
        rng = _rng(seed, ident.id)
        cont = [dict(zip([p.name for p in sampled], combo))
                for combo in itertools.product(*[_special_values(p) for p in sampled])]
        cont += [{p.name: _draw(p, rng) for p in sampled} for _ in range(RANDOM_DRAWS)]
    else:
        cont = [{}]
    return [{**d, **c} for d in disc_points for c in cont]


def _check_point(ident: Identity, params: Mapping) -> dict:
    names = set(ident.param_names())
    given = set(params)
    if given != names:
        missing, extra = sorted(names - given), sorted(given - names)
        raise CatalogError(f"{ident.id}: parameters mismatch (missing {missing}, unexpected {extra})")
    out = {}
    for p in ident.params:
        v = params[p.name]
        if p.discrete:
            if v not in p.values:
                raise CatalogError(f"{ident.id}: {p.name}={v!r} not in {list(p.values)}")
        elif p.kind == "angle":
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)) \
                    or not math.isfinite(v):
                raise CatalogError(f"{ident.id}: {p.name} must be a finite real")
            v = float(v)
        elif p.kind == "unitary":
            v = np.asarray(v, dtype=complex)
            if v.shape != (2, 2) or not is_unitary(v, 1e-9):
                raise CatalogError(f"{ident.id}: {p.name} must be a 2x2 unitary")
        else:
            v = np.asarray(v, dtype=complex).reshape(-1, 1)
            if v.shape != (2, 1) or not np.all(np.isfinite(v)):
                raise CatalogError(f"{ident.id}: {p.name} must be a 2-vector")
        out[p.name] = v
    return out


def instantiate(identity_id: str, params: Mapping | None = None) -> tuple[Side, Side]:
    ident = get(identity_id)
    point = _check_point(ident, params or {})
    return ident.lhs(point), ident.rhs(point)


# evaluation -------------------------------------------------------------------

def side_circuits(side: Side) -> tuple[Circuit, ...]:
    return side if isinstance(side, tuple) else (side,)


def evaluate_side(side: Side) -> EvalResult:
    """Evaluate a circuit, or the sum of several circuits with identical legs."""
    results = [evaluate(c) for c in side_circuits(side)]
    first = results[0]
    total = first.matrix.copy()
    for r in results[1:]:
        if (r.in_wires, r.out_wires) != (first.in_wires, first.out_wires):
            raise ValueError("summed circuits must share input and output wires")
        total = total + r.matrix
    return EvalResult(total, first.in_wires, first.out_wires)


def point_deviation(ident: Identity, lhs: Side, rhs: Side) -> float:
    lw = {c.wires for c in side_circuits(lhs)}
    rw = {c.wires for c in side_circuits(rhs)}
    if len(lw | rw) != 1:
        return math.inf
    a, b = evaluate_side(lhs), evaluate_side(rhs)
    if (a.in_wires, a.out_wires) != (b.in_wires, b.out_wires):
        return math.inf
    if ident.mode == "phase":
        lam = equal_up_to_phase(a.matrix, b.matrix, math.inf)
        return float(np.max(np.abs(a.matrix - lam * b.matrix)))
    return float(np.max(np.abs(a.matrix - b.matrix)))


def verify(identity_id: str, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> VerificationReport:
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    ident = get(identity_id)
    start = time.perf_counter()
    worst = 0.0
    points = param_points(ident, seed)
    for p in points:
        lhs, rhs = ident.lhs(p), ident.rhs(p)
        worst = max(worst, point_deviation(ident, lhs, rhs))
    elapsed = time.perf_counter() - start
    return VerificationReport(ident.id, ident.citation, len(points), worst, worst <= tol, elapsed)


def verify_all(tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED,
               workers: int = 1) -> list[VerificationReport]:
    """One report per identity, in catalog order regardless of ``workers``."""
    ids = [i.id for i in list_identities()]
    if workers <= 1:
        return [verify(i, tol, seed) for i in ids]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: verify(i, tol, seed), ids))
