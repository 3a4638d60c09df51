"""Directed rewrite rules: permutation wakes, decompositions, control lowering
and measurement conversions.

A rule matches a window of consecutive elements and replaces it with an
equivalent sequence.  Permutation rules have a registered inverse with the
``-inv`` suffix that matches the right-hand side and restores the
left-hand side.  Every replacement preserves :func:`qcpaul.circuit.evaluate`
exactly, scalar factors included.

Some conversions need a spare wire.  ``lower-n3-cnot`` borrows any declared
wire that is live at the site (its state is restored).  The measurement
conversions that introduce ``|0>...<j|`` on an ancilla need a *parked*
ancilla: a declared wire whose only elements are ``|0>`` and ``<0|``.  That
pair is consumed by the rewrite, so the wire declaration never changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from . import gates
from .circuit import (Bra, Circuit, CircuitError, Control, ControlKind, Element, Gate, Ket,
                      Projector, Scalar, bra, cnot, ctrl_matrix, gate, ket, mat, phase_on,
                      product_control, proj_z, proj_zz, scalar)
from .tensor import DEFAULT_TOL, dagger, identity

SQRT2 = math.sqrt(2.0)


class RewriteError(ValueError):
    """A rule or site cannot be applied to the given circuit."""


@dataclass(frozen=True)
class Context:
    circuit: Circuit
    start: int
    window: tuple[Element, ...]
    tol: float = DEFAULT_TOL


@dataclass(frozen=True)
class RewriteRule:
    """``matcher`` returns bound parameters or ``None``; ``producer`` builds the replacement.

    A producer may name extra element indices to remove via ``params["drop"]``.
    """

    id: str
    arity: int
    summary: str
    matcher: Callable[[Context], dict | None]
    producer: Callable[[Mapping, Context], list[Element]]


@dataclass(frozen=True)
class Site:
    rule_id: str
    start: int
    window: tuple[Element, ...]
    params: Mapping = field(default_factory=dict, compare=False)
    fingerprint: int = field(default=0, compare=False)

    def with_params(self, **updates) -> Site:
        return replace(self, params={**self.params, **updates})


_RULES: dict[str, RewriteRule] = {}


def _register(rule: RewriteRule) -> RewriteRule:
    if rule.id in _RULES:
        raise ValueError(f"duplicate rule id {rule.id!r}")
    _RULES[rule.id] = rule
    return rule


def list_rules() -> tuple[RewriteRule, ...]:
    return tuple(_RULES.values())


def get_rule(rule_id: str) -> RewriteRule:
    try:
        return _RULES[rule_id]
    except KeyError:
        raise RewriteError(f"unknown rule {rule_id!r}") from None


def _fingerprint(c: Circuit) -> int:
    return hash((c.wires, c.elements))


# element predicates ----------------------------------------------------------------

def _cnot_wires(e) -> tuple[str, str] | None:
    """``(control, target)`` if ``e`` is a plain CNOT."""
    if (isinstance(e, Gate) and e.name == "X" and len(e.controls) == 1
            and e.controls[0].kind is ControlKind.N):
        return e.controls[0].wires[0], e.targets[0]
    return None


def _single_target(e) -> bool:
    return isinstance(e, Gate) and len(e.targets) == 1


def _uncontrolled(e, name: str) -> bool:
    return isinstance(e, Gate) and e.name == name and not e.controls


def _close(a, b, tol) -> bool:
    if a is None or b is None:
        return a is b
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


def _same_controls(x, y, tol) -> bool:
    return len(x) == len(y) and all(
        p.kind is q.kind and p.wires == q.wires and _close(p.matrix, q.matrix, tol)
        for p, q in zip(x, y))


def same_element(x: Element, y: Element, tol: float = DEFAULT_TOL) -> bool:
    """Structural equality with numeric payloads compared within ``tol``."""
    if type(x) is not type(y):
        return False
    if isinstance(x, Gate):
        return (x.name == y.name and x.targets == y.targets
                and _close(x.params, y.params, tol) and _close(x.matrix, y.matrix, tol)
                and _same_controls(x.controls, y.controls, tol))
    if isinstance(x, Projector):
        return x.targets == y.targets and _close(x.matrix, y.matrix, tol)
    if isinstance(x, (Ket, Bra)):
        return x.targets == y.targets and _close(x.vector, y.vector, tol)
    if isinstance(x, Scalar):
        return abs(x.value - y.value) <= tol
    return x == y


def _commute(first, second, tol) -> bool:
    wires: list[str] = []
    for ctl in list(first) + list(second):
        for w in ctl.wires:
            if w not in wires:
                wires.append(w)
    p1, p2 = ctrl_matrix(first, wires), ctrl_matrix(second, wires)
    return float(np.max(np.abs(p1 @ p2 - p2 @ p1))) <= tol


def _controls_avoid(e: Gate, wires) -> bool:
    return not set(e.control_wires) & set(wires)


def _union_wires(*control_lists) -> tuple[str, ...]:
    out: list[str] = []
    for cl in control_lists:
        for ctl in cl:
            for w in ctl.wires:
                if w not in out:
                    out.append(w)
    return tuple(out)


# permutation rules --------------------------------------------------------------------

def _permutation(rule_id, arity_out, summary, match, produce, preimage):
    """Register a permutation rule and its ``-inv`` counterpart."""
    fwd = _register(RewriteRule(rule_id, 2, summary, match, produce))

    def inv_match(ctx: Context):
        pre = preimage(ctx.window)
        if pre is None:
            return None
        sub = replace(ctx, window=tuple(pre))
        p = fwd.matcher(sub)
        if p is None:
            return None
        out = fwd.producer(p, sub)
        if len(out) != len(ctx.window):
            return None
        if not all(same_element(a, b, ctx.tol) for a, b in zip(out, ctx.window)):
            return None
        return {"lhs": tuple(pre)}

    _register(RewriteRule(f"{rule_id}-inv", arity_out, f"inverse of {rule_id}", inv_match,
                          lambda p, ctx: list(p["lhs"])))


def _swap2(w):
    return (w[1], w[0])


def _chain_match(ctx):
    g1, g2 = (_cnot_wires(e) for e in ctx.window)
    if g1 is None or g2 is None:
        return None
    (gamma, beta), (beta2, alpha) = g1, g2
    if beta != beta2 or alpha == gamma:
        return None
    return {"alpha": alpha, "beta": beta, "gamma": gamma}


_permutation(
    "wake-chain", 3, "CNOT(γ→β) then CNOT(β→α): swap them and emit the wake CNOT(γ→α) after",
    _chain_match,
    lambda p, ctx: [cnot(p["beta"], p["alpha"]), cnot(p["gamma"], p["beta"]),
                    cnot(p["gamma"], p["alpha"])],
    _swap2,
)

_permutation(
    "wake-chain-alt", 3, "CNOT(γ→β) then CNOT(β→α): swap them and emit the wake CNOT(γ→α) before",
    _chain_match,
    lambda p, ctx: [cnot(p["gamma"], p["alpha"]), cnot(p["beta"], p["alpha"]),
                    cnot(p["gamma"], p["beta"])],
    lambda w: (w[2], w[1]) if len(w) == 3 else None,
)


def _loop_match(ctx):
    g1, g2 = (_cnot_wires(e) for e in ctx.window)
    if g1 is None or g2 is None or g1 != g2[::-1]:
        return None
    return {"a": g1[0], "b": g1[1]}


_permutation(
    "wake-loop", 4, "CNOT(a→b) then CNOT(b→a): swap them and emit the closing wake",
    _loop_match,
    lambda p, ctx: [cnot(p["b"], p["a"]), cnot(p["a"], p["b"]), cnot(p["b"], p["a"]),
                    cnot(p["a"], p["b"])],
    _swap2,
)


def _sigz_match(ctx):
    z, cx = ctx.window
    wires = _cnot_wires(cx)
    if wires is None or not _uncontrolled(z, "Z") or z.targets[0] != wires[1]:
        return None
    return {"a": wires[0], "b": wires[1]}


_permutation(
    "wake-sigz", 3, "σz(b) then CNOT(a→b): swap them and emit the wake σz(a)",
    _sigz_match,
    lambda p, ctx: [cnot(p["a"], p["b"]), gate("Z", p["b"]), gate("Z", p["a"])],
    _swap2,
)


def _perm_match(ctx):
    g2, g1 = ctx.window
    if not (_single_target(g1) and _single_target(g2)) or g1.targets != g2.targets:
        return None
    if not g1.controls or not g2.controls:
        return None
    if not _commute(g1.controls, g2.controls, ctx.tol):
        return None
    return {"first": g2, "second": g1}


def _perm_produce(p, ctx):
    g2, g1 = p["first"], p["second"]
    u1, u2 = g1.payload(), g2.payload()
    wake = u1 @ u2 @ dagger(u1) @ dagger(u2)
    return [g1, g2, mat(wake, *g1.targets, ctrl=(product_control(g1.controls, g2.controls),))]


_permutation(
    "perm-two-ctrl-u", 3,
    "U2^{π2} then U1^{π1} on one wire with commuting π's: swap them and emit (U1U2U1†U2†)^{π1π2}",
    _perm_match, _perm_produce, _swap2,
)


def _times_dot_match(ctx):
    u, x = ctx.window
    if not _single_target(u) or len(u.controls) != 1 or u.controls[0].kind is not ControlKind.N:
        return None
    c, d = u.controls[0].wires[0], u.targets[0]
    if not isinstance(x, Gate) or x.name != "X":
        return None
    if x.targets != (c,) or not x.controls or not _controls_avoid(x, (d,)):
        return None
    return {"u": u, "x": x}


def _times_dot_produce(p, ctx):
    u, x = p["u"], p["x"]
    u_m2 = np.linalg.matrix_power(dagger(u.payload()), 2)
    return [x, u, u.with_controls(x.controls),
            mat(u_m2, *u.targets, ctrl=x.controls + u.controls)]


_permutation(
    "wake-times-dot", 4, "U(d)^{n(c)} then X(c)^π: swap them and emit U^π (U†²)^{π n(c)}",
    _times_dot_match, _times_dot_produce, _swap2,
)


def _chain_gen_match(ctx):
    z, x = ctx.window
    if not (isinstance(z, Gate) and isinstance(x, Gate)):
        return None
    if z.name != "Z" or x.name != "X" or z.params or x.params:
        return None
    if z.targets != x.targets or not z.controls or not x.controls:
        return None
    if not _commute(x.controls, z.controls, ctx.tol):
        return None
    return {"z": z, "x": x}


def _chain_gen_produce(p, ctx):
    z, x = p["z"], p["x"]
    wires = _union_wires(x.controls, z.controls)
    sign = identity(1 << len(wires)) - 2 * ctrl_matrix(x.controls, wires) @ ctrl_matrix(z.controls, wires)
    return [x, z, mat(sign, *wires)]


_permutation(
    "wake-chain-gen", 3, "σz(c)^{π2} then X(c)^{π1}: swap them and emit the sign (-1)^{π1π2}",
    _chain_gen_match, _chain_gen_produce, _swap2,
)


def _theta_match(ctx):
    r, x = ctx.window
    if not _uncontrolled(r, "RZ") or not isinstance(x, Gate) or x.name != "X":
        return None
    if x.targets != r.targets or not x.controls:
        return None
    return {"theta": r.params[0], "x": x}


_permutation(
    "wake-theta", 3, "e^{iθσz} then X^π on one wire: swap them and emit (e^{-2iθσz})^π",
    _theta_match,
    lambda p, ctx: [p["x"], gate("RZ", *p["x"].targets, params=(p["theta"],)),
                    gate("RZ", *p["x"].targets, params=(-2 * p["theta"],), ctrl=p["x"].controls)],
    _swap2,
)


# decompositions and control lowering ------------------------------------------------

def controlled_u_sequence(u: np.ndarray, target: str, controls) -> list[Gate]:
    """``U^π`` as seven boxes, chronological: V†, X^π, e^{-iΔσz/2}, X^π, e^{iΔσz/2}, V, e^{iθ̄π}."""
    dz = gates.diagonalize_2x2_unitary(u)
    return [
        mat(dagger(dz.v), target),
        gate("X", target, ctrl=controls),
        gate("RZ", target, params=(-dz.delta / 2,)),
        gate("X", target, ctrl=controls),
        gate("RZ", target, params=(dz.delta / 2,)),
        mat(dz.v, target),
        phase_on(dz.theta_bar, controls),
    ]


def _decompose_match(ctx):
    (g,) = ctx.window
    if not _single_target(g) or not g.controls:
        return None
    return {}


_register(RewriteRule(
    "decompose-controlled-u", 1,
    "U^π on one wire as V, two X^π, two σz rotations and a phase box e^{iθ̄π}",
    _decompose_match,
    lambda p, ctx: controlled_u_sequence(ctx.window[0].payload(), ctx.window[0].targets[0],
                                         ctx.window[0].controls),
))


def sqrt_sequence(u: np.ndarray, target: str, outer, dot: str) -> list[Gate]:
    """``U^{π n(dot)}`` from ``U^{±1/2}`` boxes and two ``X(dot)^π``, chronological."""
    half = gates.sqrt_unitary(u)
    return [mat(half, target, ctrl=(Control.n(dot),)), gate("X", dot, ctrl=outer),
            mat(dagger(half), target, ctrl=(Control.n(dot),)), gate("X", dot, ctrl=outer),
            mat(half, target, ctrl=outer)]


def _reduce_match(ctx):
    (g,) = ctx.window
    if not _single_target(g) or len(g.controls) < 2:
        return None
    dots = [k for k, ctl in enumerate(g.controls) if ctl.kind is ControlKind.N]
    if not dots:
        return None
    return {"dot": dots[-1]}


def _reduce_produce(p, ctx):
    (g,) = ctx.window
    k = p["dot"]
    outer = g.controls[:k] + g.controls[k + 1:]
    return sqrt_sequence(g.payload(), g.targets[0], outer, g.controls[k].wires[0])


_register(RewriteRule(
    "reduce-control", 1,
    "U^{π n(β)} from n(β)-controlled U^{±1/2} and two X(β)^π",
    _reduce_match, _reduce_produce,
))


def _is_cnot_like(g: Gate) -> bool:
    return g.name == "X" and len(g.controls) == 1 and g.controls[0].kind is ControlKind.N


def lower_to_cnots(c: Circuit, tol: float = DEFAULT_TOL) -> Circuit:
    """Rewrite gates whose controls are all n-dots into CNOTs and one-wire boxes.

    ``reduce-control`` peels dots until one is left, then
    ``decompose-controlled-u`` removes it.  Gates with other control kinds are
    left as they are.
    """
    def lowerable(g) -> bool:
        return (isinstance(g, Gate) and _single_target(g) and bool(g.controls)
                and all(ctl.kind is ControlKind.N for ctl in g.controls)
                and not _is_cnot_like(g))

    while True:
        k = next((k for k, e in enumerate(c.elements) if lowerable(e)), None)
        if k is None:
            return c
        rule = "reduce-control" if len(c.elements[k].controls) >= 2 else "decompose-controlled-u"
        c = apply(c, site_at(c, rule, k, tol), tol)


# nearest-neighbor CNOTs -------------------------------------------------------------

def nearest_neighbor_cnots(control: str, target: str, order: Sequence[str]) -> list[Gate]:
    """CNOT(control→target) using only CNOTs between adjacent wires of ``order``.

    Distance 2 and 3 use the drawn 4- and 8-CNOT ladders.  Longer distances
    bridge through the wire next to the target and recurse, giving
    ``2 + 2 T(d-1)`` CNOTs.
    """
    i, j = order.index(control), order.index(target)
    step = 1 if j > i else -1
    path = list(order[i:j + step:step]) if step == 1 else list(order[j:i + 1])[::-1]
    d = len(path) - 1
    if d <= 1:
        return [cnot(control, target)]
    if d == 2:
        a, b, c = path
        return [cnot(b, c), cnot(a, b), cnot(b, c), cnot(a, b)]
    if d == 3:
        a, b, c, dd = path
        drawn = [(a, b), (b, c), (c, dd), (b, c), (a, b), (b, c), (c, dd), (b, c)]
        return [cnot(x, y) for x, y in reversed(drawn)]
    bridge = path[-2]
    inner = nearest_neighbor_cnots(control, bridge, order)
    return [cnot(bridge, target)] + inner + [cnot(bridge, target)] + inner


def _distance(c: Circuit, e) -> int:
    w = _cnot_wires(e)
    if w is None:
        return 0
    return abs(c.wires.index(w[0]) - c.wires.index(w[1]))


_register(RewriteRule(
    "nearest-neighbor", 1, "a CNOT spanning d ≥ 2 wires as nearest-neighbor CNOTs",
    lambda ctx: {} if _distance(ctx.circuit, ctx.window[0]) >= 2 else None,
    lambda p, ctx: nearest_neighbor_cnots(*_cnot_wires(ctx.window[0]), ctx.circuit.wires),
))


def nearest_neighborize(c: Circuit) -> Circuit:
    """Replace every CNOT spanning two or more wires (declaration order) by adjacent CNOTs."""
    out: list[Element] = []
    for e in c.elements:
        if _distance(c, e) >= 2:
            out.extend(nearest_neighbor_cnots(*_cnot_wires(e), c.wires))
        else:
            out.append(e)
    return c.with_elements(out)


# n³-controlled NOT -------------------------------------------------------------------

def _live_wires(c: Circuit, start: int, exclude) -> list[str]:
    """Declared wires usable as a borrowed ancilla at element ``start``."""
    closed = {w for e in c.elements[:start] if isinstance(e, Bra) for w in e.targets}
    opened_later = {w for e in c.elements[start + 1:] if isinstance(e, Ket) for w in e.targets}
    return [w for w in c.wires if w not in exclude and w not in closed and w not in opened_later]


def _n3_match(ctx):
    (g,) = ctx.window
    if not _is_n3_not(g):
        return None
    spare = _live_wires(ctx.circuit, ctx.start, g.wires)
    if not spare:
        return None
    return {"ancilla": spare[0]}


def _n3_produce(p, ctx):
    (g,) = ctx.window
    anc = p["ancilla"]
    a, b, c = (ctl.wires[0] for ctl in g.controls)
    t = g.targets[0]
    if anc in g.wires:
        raise RewriteError(f"ancilla {anc!r} is used by the gate")
    first = gate("X", t, ctrl=(Control.n(a), Control.n(anc)))
    second = gate("X", anc, ctrl=(Control.n(b), Control.n(c)))
    return [first, second, first, second]


_register(RewriteRule(
    "lower-n3-cnot", 1, "n³-controlled NOT as four n²-controlled NOTs through a borrowed wire",
    _n3_match, _n3_produce,
))


# measurement conversions ------------------------------------------------------------

def _basis_bit(vec, tol) -> int | None:
    v = np.asarray(vec).reshape(-1)
    for j in (0, 1):
        if v.shape == (2,) and _close(v, gates.ket(j).reshape(-1), tol):
            return j
    return None


def _z_projector_bit(e, tol) -> int | None:
    if not isinstance(e, Projector) or len(e.targets) != 1:
        return None
    for j in (0, 1):
        if _close(e.matrix, proj_z(j, e.targets[0]).matrix, tol):
            return j
    return None


def _zz_projector_bit(e, tol) -> int | None:
    if not isinstance(e, Projector) or len(e.targets) != 2:
        return None
    for j in (0, 1):
        if _close(e.matrix, gates.pi_pair("Z", "Z", j), tol):
            return j
    return None


def _parked(c: Circuit, exclude) -> dict | None:
    """First wire whose only elements are ``|0>`` and ``<0|``, with their indices."""
    for w in c.wires:
        if w in exclude:
            continue
        idx = [k for k, e in enumerate(c.elements) if w in e.wires]
        if len(idx) != 2:
            continue
        k0, k1 = (c.elements[k] for k in idx)
        if (isinstance(k0, Ket) and isinstance(k1, Bra) and k0.targets == (w,)
                and k1.targets == (w,) and _basis_bit(k0.vector, 1e-12) == 0
                and _basis_bit(k1.vector, 1e-12) == 0):
            return {"ancilla": w, "drop": tuple(idx)}
    return None


def _bit(p, name) -> int:
    v = p[name]
    if v not in (0, 1):
        raise RewriteError(f"{name} must be a bit, got {v!r}")
    return int(v)


def _internal_match(ctx):
    (e,) = ctx.window
    j = _z_projector_bit(e, ctx.tol)
    if j is None:
        return None
    park = _parked(ctx.circuit, e.wires)
    return None if park is None else {"j": j, **park}


_register(RewriteRule(
    "meas-internal-to-final", 1,
    "|j><j| on β as CNOT(β→α) from |0> into a parked ancilla α closed by <j|",
    _internal_match,
    lambda p, ctx: [ket(p["ancilla"], 0), cnot(ctx.window[0].targets[0], p["ancilla"]),
                    bra(p["ancilla"], _bit(p, "j"))],
))


def _internal_inv_match(ctx):
    k0, cx, b = ctx.window
    wires = _cnot_wires(cx)
    if wires is None or not isinstance(k0, Ket) or not isinstance(b, Bra):
        return None
    beta, alpha = wires
    if k0.targets != (alpha,) or b.targets != (alpha,) or _basis_bit(k0.vector, ctx.tol) != 0:
        return None
    j = _basis_bit(np.conj(b.vector), ctx.tol)
    return None if j is None else {"j": j, "alpha": alpha, "beta": beta}


_register(RewriteRule(
    "meas-internal-to-final-inv", 3, "inverse of meas-internal-to-final; re-parks the ancilla",
    _internal_inv_match,
    lambda p, ctx: [proj_z(p["j"], p["beta"]), ket(p["alpha"], 0), bra(p["alpha"], 0)],
))


def _bibit_match(ctx):
    (e,) = ctx.window
    j = _zz_projector_bit(e, ctx.tol)
    return None if j is None else {"j": j}


_register(RewriteRule(
    "meas-bibit-to-2cnots", 1, "Π^j_ZZ(a,b) as CNOT(a→b) |j><j|(b) CNOT(a→b)",
    _bibit_match,
    lambda p, ctx: [cnot(*ctx.window[0].targets), proj_z(p["j"], ctx.window[0].targets[1]),
                    cnot(*ctx.window[0].targets)],
))


def _bibit_inv_match(ctx):
    c1, pz, c2 = ctx.window
    w1, w2 = _cnot_wires(c1), _cnot_wires(c2)
    if w1 is None or w1 != w2:
        return None
    j = _z_projector_bit(pz, ctx.tol)
    if j is None or pz.targets != (w1[1],):
        return None
    return {"j": j, "a": w1[0], "b": w1[1]}


_register(RewriteRule(
    "meas-bibit-to-2cnots-inv", 3, "inverse of meas-bibit-to-2cnots",
    _bibit_inv_match,
    lambda p, ctx: [proj_zz(p["j"], p["a"], p["b"])],
))


def _cnot_2meas_match(ctx):
    (e,) = ctx.window
    wires = _cnot_wires(e)
    if wires is None:
        return None
    park = _parked(ctx.circuit, wires)
    return None if park is None else {"j1": 0, "j2": 0, "k": 0, **park}


def _cnot_2meas_produce(p, ctx):
    a, c = _cnot_wires(ctx.window[0])
    b = p["ancilla"]
    j1, j2, k = _bit(p, "j1"), _bit(p, "j2"), _bit(p, "k")
    flip = (k + j1) % 2
    out = [ket(b, 0), gate("H", b), proj_zz(j1, a, b), gate("H", b), gate("H", c),
           proj_zz(j2, b, c), gate("H", b), gate("H", c)]
    if j2:
        out.append(gate("Z", a))
    if flip:
        out.append(gate("X", c))
    out += [bra(b, k), scalar((-1) ** (flip * j2) * 2 * SQRT2)]
    return out


_register(RewriteRule(
    "meas-cnot-to-2meas", 1,
    "CNOT(a→c) as two bi-bit measurements through a parked ancilla, times (-1)^{(k+j1)j2} 2√2",
    _cnot_2meas_match, _cnot_2meas_produce,
))


def _cnot_1meas_match(ctx):
    k0, cx = ctx.window
    wires = _cnot_wires(cx)
    if wires is None or not isinstance(k0, Ket) or k0.targets != (wires[1],):
        return None
    j = _basis_bit(k0.vector, ctx.tol)
    return None if j is None else {"j": j, "k": 0}


def _cnot_1meas_produce(p, ctx):
    a, b = _cnot_wires(ctx.window[1])
    j, k = _bit(p, "j"), _bit(p, "k")
    out = [ket(b, k), gate("H", b), proj_zz(j, a, b)]
    if k:
        out.append(gate("Z", a))
    out.append(scalar((-1) ** (j * k) * SQRT2))
    return out


_register(RewriteRule(
    "meas-cnot-to-1meas", 2, "|j>(b) then CNOT(a→b) as one bi-bit measurement, times (-1)^{jk} √2",
    _cnot_1meas_match, _cnot_1meas_produce,
))


# engine ---------------------------------------------------------------------------------

def _context(c: Circuit, rule: RewriteRule, start: int, tol: float) -> Context | None:
    if start < 0 or start + rule.arity > len(c.elements):
        return None
    return Context(c, start, tuple(c.elements[start:start + rule.arity]), tol)


def find_sites(c: Circuit, rule_id: str, tol: float = DEFAULT_TOL) -> list[Site]:
    """Every position where ``rule_id`` matches, in ascending order."""
    rule = get_rule(rule_id)
    fp = _fingerprint(c)
    sites = []
    for start in range(len(c.elements) - rule.arity + 1):
        ctx = _context(c, rule, start, tol)
        p = rule.matcher(ctx)
        if p is not None:
            sites.append(Site(rule.id, start, ctx.window, p, fp))
    return sites


def site_at(c: Circuit, rule_id: str, index: int, tol: float = DEFAULT_TOL) -> Site:
    for s in find_sites(c, rule_id, tol):
        if s.start == index:
            return s
    raise RewriteError(f"rule {rule_id!r} does not match at element {index}")


def apply(c: Circuit, site: Site, tol: float = DEFAULT_TOL) -> Circuit:
    """Replace the window of ``site`` by the rule's right-hand side."""
    rule = get_rule(site.rule_id)
    if site.fingerprint != _fingerprint(c):
        raise RewriteError("stale site: the circuit changed since the site was found")
    ctx = _context(c, rule, site.start, tol)
    if ctx is None or ctx.window != site.window or rule.matcher(ctx) is None:
        raise RewriteError(f"invalid window for rule {rule.id!r} at element {site.start}")
    new = list(rule.producer(site.params, ctx))
    drop = set(site.params.get("drop", ()))
    if drop & set(range(site.start, site.start + rule.arity)):
        raise RewriteError("dropped elements overlap the window")
    els: list[Element] = []
    for k, e in enumerate(c.elements):
        if k == site.start:
            els.extend(new)
        if site.start <= k < site.start + rule.arity or k in drop:
            continue
        els.append(e)
    try:
        return c.with_elements(els)
    except CircuitError as exc:
        raise RewriteError(f"rewrite produced an invalid circuit: {exc}") from None


def _resolve(c: Circuit, rule_id: str, site: Site | int) -> Site:
    if isinstance(site, Site):
        if site.rule_id != rule_id:
            raise RewriteError(f"site belongs to rule {site.rule_id!r}, not {rule_id!r}")
        return site
    return site_at(c, rule_id, site)


def decompose_controlled_u(c: Circuit, site: Site | int) -> Circuit:
    return apply(c, _resolve(c, "decompose-controlled-u", site))


def reduce_control(c: Circuit, site: Site | int) -> Circuit:
    return apply(c, _resolve(c, "reduce-control", site))


def _is_n3_not(e) -> bool:
    return (isinstance(e, Gate) and e.name == "X" and len(e.controls) == 3
            and all(ctl.kind is ControlKind.N for ctl in e.controls))


def lower_n3_cnot(c: Circuit, site: Site | int, ancilla: str | None = None) -> Circuit:
    """Lower an n³-controlled NOT; ``ancilla`` overrides the automatic choice."""
    if isinstance(site, int):
        found = [s for s in find_sites(c, "lower-n3-cnot") if s.start == site]
        if not found:
            if 0 <= site < len(c.elements) and _is_n3_not(c.elements[site]):
                raise RewriteError("no ancilla available for lowering the n³-controlled NOT")
            raise RewriteError(f"element {site} is not an n³-controlled NOT")
        site = found[0]
    s = _resolve(c, "lower-n3-cnot", site)
    if ancilla is not None:
        if ancilla not in _live_wires(c, s.start, s.window[0].wires):
            raise RewriteError(f"wire {ancilla!r} is not available as an ancilla")
        s = s.with_params(ancilla=ancilla)
    return apply(c, s)


MEASUREMENT_RULES = ("meas-internal-to-final", "meas-internal-to-final-inv",
                     "meas-bibit-to-2cnots", "meas-bibit-to-2cnots-inv",
                     "meas-cnot-to-2meas", "meas-cnot-to-1meas")


def convert_measurement(c: Circuit, site: Site | int, direction: str, **outcomes) -> Circuit:
    """Apply one of :data:`MEASUREMENT_RULES`; ``outcomes`` sets free bits such as ``k``."""
    if direction not in MEASUREMENT_RULES:
        raise RewriteError(f"unknown measurement conversion {direction!r}")
    s = _resolve(c, direction, site)
    if outcomes:
        s = s.with_params(**outcomes)
    return apply(c, s)
