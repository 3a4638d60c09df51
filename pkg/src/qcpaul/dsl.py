"""Line-oriented text format for circuits.

Example::

    wires: a b
    ket a |0>
    ket b |0>
    H a
    CNOT a -> b

Statements apply in file order, so the first statement acts first.  Beyond
the core grammar the parser accepts a few extensions that the writer needs
to print every circuit the library can build: ``MATk`` for any power of two
``k``, multi-wire ``ket``/``bra`` boxes with an explicit vector, literal
projectors ``proj [[...]] on a b`` and projector controls
``ctrl proj(a b) [[...]]``.
"""

from __future__ import annotations

import ast
import cmath
import math
import re

import numpy as np

from .circuit import (NAMED_STATES, Bra, Circuit, CircuitError, Control, ControlKind,
                      Gate, Ket, Projector, Scalar, named_state, proj_pair, proj_z,
                      proj_zz)


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


# complex expressions ---------------------------------------------------------

_IMAG = re.compile(r"(?<![\w.])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\b")
_NAMES = {"i": 1j, "pi": math.pi}
_FUNCS = {"sqrt": cmath.sqrt, "exp": cmath.exp, "cos": cmath.cos, "sin": cmath.sin}
_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b,
           ast.Pow: lambda a, b: a ** b}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords:
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    if isinstance(node, ast.List):
        return [_eval_node(e) for e in node.elts]
    raise ValueError(f"unsupported expression element {ast.dump(node)[:40]}")


def eval_expr(text: str):
    """Evaluate a complex expression or a (nested) bracketed list of them."""
    src = _IMAG.sub(r"(\1*i)", text.strip())
    try:
        tree = ast.parse(src, mode="eval")
        return _eval_node(tree)
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"bad expression {text.strip()!r}: {exc}") from None


def eval_complex(text: str) -> complex:
    v = eval_expr(text)
    if isinstance(v, list):
        raise ValueError(f"expected a number, got a list: {text.strip()!r}")
    v = complex(v)
    if not cmath.isfinite(v):
        raise ValueError(f"non-finite value {text.strip()!r}")
    return v


def eval_real(text: str) -> float:
    v = eval_complex(text)
    if v.imag != 0:
        raise ValueError(f"expected a real number, got {text.strip()!r}")
    return v.real


def _matrix_literal(text: str, dim: int | None = None) -> np.ndarray:
    v = eval_expr(text)
    try:
        m = np.array(v, dtype=complex)
    except (TypeError, ValueError):
        raise ValueError(f"malformed matrix literal {text.strip()!r}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"matrix literal must be square, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} literal, got {m.shape[0]}x{m.shape[1]}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix literal has non-finite entries")
    return m


def _vector_literal(text: str) -> np.ndarray:
    v = np.array(eval_expr(text), dtype=complex) if text.strip().startswith("[") else None
    if v is None or v.ndim != 1 or v.size == 0:
        raise ValueError(f"malformed vector literal {text.strip()!r}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector literal has non-finite entries")
    return v


# scanning --------------------------------------------------------------------

_LABEL = re.compile(r"(?:(?!->)[^\s()\[\],<>|#])+")
_RESERVED = {"on", "ctrl", "->"}


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def done(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def peek_word(self, w: str) -> bool:
        self.ws()
        m = _LABEL.match(self.text, self.pos)
        return m is not None and m.group(0) == w

    def expect(self, s: str):
        if not self.peek(s):
            raise ValueError(f"expected {s!r} at {self.rest()!r}")
        self.pos += len(s)

    def word(self) -> str:
        self.ws()
        m = _LABEL.match(self.text, self.pos)
        if m is None:
            raise ValueError(f"expected a label at {self.rest()!r}")
        self.pos = m.end()
        return m.group(0)

    def group(self, open_: str, close: str) -> str:
        """Balanced bracketed text including the delimiters."""
        self.ws()
        if not self.text.startswith(open_, self.pos):
            raise ValueError(f"expected {open_!r} at {self.rest()!r}")
        depth, i = 0, self.pos
        while i < len(self.text):
            ch = self.text[i]
            if ch == open_:
                depth += 1
            elif ch == close:
                depth -= 1
                if depth == 0:
                    out = self.text[self.pos:i + 1]
                    self.pos = i + 1
                    return out
            i += 1
        raise ValueError(f"unbalanced {open_!r}")

    def rest(self) -> str:
        return self.text[self.pos:].strip()


def _labels_until(cur: _Cursor, stop=("ctrl",)) -> list[str]:
    out = []
    while not cur.done() and not any(cur.peek_word(s) for s in stop):
        if _LABEL.match(cur.text, cur.pos) is None:
            break
        w = cur.word()
        if w in _RESERVED:
            raise ValueError(f"unexpected {w!r}")
        out.append(w)
    return out


# statements ------------------------------------------------------------------

_KET_NAMES = {f"|{k}>": k for k in NAMED_STATES}
_BRA_NAMES = {f"<{k}|": k for k in NAMED_STATES}


def _parse_controls(cur: _Cursor) -> list[Control]:
    controls = []
    while not cur.done():
        kind = cur.word()
        # one 'ctrl' may introduce several controls: ctrl n(a) n(b)
        if kind == "ctrl":
            kind = cur.word()
        elif not controls:
            raise ValueError(f"expected 'ctrl', got {kind!r}")
        inner = cur.group("(", ")")[1:-1].split()
        if kind in ("n", "nbar"):
            if len(inner) != 1:
                raise ValueError(f"ctrl {kind} takes one wire")
            controls.append(Control(ControlKind(kind), (inner[0],)))
        elif kind == "proj":
            m = _matrix_literal(cur.group("[", "]"), 1 << len(inner))
            controls.append(Control.proj(tuple(inner), m))
        else:
            raise ValueError(f"unknown control kind {kind!r}")
    return controls


def _parse_gate(name: str, cur: _Cursor) -> Gate:
    if name == "CNOT":
        c = cur.word()
        cur.expect("->")
        t = cur.word()
        controls = [Control.n(c)] + _parse_controls(cur)
        return Gate("X", (t,), controls=tuple(controls))
    params: tuple[float, ...] = ()
    if cur.peek("("):
        inner = cur.group("(", ")")[1:-1]
        params = tuple(eval_real(p) for p in inner.split(","))
    matrix = None
    if name.startswith("MAT"):
        try:
            k = int(name[3:])
        except ValueError:
            raise ValueError(f"unknown gate name {name!r}") from None
        if k < 2 or k & (k - 1):
            raise ValueError(f"unknown gate name {name!r}")
        matrix = _matrix_literal(cur.group("[", "]"), k)
        name = "MAT"
    elif name not in ("X", "Y", "Z", "H", "S", "E", "RZ", "ROT"):
        raise ValueError(f"unknown gate name {name!r}")
    if cur.peek_word("on"):
        cur.word()
    targets = _labels_until(cur)
    if not targets:
        raise ValueError("gate needs at least one target")
    return Gate(name, tuple(targets), params, matrix, tuple(_parse_controls(cur)))


def _parse_box(kind: str, cur: _Cursor):
    wires = _labels_until(cur, stop=())
    names = _KET_NAMES if kind == "ket" else _BRA_NAMES
    rest = cur.rest()
    cls = Ket if kind == "ket" else Bra
    if rest in names:
        if len(wires) != 1:
            raise ValueError(f"named {kind} acts on exactly one wire")
        label = names[rest]
        v = named_state(label).reshape(-1)
        return cls((wires[0],), v if kind == "ket" else np.conj(v), label)
    if not rest.startswith("["):
        raise ValueError(f"malformed {kind} state {rest!r}")
    vec = _vector_literal(rest)
    if not wires:
        raise ValueError(f"{kind} needs a wire")
    return cls(tuple(wires), vec)


def _parse_proj(kind: str, cur: _Cursor) -> Projector:
    if kind == "proj":
        lit = cur.group("[", "]")
        if not cur.peek_word("on"):
            raise ValueError("expected 'on'")
        cur.word()
        wires = _labels_until(cur, stop=())
        return Projector(tuple(wires), _matrix_literal(lit, 1 << len(wires)))
    axes = []
    if kind == "projpair":
        axes = [cur.word().upper(), cur.word().upper()]
        if any(a not in ("X", "Y", "Z") for a in axes):
            raise ValueError(f"unknown Pauli axis in {axes}")
    bit = cur.word()
    if bit not in ("0", "1"):
        raise ValueError(f"projector bit must be 0 or 1, got {bit!r}")
    if cur.word() != "on":
        raise ValueError("expected 'on'")
    wires = _labels_until(cur, stop=())
    j = int(bit)
    if kind == "projz":
        if len(wires) != 1:
            raise ValueError("projz acts on one wire")
        return proj_z(j, wires[0])
    if len(wires) != 2:
        raise ValueError(f"{kind} acts on two wires")
    if kind == "projzz":
        return proj_zz(j, *wires)
    return proj_pair(axes[0], axes[1], j, *wires)


def _parse_statement(line: str):
    cur = _Cursor(line)
    m = re.match(r"\s*([A-Za-z][A-Za-z0-9]*)", line)
    if m is None:
        raise ValueError(f"cannot parse statement {line.strip()!r}")
    head = m.group(1)
    cur.pos = m.end()
    if head in ("ket", "bra"):
        return _parse_box(head, cur)
    if head == "scalar":
        return Scalar(eval_complex(cur.rest()))
    if head in ("projz", "projzz", "projpair", "proj"):
        return _parse_proj(head, cur)
    return _parse_gate(head, cur)


def parse(text: str) -> Circuit:
    """Parse DSL text; errors are :class:`ParseError` carrying the line number."""
    wires = None
    elements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if wires is None:
            if not line.startswith("wires:"):
                raise ParseError(lineno, "first statement must be 'wires:'")
            wires = tuple(line[len("wires:"):].split())
            if not wires:
                raise ParseError(lineno, "no wires declared")
            try:
                Circuit(wires)
            except (CircuitError, ValueError) as exc:
                raise ParseError(lineno, str(exc)) from None
            continue
        try:
            el = _parse_statement(line)
            unknown = [w for w in el.wires if w not in wires]
            if unknown:
                raise ValueError(f"unknown wire(s) {', '.join(unknown)}")
            Circuit(wires, tuple(elements) + (el,))
        except (CircuitError, ValueError) as exc:
            raise ParseError(lineno, str(exc)) from None
        elements.append(el)
    if wires is None:
        raise ParseError(1, "missing 'wires:' header")
    return Circuit(wires, tuple(elements))


# writing ---------------------------------------------------------------------

def fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def fmt_matrix(m) -> str:
    m = np.asarray(m)
    return "[" + ", ".join("[" + ", ".join(fmt_complex(z) for z in row) + "]" for row in m) + "]"


def fmt_vector(v) -> str:
    return "[" + ", ".join(fmt_complex(z) for z in np.asarray(v).reshape(-1)) + "]"


def _fmt_control(c: Control) -> str:
    if c.kind is ControlKind.PROJ:
        return f"ctrl proj({' '.join(c.wires)}) {fmt_matrix(c.matrix)}"
    return f"ctrl {c.kind.value}({c.wires[0]})"


def element_text(e) -> str:
    if isinstance(e, Scalar):
        return f"scalar {fmt_complex(e.value)}"
    if isinstance(e, Ket):
        if e.label is not None:
            return f"ket {e.targets[0]} |{e.label}>"
        return f"ket {' '.join(e.targets)} {fmt_vector(e.vector)}"
    if isinstance(e, Bra):
        if e.label is not None:
            return f"bra {e.targets[0]} <{e.label}|"
        return f"bra {' '.join(e.targets)} {fmt_vector(e.vector)}"
    if isinstance(e, Projector):
        kind, ws = e.label[0], " ".join(e.targets)
        if kind == "z":
            return f"projz {e.label[1]} on {ws}"
        if kind == "zz":
            return f"projzz {e.label[1]} on {ws}"
        if kind == "pair":
            return f"projpair {e.label[1]} {e.label[2]} {e.label[3]} on {ws}"
        return f"proj {fmt_matrix(e.matrix)} on {ws}"
    if e.name == "X" and len(e.controls) == 1 and e.controls[0].kind is ControlKind.N:
        return f"CNOT {e.controls[0].wires[0]} -> {e.targets[0]}"
    head = e.name
    if e.params:
        head += "(" + ", ".join(repr(p) for p in e.params) + ")"
    if e.name == "MAT":
        head = f"MAT{e.matrix.shape[0]} {fmt_matrix(e.matrix)} on"
    parts = [head, " ".join(e.targets)] + [_fmt_control(c) for c in e.controls]
    return " ".join(parts)


def to_text(c: Circuit) -> str:
    lines = ["wires: " + " ".join(c.wires)]
    lines += [element_text(e) for e in c.elements]
    return "\n".join(lines) + "\n"
