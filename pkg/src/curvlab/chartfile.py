"""Declarative text files for custom metric charts and second-fundamental-form samples.

Chart file (one ``key = value`` per line, ``#`` starts a comment)::

    name = tilted-3d
    dim = 3
    coords = x, y, z
    signature = 0                  # number of negative directions (optional)
    param a = 0.3
    g[x,x] = 1 + a*x**2
    g[x,y] = 0.1*sin(y)            # also sets g[y,x]; unset components are 0
    range x = -1, 1                # sampling box, default -1, 1
    guard = 2 - x*x                # optional, points need guard > 0

Expressions use ``+ - * / **``, unary minus, numbers, ``pi``, the coordinate
and parameter names, and the functions ``pow exp log sin cos sinh cosh sqrt``.

Sample file for hypersurface data: ``[sample NAME]`` starts a section whose
keys are ``n``, ``eps``, ``ambient_kappa``, ``metric = diag(...)`` and either
``spectrum = 1.5:2, -0.5:2`` (principal curvature:multiplicity) or ``H = row; row; ...``.
"""

from __future__ import annotations

import ast
import math
import operator
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import jet
from .charts import MetricChart

FUNCTIONS = {
    "pow": jet.pow,
    "exp": jet.exp,
    "log": jet.log,
    "sin": jet.sin,
    "cos": jet.cos,
    "sinh": jet.sinh,
    "cosh": jet.cosh,
    "sqrt": jet.sqrt,
}
CONSTANTS = {"pi": math.pi}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


class ChartParseError(ValueError):
    """Syntax or semantic error in a chart or sample file."""

    def __init__(self, message: str, line: int, column: int, source: str = "<chart>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.source = source


@dataclass(frozen=True)
class Expression:
    """A validated arithmetic expression evaluable on floats or jets."""

    text: str
    tree: ast.Expression = field(repr=False)

    def __call__(self, env: dict):
        return _eval(self.tree.body, env)


def _eval(node, env):
    if isinstance(node, ast.Constant):
        return float(node.value)
    if isinstance(node, ast.Name):
        return env[node.id] if node.id in env else CONSTANTS[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.Call):
        return FUNCTIONS[node.func.id](*[_eval(a, env) for a in node.args])
    raise TypeError(type(node).__name__)  # unreachable after validation


def parse_expression(text: str, names, line: int = 1, column: int = 1, source: str = "<chart>") -> Expression:
    """Parse ``text`` and reject anything outside the expression grammar.

    ``column`` is the 1-based column of ``text`` inside its line so reported
    positions refer to the file.
    """

    def fail(msg, node=None):
        col = column + (node.col_offset if node is not None else 0)
        raise ChartParseError(msg, line, col, source)

    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ChartParseError(f"syntax error: {exc.msg}", line, column + max((exc.offset or 1) - 1, 0), source) from None

    allowed = set(names) | set(CONSTANTS)
    for node in ast.walk(tree.body):
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, (int, float)) or isinstance(node.value, bool):
                fail(f"unsupported literal {node.value!r}", node)
        elif isinstance(node, ast.Name):
            if node.id not in allowed and node.id not in FUNCTIONS:
                fail(f"unknown name {node.id!r}", node)
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
                fail("only pow, exp, log, sin, cos, sinh, cosh, sqrt may be called", node)
            if node.keywords:
                fail("keyword arguments are not allowed", node)
            want = 2 if node.func.id == "pow" else 1
            if len(node.args) != want:
                fail(f"{node.func.id} takes {want} argument(s)", node)
        elif isinstance(node, ast.BinOp):
            if type(node.op) not in _BINOPS:
                fail(f"unsupported operator {type(node.op).__name__}", node)
        elif isinstance(node, ast.UnaryOp):
            if not isinstance(node.op, (ast.USub, ast.UAdd)):
                fail(f"unsupported operator {type(node.op).__name__}", node)
        elif not isinstance(node, (ast.Load, ast.operator, ast.unaryop)):
            fail(f"unsupported syntax {type(node).__name__}", node)
    callees = {id(p.func) for p in ast.walk(tree.body) if isinstance(p, ast.Call)}
    for node in ast.walk(tree.body):
        if isinstance(node, ast.Name) and node.id in FUNCTIONS and id(node) not in callees:
            fail(f"function {node.id!r} used as a value", node)
    return Expression(text=text.strip(), tree=tree)


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_COMPONENT = re.compile(r"^g\s*\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]$")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, raw, body


def _split_kv(no, raw, body, source):
    if "=" not in body:
        raise ChartParseError("expected 'key = value'", no, len(body) - len(body.lstrip()) + 1, source)
    key, value = body.split("=", 1)
    col = len(key) + 2 + (len(value) - len(value.lstrip()))
    return key.strip(), value.strip(), col


def _number(text, no, col, source):
    try:
        return float(parse_expression(text, (), no, col, source)({}))
    except ChartParseError:
        raise
    except (ArithmeticError, ValueError) as exc:
        raise ChartParseError(f"invalid number: {exc}", no, col, source) from None


def parse_chart(text: str, source: str = "<chart>") -> MetricChart:
    """Parse chart-file text into a :class:`MetricChart`."""
    header: dict = {}
    params: dict = {}
    comps: dict = {}
    ranges: dict = {}
    guard_src = None
    pending = []  # expressions are validated once coords and params are known

    for no, raw, body in _lines(text):
        key, value, col = _split_kv(no, raw, body, source)
        if key in ("name", "dim", "coords", "signature"):
            header[key] = (value, no, col)
        elif key.startswith("param "):
            pname = key[6:].strip()
            if not re.fullmatch(_NAME, pname) or pname in FUNCTIONS or pname in CONSTANTS:
                raise ChartParseError(f"invalid parameter name {pname!r}", no, 1, source)
            params[pname] = _number(value, no, col, source)
        elif key.startswith("range "):
            cname = key[6:].strip()
            parts = value.split(",")
            if len(parts) != 2:
                raise ChartParseError("range needs 'lo, hi'", no, col, source)
            lo = _number(parts[0], no, col, source)
            hi = _number(parts[1], no, col + len(parts[0]) + 1, source)
            if not lo < hi:
                raise ChartParseError("range needs lo < hi", no, col, source)
            ranges[cname] = (lo, hi, no)
        elif key == "guard":
            guard_src = (value, no, col)
        elif _COMPONENT.match(key):
            i, j = _COMPONENT.match(key).groups()
            pending.append((i, j, value, no, col))
        else:
            raise ChartParseError(f"unknown key {key!r}", no, 1, source)

    if "coords" not in header:
        raise ChartParseError("missing 'coords'", 1, 1, source)
    cval, cno, ccol = header["coords"]
    coords = tuple(c.strip() for c in cval.split(","))
    for c in coords:
        if not re.fullmatch(_NAME, c) or c in FUNCTIONS or c in CONSTANTS or c in params:
            raise ChartParseError(f"invalid coordinate name {c!r}", cno, ccol, source)
    if len(set(coords)) != len(coords):
        raise ChartParseError("duplicate coordinate names", cno, ccol, source)
    n = len(coords)
    if "dim" in header:
        dval, dno, dcol = header["dim"]
        if not dval.isdigit():
            raise ChartParseError(f"dim must be a positive integer, got {dval!r}", dno, dcol, source)
        if dval != str(n):
            raise ChartParseError(f"dim = {dval} but {n} coordinates are listed", dno, dcol, source)
    if n < 3:
        raise ChartParseError("charts need at least 3 coordinates", cno, ccol, source)
    signature = None
    if "signature" in header:
        sval, sno, scol = header["signature"]
        if not sval.isdigit() or int(sval) > n:
            raise ChartParseError("signature must be the number of negative directions (0..dim)", sno, scol, source)
        signature = int(sval)

    names = coords + tuple(params)

    def index(tok, no, col):
        tok = tok.strip()
        if tok in coords:
            return coords.index(tok)
        if tok.isdigit() and int(tok) < n:
            return int(tok)
        raise ChartParseError(f"bad component index {tok!r}", no, col, source)

    table = {}
    for i, j, value, no, col in pending:
        a, b = index(i, no, 1), index(j, no, 1)
        key = (min(a, b), max(a, b))
        if key in table:
            raise ChartParseError(f"component g[{i},{j}] defined twice", no, 1, source)
        table[key] = parse_expression(value, names, no, col, source)
    comps = table
    if not comps:
        raise ChartParseError("no metric components given", cno, 1, source)
    for cname, (_, _, no) in ranges.items():
        if cname not in coords:
            raise ChartParseError(f"range for unknown coordinate {cname!r}", no, 1, source)
    guard = None
    if guard_src is not None:
        gexpr = parse_expression(guard_src[0], names, guard_src[1], guard_src[2], source)

        def guard(x, _e=gexpr):
            env = dict(params)
            env.update(zip(coords, (float(v) for v in x)))
            try:
                return float(_e(env)) > 0
            except (ArithmeticError, ValueError):
                return False

    def metric_fn(x):
        env = dict(params)
        env.update(zip(coords, x))
        out = [[0.0] * n for _ in range(n)]
        for (a, b), e in comps.items():
            out[a][b] = out[b][a] = e(env)
        return out

    box = tuple(ranges[c][:2] if c in ranges else (-1.0, 1.0) for c in coords)
    name = header["name"][0] if "name" in header else Path(source).stem
    return MetricChart(
        name=name,
        coords=coords,
        metric_fn=metric_fn,
        box=box,
        params=dict(params),
        guard=guard,
        tags=frozenset({"custom"}),
        signature=signature,
    )


def load_chart(path) -> MetricChart:
    path = Path(path)
    return parse_chart(path.read_text(encoding="utf-8"), source=str(path))


# -- hypersurface samples ---------------------------------------------------

@dataclass(frozen=True)
class HSample:
    """Pointwise hypersurface data as read from a sample file."""

    name: str
    g: np.ndarray
    H: np.ndarray
    eps: int = 1
    ambient_kappa: float = 0.0


def _diag_values(value, no, col, source):
    m = re.fullmatch(r"diag\((.*)\)", value.replace(" ", ""))
    if not m:
        raise ChartParseError("expected diag(v1, v2, ...)", no, col, source)
    return [_number(t, no, col, source) for t in m.group(1).split(",")]


def parse_samples(text: str, source: str = "<samples>") -> list:
    """Parse a sample file into a list of :class:`HSample`."""
    sections = []
    current = None
    for no, raw, body in _lines(text):
        stripped = body.strip()
        m = re.fullmatch(r"\[\s*sample\s+([^\]]+?)\s*\]", stripped)
        if m:
            current = {"name": m.group(1), "line": no}
            sections.append(current)
            continue
        if stripped.startswith("["):
            raise ChartParseError("expected '[sample NAME]'", no, 1, source)
        if current is None:
            raise ChartParseError("entry outside a [sample ...] section", no, 1, source)
        key, value, col = _split_kv(no, raw, body, source)
        if key in current:
            raise ChartParseError(f"duplicate key {key!r}", no, 1, source)
        if key not in ("n", "eps", "ambient_kappa", "metric", "spectrum", "H"):
            raise ChartParseError(f"unknown key {key!r}", no, 1, source)
        current[key] = (value, no, col)

    out = []
    for sec in sections:
        line = sec["line"]
        if ("spectrum" in sec) == ("H" in sec):
            raise ChartParseError("give exactly one of 'spectrum' or 'H'", line, 1, source)
        if "spectrum" in sec:
            value, no, col = sec["spectrum"]
            diag = []
            for item in value.split(","):
                val, _, mult = item.partition(":")
                k = int(_number(mult, no, col, source)) if mult.strip() else 1
                if k < 1:
                    raise ChartParseError("multiplicity must be >= 1", no, col, source)
                diag += [_number(val, no, col, source)] * k
            H = None
        else:
            value, no, col = sec["H"]
            rows = [[_number(t, no, col, source) for t in r.replace(",", " ").split()] for r in value.split(";")]
            if len({len(r) for r in rows}) != 1 or len(rows) != len(rows[0]):
                raise ChartParseError("H must be a square matrix", no, col, source)
            H = np.array(rows)
            if np.max(np.abs(H - H.T)) > 1e-12 * (1 + np.max(np.abs(H))):
                raise ChartParseError("H must be symmetric", no, col, source)
        n = len(diag) if H is None else H.shape[0]
        if "n" in sec:
            value, no, col = sec["n"]
            if int(_number(value, no, col, source)) != n:
                raise ChartParseError(f"n = {value} but H is {n}x{n}", no, col, source)
        if "metric" in sec:
            value, no, col = sec["metric"]
            gd = _diag_values(value, no, col, source)
            if len(gd) != n or any(abs(v) != 1 for v in gd):
                raise ChartParseError("metric must be diag(+-1, ...) of matching size", no, col, source)
            g = np.diag(gd)
        else:
            g = np.eye(n)
        if H is None:
            # principal curvatures: eigenvalues of the shape operator g^{-1} H
            H = g @ np.diag(diag)
        eps = 1
        if "eps" in sec:
            value, no, col = sec["eps"]
            eps = int(_number(value, no, col, source))
            if eps not in (1, -1):
                raise ChartParseError("eps must be +1 or -1", no, col, source)
        kt = 0.0
        if "ambient_kappa" in sec:
            kt = _number(*sec["ambient_kappa"], source)
        out.append(HSample(name=sec["name"], g=g, H=H, eps=eps, ambient_kappa=kt))
    if not out:
        raise ChartParseError("no [sample ...] sections found", 1, 1, source)
    return out


def load_samples(path) -> list:
    path = Path(path)
    return parse_samples(path.read_text(encoding="utf-8"), source=str(path))
