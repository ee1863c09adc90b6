"""Expression trees for continuous functions on subsets of R^N.

Expressions are immutable and evaluate pointwise, vectorized over an array
of points of shape ``(m, N)``.  Partial operations (square root, coercive
inverse, the lattice operations on complex values) check their domain at
every point and raise :class:`DomainViolation` rather than produce NaNs.

The S-expression text form is e.g. ``(abs (sub (pr 1) (const 2 0)))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from numbers import Number

import numpy as np

__all__ = [
    "FunctionExpr",
    "DomainViolation",
    "SQRT_CLAMP",
    "pr",
    "const",
    "sqrt_pos",
    "absval",
    "pos_part",
    "neg_part",
    "max2",
    "min2",
    "coercive_inverse",
    "gamma_rho",
    "compose_1d",
    "gamma_rho_eval",
    "eval_expr",
    "parse_sexpr",
    "poly_to_expr",
]

SQRT_CLAMP = 1e-12
# Imaginary parts below this (relative) size count as round-off.
REAL_TOL = 1e-12


class DomainViolation(ValueError):
    """A partial operation was applied outside its domain."""

    def __init__(self, message, point=None, subexpr=None, value=None):
        self.point = point
        self.subexpr = subexpr
        self.value = value
        parts = [message]
        if subexpr is not None:
            parts.append(f"in {subexpr}")
        if point is not None:
            parts.append(f"at point {tuple(float(v) for v in np.atleast_1d(point))}")
        if value is not None:
            parts.append(f"(value {value})")
        super().__init__(" ".join(parts))


_ARITY = {
    "pr": 0, "const": 0,
    "add": 2, "sub": 2, "mul": 2, "max": 2, "min": 2,
    "neg": 1, "conj": 1, "sqrt": 1, "abs": 1, "pos": 1, "negpart": 1,
    "inv": 1, "gamma": 1, "table": 1,
}


@dataclass(frozen=True, eq=False)
class FunctionExpr:
    op: str
    children: tuple = ()
    param: object = None

    def __post_init__(self):
        if self.op not in _ARITY:
            raise ValueError(f"unknown node kind {self.op!r}")
        if len(self.children) != _ARITY[self.op]:
            raise ValueError(f"{self.op} takes {_ARITY[self.op]} arguments")

    # -- construction sugar ------------------------------------------------
    @staticmethod
    def lift(value):
        if isinstance(value, FunctionExpr):
            return value
        if isinstance(value, Number):
            return const(value)
        raise TypeError(f"cannot use {value!r} as a function expression")

    def __add__(self, other):
        return FunctionExpr("add", (self, FunctionExpr.lift(other)))

    def __radd__(self, other):
        return FunctionExpr("add", (FunctionExpr.lift(other), self))

    def __sub__(self, other):
        return FunctionExpr("sub", (self, FunctionExpr.lift(other)))

    def __rsub__(self, other):
        return FunctionExpr("sub", (FunctionExpr.lift(other), self))

    def __mul__(self, other):
        return FunctionExpr("mul", (self, FunctionExpr.lift(other)))

    def __rmul__(self, other):
        return FunctionExpr("mul", (FunctionExpr.lift(other), self))

    def __neg__(self):
        return FunctionExpr("neg", (self,))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = const(1)
        for _ in range(k):
            result = result * self
        return result

    def conj(self):
        return FunctionExpr("conj", (self,))

    # -- introspection -----------------------------------------------------
    def max_coordinate(self):
        """Largest coordinate index used (0 if none)."""
        own = self.param if self.op == "pr" else 0
        return max([own] + [c.max_coordinate() for c in self.children])

    def __str__(self):
        return to_sexpr(self)

    __repr__ = __str__

    # -- evaluation --------------------------------------------------------
    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[None, :]
        return _evaluate(self, pts)


def pr(n):
    """The coordinate function ``x -> x_n`` (1-based)."""
    if int(n) < 1:
        raise ValueError("coordinates are numbered from 1")
    return FunctionExpr("pr", param=int(n))


def const(value):
    return FunctionExpr("const", param=complex(value))


def sqrt_pos(f):
    return FunctionExpr("sqrt", (FunctionExpr.lift(f),))


def absval(f):
    return FunctionExpr("abs", (FunctionExpr.lift(f),))


def pos_part(f):
    return FunctionExpr("pos", (FunctionExpr.lift(f),))


def neg_part(f):
    return FunctionExpr("negpart", (FunctionExpr.lift(f),))


def max2(f, g):
    return FunctionExpr("max", (FunctionExpr.lift(f), FunctionExpr.lift(g)))


def min2(f, g):
    return FunctionExpr("min", (FunctionExpr.lift(f), FunctionExpr.lift(g)))


def coercive_inverse(f, eps):
    """``1/f`` for ``f`` bounded below by ``eps > 0`` where evaluated."""
    if not eps > 0:
        raise ValueError("declared lower bound must be positive")
    return FunctionExpr("inv", (FunctionExpr.lift(f),), float(eps))


def gamma_rho(f, rho):
    if not rho > 0:
        raise ValueError("rho must be positive")
    return FunctionExpr("gamma", (FunctionExpr.lift(f),), float(rho))


def compose_1d(f, xs, ys):
    """Piecewise-linear interpolant of the table ``(xs, ys)`` applied to ``f``.

    Outside ``[xs[0], xs[-1]]`` the end values are held constant.
    """
    xs = tuple(float(v) for v in xs)
    ys = tuple(float(v) for v in ys)
    if len(xs) != len(ys) or len(xs) < 1:
        raise ValueError("table needs matching, nonempty xs and ys")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("table abscissae must be strictly increasing")
    return FunctionExpr("table", (FunctionExpr.lift(f),), (xs, ys))


def gamma_rho_eval(rho, z):
    """Radial clamp of ``z`` onto the closed disc of radius ``rho``."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    z = np.asarray(z, dtype=complex)
    mag = np.abs(z)
    out = z.copy()
    outside = mag > rho
    out[outside] = rho * (z[outside] / mag[outside])
    # round-off may leave |out| an ulp above rho; shrink so clamping is idempotent
    for _ in range(8):
        over = np.abs(out) > rho
        if not np.any(over):
            break
        out = np.where(over, out * (1.0 - 2.0**-52), out)
    return out[()] if out.ndim == 0 else out


def _real_part(expr, values, points):
    bad = np.abs(values.imag) > REAL_TOL * (1.0 + np.abs(values.real))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainViolation(f"{expr.op} needs a real argument", points[i],
                              to_sexpr(expr), complex(values[i]))
    return values.real


def _evaluate(expr, pts):
    op = expr.op
    m = pts.shape[0]
    if op == "pr":
        if expr.param > pts.shape[1]:
            raise DomainViolation(f"coordinate {expr.param} exceeds dimension {pts.shape[1]}")
        return pts[:, expr.param - 1].astype(complex)
    if op == "const":
        return np.full(m, expr.param, dtype=complex)
    args = [_evaluate(c, pts) for c in expr.children]
    if op == "add":
        return args[0] + args[1]
    if op == "sub":
        return args[0] - args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "neg":
        return -args[0]
    if op == "conj":
        return np.conj(args[0])
    if op == "abs":
        return np.abs(args[0]).astype(complex)
    if op == "gamma":
        return np.asarray(gamma_rho_eval(expr.param, args[0]), dtype=complex).reshape(m)
    x = _real_part(expr, args[0], pts)
    if op == "sqrt":
        bad = x < -SQRT_CLAMP
        if np.any(bad):
            i = int(np.argmax(bad))
            raise DomainViolation("square root of a negative value", pts[i], to_sexpr(expr), x[i])
        return np.sqrt(np.maximum(x, 0.0)).astype(complex)
    if op == "pos":
        return np.maximum(x, 0.0).astype(complex)
    if op == "negpart":
        return np.maximum(-x, 0.0).astype(complex)
    if op == "inv":
        bad = x < expr.param
        if np.any(bad):
            i = int(np.argmax(bad))
            raise DomainViolation(f"value below declared lower bound {expr.param}",
                                  pts[i], to_sexpr(expr), x[i])
        return (1.0 / x).astype(complex)
    if op == "table":
        xs, ys = expr.param
        return np.interp(x, xs, ys).astype(complex)
    y = _real_part(expr, args[1], pts)
    if op == "max":
        return np.maximum(x, y).astype(complex)
    if op == "min":
        return np.minimum(x, y).astype(complex)
    raise AssertionError(op)


def eval_expr(f: FunctionExpr, x) -> complex:
    """Value of ``f`` at the single point ``x``."""
    return complex(f(np.atleast_1d(np.asarray(x, dtype=float)))[0])


# ---------------------------------------------------------------------------
# S-expression text

def _fmt(v):
    return repr(float(v))


def to_sexpr(expr: FunctionExpr) -> str:
    op = expr.op
    if op == "pr":
        return f"(pr {expr.param})"
    if op == "const":
        return f"(const {_fmt(expr.param.real)} {_fmt(expr.param.imag)})"
    inner = " ".join(to_sexpr(c) for c in expr.children)
    if op in ("inv", "gamma"):
        return f"({op} {_fmt(expr.param)} {inner})"
    if op == "table":
        xs, ys = expr.param
        return f"(table ({' '.join(map(_fmt, xs))}) ({' '.join(map(_fmt, ys))}) {inner})"
    return f"({op} {inner})"


_SEXPR_TOKEN = re.compile(r"\s*([()]|[^\s()]+)")


def _sexpr_tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _SEXPR_TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad S-expression near position {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_sexpr(text: str) -> FunctionExpr:
    """Inverse of ``str(expr)``."""
    tokens = _sexpr_tokens(text)
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of S-expression")
        tok = tokens[pos]
        pos += 1
        return tok

    def number_list():
        if take() != "(":
            raise ValueError("expected '(' to open a number list")
        vals = []
        while tokens[pos] != ")":
            vals.append(float(take()))
        take()
        return vals

    def node():
        if take() != "(":
            raise ValueError(f"expected '(' at token {pos - 1}")
        head = take()
        if head == "pr":
            result = pr(int(take()))
        elif head == "const":
            re_part = float(take())
            im_part = float(take()) if tokens[pos] != ")" else 0.0
            result = const(complex(re_part, im_part))
        elif head in ("inv", "gamma"):
            param = float(take())
            child = node()
            result = coercive_inverse(child, param) if head == "inv" else gamma_rho(child, param)
        elif head == "table":
            xs = number_list()
            ys = number_list()
            result = compose_1d(node(), xs, ys)
        elif head in _ARITY:
            kids = tuple(node() for _ in range(_ARITY[head]))
            result = FunctionExpr(head, kids)
        else:
            raise ValueError(f"unknown S-expression head {head!r}")
        if take() != ")":
            raise ValueError(f"too many arguments to {head}")
        return result

    result = node()
    if pos != len(tokens):
        raise ValueError("trailing tokens after S-expression")
    return result


def poly_to_expr(p, s_expr=None) -> FunctionExpr:
    """Expression for a polynomial in ``(s, t_1..t_N)`` with ``t_n -> pr(n)``.

    ``s_expr`` replaces the variable ``s`` (typically the spherical generator
    ``(1 + |x|^2)^-1``).  If it is ``None`` the polynomial is read as a
    polynomial in ``t_1..t_N`` alone.
    """
    offset = 0 if s_expr is None else 1
    total = None
    for exps in sorted(p.terms):
        c = p.terms[exps]
        term = const(complex(c))
        if offset:
            for _ in range(exps[0]):
                term = term * s_expr
        for i, e in enumerate(exps[offset:]):
            for _ in range(e):
                term = term * pr(i + 1)
        total = term if total is None else total + term
    return const(0) if total is None else total
