"""Exact sparse multivariate polynomials over the Gaussian rationals.

Variables are Hermitian generators, so conjugation acts on coefficients
only and a polynomial is Hermitian exactly when all its coefficients are
real.  Exponent vectors are positional; the caller fixes the variable
order through ``var_names``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "Polynomial",
    "PolyParseError",
    "UnknownVariableError",
    "NEG_INF_DEGREE",
    "parse_poly",
    "render_poly",
    "poly_arith",
    "evaluate",
    "degree_info",
]

NEG_INF_DEGREE = -math.inf


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts, always reduced."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, str):
            return cls(Fraction(value))
        raise TypeError(f"cannot represent {value!r} exactly as a Gaussian rational")

    def is_real(self):
        return self.im == 0

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero Gaussian rational")
        den = other.re * other.re + other.im * other.im
        num = self * other.conj()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)} i)"


def _coerce_or_none(value):
    try:
        return GaussianRational.coerce(value)
    except TypeError:
        return None


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero GaussianRational.

    Instances are treated as immutable.  Arithmetic operators are supported
    between polynomials with the same ``num_vars`` and with exact scalars.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars, terms=None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        self.num_vars = num_vars
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ValueError(f"exponent vector {exps} has length != {num_vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = GaussianRational.coerce(coeff)
            if not coeff.is_zero():
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, num_vars, terms):
        # trusted constructor: keys validated, zero coefficients already dropped
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, num_vars, value):
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, num_vars, index):
        """The generator in (0-based) position ``index``."""
        if not 0 <= index < num_vars:
            raise IndexError(f"variable index {index} out of range")
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, {tuple(exps): 1})

    @classmethod
    def from_real_terms(cls, num_vars, terms):
        """Build from an exponent -> Fraction/int map (real coefficients)."""
        return cls._raw(
            num_vars,
            {e: GaussianRational(c) for e, c in terms.items() if c},
        )

    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.num_vars, other)
        if other.num_vars != self.num_vars:
            raise ValueError(
                f"variable-count mismatch: {self.num_vars} vs {other.num_vars}"
            )
        return other

    def is_zero(self):
        return not self.terms

    def is_hermitian(self):
        return all(c.is_real() for c in self.terms.values())

    def real_terms(self):
        """Exponent -> Fraction map; raises if a coefficient is not real."""
        if not self.is_hermitian():
            raise ValueError("polynomial has non-real coefficients")
        return {e: c.re for e, c in self.terms.items()}

    def __add__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._check(other)
        if self.is_hermitian() and other.is_hermitian():
            # Fraction-only fast path; the bulk of certificate work is real.
            acc = {}
            for e1, c1 in self.terms.items():
                r1 = c1.re
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, 0) + r1 * c2.re
            return Polynomial.from_real_terms(self.num_vars, acc)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
        return Polynomial._raw(
            self.num_vars, {e: c for e, c in acc.items() if not c.is_zero()}
        )

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor):
        factor = GaussianRational.coerce(factor)
        if factor.is_zero():
            return Polynomial(self.num_vars)
        return Polynomial._raw(
            self.num_vars, {e: c * factor for e, c in self.terms.items()}
        )

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("polynomial exponent must be nonnegative")
        result = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conj(self):
        return Polynomial._raw(self.num_vars, {e: c.conj() for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.num_vars)]
        return f"Polynomial({render_poly(self, names)!r}, num_vars={self.num_vars})"

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), GaussianRational(0))

    def degree_in(self, indices):
        """Max over terms of the summed exponents at ``indices`` (0 for zero)."""
        return max((sum(e[i] for i in indices) for e in self.terms), default=0)

    def __call__(self, *point):
        return evaluate(self, point)


def poly_arith(op, *args):
    """Dispatch ``op`` in {add, mul, neg, conj, scale, pow} on exact operands."""
    if op == "add":
        p, q = args
        return p + q
    if op == "mul":
        p, q = args
        if not isinstance(q, Polynomial):
            raise TypeError("mul expects two polynomials; use scale for scalars")
        return p * q
    if op == "neg":
        (p,) = args
        return -p
    if op == "conj":
        (p,) = args
        return p.conj()
    if op == "scale":
        p, factor = args
        return p.scale(factor)
    if op == "pow":
        p, k = args
        return p**k
    raise ValueError(f"unknown polynomial operation {op!r}")


def evaluate(p: Polynomial, point) -> GaussianRational:
    """Exact value of ``p`` at ``point`` by direct term summation."""
    point = [GaussianRational.coerce(x) for x in point]
    if len(point) != p.num_vars:
        raise ValueError(f"point has length {len(point)}, expected {p.num_vars}")
    if all(x.is_real() for x in point) and p.is_hermitian():
        xs = [x.re for x in point]
        total = Fraction(0)
        for exps, c in p.terms.items():
            term = c.re
            for x, e in zip(xs, exps):
                if e:
                    term *= x**e
            total += term
        return GaussianRational(total)
    total = GaussianRational(0)
    for exps, c in p.terms.items():
        term = c
        for x, e in zip(point, exps):
            if e:
                term = term * x**e
        total = total + term
    return total


def degree_info(p: Polynomial):
    """``(total_degree, is_homogeneous)``; the zero polynomial is ``(-inf, True)``."""
    if not p.terms:
        return NEG_INF_DEGREE, True
    degrees = {sum(e) for e in p.terms}
    return max(degrees), len(degrees) == 1


# ---------------------------------------------------------------------------
# text format

class PolyParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PolyParseError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, var_names):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(var_names)}
        self.n = len(var_names)

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise PolyParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def poly(self):
        terms = {}
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        self._accumulate(terms, sign)
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            self._accumulate(terms, sign)
        if not self.at("end"):
            tok = self.peek()
            raise PolyParseError(f"unexpected token {tok[1]!r}", tok[2])
        return Polynomial(self.n, terms)

    def _accumulate(self, terms, sign):
        exps, coeff = self.term()
        if sign < 0:
            coeff = -coeff
        terms[exps] = terms.get(exps, GaussianRational(0)) + coeff

    def term(self):
        exps = [0] * self.n
        if self.at("int") or self.at("op", "("):
            coeff = self.coeff()
        else:
            coeff = GaussianRational(1)
            self.factor(exps)
        while self.at("op", "*"):
            self.take()
            self.factor(exps)
        return tuple(exps), coeff

    def factor(self, exps):
        _, name, pos = self.take("ident")
        if name not in self.index:
            raise UnknownVariableError(f"unknown variable {name!r}", pos)
        power = 1
        if self.at("op", "^"):
            self.take()
            power = int(self.take("int")[1])
        exps[self.index[name]] += power

    def rational(self, signed=False):
        sign = 1
        if signed and (self.at("op", "-") or self.at("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        num = int(self.take("int")[1])
        den = 1
        if self.at("op", "/"):
            self.take()
            tok = self.take("int")
            den = int(tok[1])
            if den == 0:
                raise PolyParseError("zero denominator", tok[2])
        return sign * Fraction(num, den)

    def coeff(self):
        if self.at("int"):
            return GaussianRational(self.rational())
        self.take("op", "(")
        re_part = self.rational(signed=True)
        tok = self.peek()
        if not (self.at("op", "+") or self.at("op", "-")):
            raise PolyParseError("expected '+' or '-' in complex coefficient", tok[2])
        sign = -1 if self.take()[1] == "-" else 1
        im_part = sign * self.rational()
        self.take("ident", "i")
        self.take("op", ")")
        return GaussianRational(re_part, im_part)


def parse_poly(text: str, var_names) -> Polynomial:
    """Parse the polynomial text format into canonical sparse form.

    >>> parse_poly("2*s - 2*s", ["s"]).is_zero()
    True
    """
    return _Parser(text, list(var_names)).poly()


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _term_order(exps):
    return (-sum(exps), tuple(-e for e in exps))


def render_poly(p: Polynomial, var_names) -> str:
    """Canonical text form; ``parse_poly(render_poly(p, v), v) == p``."""
    if len(var_names) != p.num_vars:
        raise ValueError("var_names length does not match num_vars")
    if not p.terms:
        return "0"
    pieces = []
    for exps in sorted(p.terms, key=_term_order):
        c = p.terms[exps]
        factors = []
        for name, e in zip(var_names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if c.is_real():
            negative = c.re < 0
            mag = abs(c.re)
            coeff_text = None if (mag == 1 and factors) else _format_rational(mag)
        else:
            negative = False
            sign = "-" if c.im < 0 else "+"
            re_text = ("-" if c.re < 0 else "") + _format_rational(abs(c.re))
            coeff_text = f"({re_text}{sign}{_format_rational(abs(c.im))} i)"
        body = "*".join(([coeff_text] if coeff_text else []) + factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)
