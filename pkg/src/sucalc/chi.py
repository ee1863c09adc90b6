"""Exact arithmetic in Q[z]/(N z^2 + 2 z - 1).

``z`` stands for the square of the scaling constant chi used when the
Polya certificate is pulled back to commuting Hermitian elements; chi is
chosen so that ``N chi^4 + 2 chi^2 = 1``.  Only even powers of chi ever
occur, so ``z`` suffices and chi itself is never materialized as a float.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["AlgebraicChi"]


class AlgebraicChi:
    """Element ``c0 + c1*z`` of the quotient ring for a fixed ``n``.

    The ring is a field when ``n + 1`` is not a perfect square.  Otherwise
    it splits into two copies of Q, but z is still a unit (``z*(n z + 2) = 1``)
    so every identity the certificate check relies on holds exactly.
    """

    __slots__ = ("n", "c0", "c1")

    def __init__(self, n, c0=0, c1=0):
        if n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)

    @classmethod
    def z(cls, n):
        return cls(n, 0, 1)

    @classmethod
    def z_inverse(cls, n):
        # from n z^2 + 2 z = 1:  z (n z + 2) = 1
        return cls(n, 2, n)

    def _lift(self, other):
        if isinstance(other, AlgebraicChi):
            if other.n != self.n:
                raise ValueError("mixing elements of different quotient rings")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicChi(self.n, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return AlgebraicChi(self.n, self.c0 + other.c0, self.c1 + other.c1)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicChi(self.n, -self.c0, -self.c1)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return AlgebraicChi(self.n, self.c0 - other.c0, self.c1 - other.c1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.c0, self.c1, other.c0, other.c1
        bd = b * d
        # z^2 = (1 - 2 z) / n
        return AlgebraicChi(self.n, a * c + bd / self.n, a * d + b * c - 2 * bd / self.n)

    __rmul__ = __mul__

    def inverse(self):
        # Solve (a + b z)(x + y z) = 1 as a 2x2 linear system over Q.
        a, b, n = self.c0, self.c1, self.n
        m00, m01 = a, b / n
        m10, m11 = b, a - 2 * b / n
        det = m00 * m11 - m01 * m10
        if det == 0:
            raise ZeroDivisionError(f"{self!r} is not a unit")
        return AlgebraicChi(n, m11 / det, -m10 / det)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = AlgebraicChi(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.n, self.c0, self.c1))

    def __repr__(self):
        return f"AlgebraicChi(n={self.n}, {self.c0} + {self.c1}*z)"

    def is_zero(self):
        return self.c0 == 0 and self.c1 == 0

    @staticmethod
    def z_value(n):
        """Positive root of ``n z^2 + 2 z - 1``, i.e. chi squared, as a float."""
        return math.sqrt(1.0 / n**2 + 1.0 / n) - 1.0 / n

    def __float__(self):
        return float(self.c0) + float(self.c1) * self.z_value(self.n)
