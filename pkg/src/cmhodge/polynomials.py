"""Dense univariate polynomials over Q.

Coefficients are stored lowest degree first as `fractions.Fraction`; the
zero polynomial is the empty tuple.  This is the substrate for cyclotomic
minimal polynomials and for the gcd route to circulant ranks, so everything
is exact: no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import UsageError


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Polynomial in one variable over Q, lowest-degree coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def x_power(cls, k):
        return cls((0,) * k + (1,))

    @property
    def degree(self):
        """Degree of the polynomial, with deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise UsageError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb == 0:
                    continue
                out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c):
        c = Fraction(c)
        return Poly([x * c for x in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def divmod(self, other):
        """Quotient and remainder of exact long division."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if top == 0:
                continue
            c = top / lead
            quot[k] = c
            for j, oc in enumerate(other.coeffs):
                rem[k + j] -= c * oc
        return Poly(quot), Poly(rem)

    def __call__(self, x):
        """Evaluate by Horner's rule; works for any ring element with + and *."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        return acc

    def __repr__(self):
        return f"Poly({_format_poly(self.coeffs, 'x')!r})"


def _format_poly(coeffs, var):
    if not coeffs:
        return "0"
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}" if k == 1 else f"{mag}{var}^{k}"
            term = ("-" if c < 0 else "") + term
            parts.append(term)
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def poly_gcd(f, g):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a, b = f, g
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()


def poly_xgcd(f, g):
    """Extended Euclid: returns (d, u, v) with u*f + v*g = d, d monic."""
    a, b = f, g
    ua, va = Poly.one(), Poly.zero()
    ub, vb = Poly.zero(), Poly.one()
    while not b.is_zero():
        q, r = a.divmod(b)
        a, b = b, r
        ua, ub = ub, ua - q * ub
        va, vb = vb, va - q * vb
    if a.is_zero():
        return a, ua, va
    s = 1 / a.leading()
    return a.scale(s), ua.scale(s), va.scale(s)


def _divisors(m):
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """The m-th cyclotomic polynomial, computed by exact division of x^m - 1."""
    if not isinstance(m, int) or m < 1:
        raise UsageError(f"cyclotomic polynomial index must be a positive integer, got {m!r}")
    if m == 1:
        return Poly((-1, 1))
    num = Poly.x_power(m) - Poly.one()
    den = Poly.one()
    for d in _divisors(m)[:-1]:
        den = den * cyclotomic_polynomial(d)
    quot, rem = num.divmod(den)
    assert rem.is_zero()
    return quot
