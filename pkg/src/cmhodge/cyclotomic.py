"""Exact arithmetic in Q(zeta_M) in the power basis 1, z, ..., z^{phi(M)-1}.

Every element is kept reduced modulo the M-th cyclotomic polynomial, so
equality is plain coefficient comparison.  Galois automorphisms act by
z -> z^a for units a, and complex conjugation is the case a = -1.

Serialization uses decimal-free "p/q" strings so round trips are lossless.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import ConductorMismatchError, UsageError
from .polynomials import Poly, _format_poly, cyclotomic_polynomial, poly_xgcd


def euler_phi(m):
    if not isinstance(m, int) or m < 1:
        raise UsageError(f"euler_phi wants a positive integer, got {m!r}")
    out = 1
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out *= (p - 1) * p ** (k - 1)
        p += 1
    if n > 1:
        out *= n - 1
    return out


class _Context:
    __slots__ = ("conductor", "phi", "powers")

    def __init__(self, conductor):
        self.conductor = conductor
        phi = euler_phi(conductor)
        self.phi = phi
        minpoly = cyclotomic_polynomial(conductor)
        # x^phi == tail modulo the minimal polynomial (it is monic)
        tail = [-c for c in minpoly.coeffs[:phi]]
        powers = []
        cur = [Fraction(0)] * phi
        cur[0] = Fraction(1)
        limit = max(conductor, 2 * phi - 1)
        for _ in range(limit):
            powers.append(tuple(cur))
            top = cur[phi - 1] if phi > 0 else Fraction(0)
            nxt = [Fraction(0)] + cur[: phi - 1]
            if top:
                for k in range(phi):
                    nxt[k] += top * tail[k]
            cur = nxt
        self.powers = tuple(powers)


@lru_cache(maxsize=None)
def _context(conductor):
    return _Context(conductor)


def format_fraction(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational literal {text!r}") from exc


class CyclotomicNumber:
    """An element of Q(zeta_M), M the conductor, in the power basis."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs):
        ctx = _context(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != ctx.phi:
            raise UsageError(
                f"conductor {conductor} needs {ctx.phi} coefficients, got {len(coeffs)}"
            )
        self.conductor = conductor
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, conductor):
        return cls(conductor, (0,) * _context(conductor).phi)

    @classmethod
    def one(cls, conductor):
        return cls.from_rational(conductor, 1)

    @classmethod
    def from_rational(cls, conductor, value):
        ctx = _context(conductor)
        coeffs = [Fraction(0)] * ctx.phi
        coeffs[0] = Fraction(value)
        return cls(conductor, coeffs)

    @classmethod
    def root_of_unity(cls, conductor, k):
        """zeta_M^k, reduced into the power basis."""
        ctx = _context(conductor)
        return cls(conductor, ctx.powers[k % conductor])

    @classmethod
    def i_unit(cls, conductor):
        """The fourth root of unity; the conductor must be divisible by 4."""
        if conductor % 4 != 0:
            raise UsageError(f"no fourth root of unity at conductor {conductor}")
        return cls.root_of_unity(conductor, conductor // 4)

    # -- ring structure -------------------------------------------------

    def _check(self, other):
        if self.conductor != other.conductor:
            raise ConductorMismatchError(
                f"mixed conductors {self.conductor} and {other.conductor}"
            )

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.conductor, other)
        return None

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational_value(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational_value():
            raise UsageError("not a rational value")
        return self.coeffs[0]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __neg__(self):
        return CyclotomicNumber(self.conductor, [-c for c in self.coeffs])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(
            self.conductor, [a + b for a, b in zip(self.coeffs, o.coeffs)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(
            self.conductor, [a - b for a, b in zip(self.coeffs, o.coeffs)]
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def _scale(self, q):
        if q == 0:
            return CyclotomicNumber.zero(self.conductor)
        return CyclotomicNumber(self.conductor, [c * q for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        self._check(other)
        # rational factors are the common case; keep them linear time
        if self.is_rational_value():
            return other._scale(self.coeffs[0])
        if other.is_rational_value():
            return self._scale(other.coeffs[0])
        ctx = _context(self.conductor)
        phi = ctx.phi
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                conv[i + j] += a * b
        out = list(conv[:phi])
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c == 0:
                continue
            red = ctx.powers[k]
            for t in range(phi):
                if red[t]:
                    out[t] += c * red[t]
        return CyclotomicNumber(self.conductor, out)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in Q(zeta_{self.conductor})")
        f = Poly(self.coeffs)
        d, u, _ = poly_xgcd(f, cyclotomic_polynomial(self.conductor))
        assert d == Poly.one()
        ctx = _context(self.conductor)
        coeffs = list(u.coeffs) + [Fraction(0)] * max(0, ctx.phi - len(u.coeffs))
        out = CyclotomicNumber(self.conductor, coeffs[: ctx.phi])
        return out

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise UsageError("only nonnegative integer powers are supported")
        acc = CyclotomicNumber.one(self.conductor)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- Galois ---------------------------------------------------------

    def galois(self, a):
        """Apply the automorphism z -> z^a; a must be a unit mod the conductor."""
        M = self.conductor
        a %= M
        if _gcd(a, M) != 1:
            raise UsageError(f"{a} is not a unit modulo {M}")
        if self.is_rational_value():
            return self
        ctx = _context(M)
        out = [Fraction(0)] * ctx.phi
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            red = ctx.powers[(a * k) % M]
            for t in range(ctx.phi):
                if red[t]:
                    out[t] += c * red[t]
        return CyclotomicNumber(M, out)

    def conjugate(self):
        return self.galois(self.conductor - 1)

    # -- serialization --------------------------------------------------

    def to_json(self):
        return {
            "conductor": self.conductor,
            "coeffs": [format_fraction(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "conductor" not in obj or "coeffs" not in obj:
            raise UsageError("cyclotomic JSON needs 'conductor' and 'coeffs'")
        conductor = obj["conductor"]
        if not isinstance(conductor, int) or conductor < 1:
            raise UsageError(f"bad conductor {conductor!r}")
        return cls(conductor, [parse_fraction(c) for c in obj["coeffs"]])

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {_format_poly(self.coeffs, 'z')!r})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def galois_apply(a, x):
    """Module-level spelling of CyclotomicNumber.galois."""
    return x.galois(a)
