"""Exact scalars of the form (a + b·√p) + i·(c + d·√p) with rational a,b,c,d.

Every coefficient the ladder operators, the Haar integrals, and the
renormalized-pairing limits can produce lives in this field, so all
identity checks in the package are exact equalities — no tolerances
anywhere.  Rationals are gmpy2.mpq when available (much faster), with a
fractions.Fraction fallback.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

from .errors import NotPrimeError

_Q0 = Q(0)
_Q1 = Q(1)


def as_rational(x) -> "Q":
    """Coerce int / str('num/den') / Fraction / mpq to the rational type."""
    if isinstance(x, type(_Q0)):
        return x
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, str):
        return Q(x)
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_str(q) -> str:
    """Canonical 'num/den' serialization (always with an explicit denominator)."""
    return f"{q.numerator}/{q.denominator}"


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (intended for small p)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def validate_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"p must be prime, got {p!r}")
    return p


class Scalar:
    """An exact element of Q(√p) ⊕ i·Q(√p).

    Stored as four rationals (ra, rb, ia, ib) denoting
    (ra + rb·√p) + i·(ia + ib·√p).  Immutable by convention; all
    arithmetic returns new instances.  √p·√p reduces to p exactly, and
    conjugation negates the imaginary pair only (√p is real).
    """

    __slots__ = ("p", "ra", "rb", "ia", "ib")

    def __init__(self, p: int, ra=0, rb=0, ia=0, ib=0):
        self.p = p
        self.ra = as_rational(ra)
        self.rb = as_rational(rb)
        self.ia = as_rational(ia)
        self.ib = as_rational(ib)

    @classmethod
    def _raw(cls, p, ra, rb, ia, ib) -> "Scalar":
        s = object.__new__(cls)
        s.p = p
        s.ra = ra
        s.rb = rb
        s.ia = ia
        s.ib = ib
        return s

    @classmethod
    def zero(cls, p: int) -> "Scalar":
        return cls._raw(p, _Q0, _Q0, _Q0, _Q0)

    @classmethod
    def one(cls, p: int) -> "Scalar":
        return cls._raw(p, _Q1, _Q0, _Q0, _Q0)

    @classmethod
    def rational(cls, p: int, q) -> "Scalar":
        return cls._raw(p, as_rational(q), _Q0, _Q0, _Q0)

    @classmethod
    def root_p(cls, p: int) -> "Scalar":
        return cls._raw(p, _Q0, _Q1, _Q0, _Q0)

    @classmethod
    def root_p_power(cls, p: int, n: int) -> "Scalar":
        """p^(n/2) as an exact scalar: p^(n//2) for even n, ·√p extra for odd."""
        return cls.one(p).mul_root_p_power(n)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.ra or self.rb or self.ia or self.ib)

    def is_real(self) -> bool:
        return not (self.ia or self.ib)

    def is_rational(self) -> bool:
        return not (self.rb or self.ia or self.ib)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        try:
            return Scalar.rational(self.p, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.p, self.ra + o.ra, self.rb + o.rb,
                           self.ia + o.ia, self.ib + o.ib)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.p, self.ra - o.ra, self.rb - o.rb,
                           self.ia - o.ia, self.ib - o.ib)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar._raw(self.p, -self.ra, -self.rb, -self.ia, -self.ib)

    def scale(self, q) -> "Scalar":
        """Multiply by a plain rational (fast path used by the integrals)."""
        q = as_rational(q)
        if not q:
            return Scalar.zero(self.p)
        if q == 1:
            return self
        return Scalar._raw(self.p, self.ra * q, self.rb * q,
                           self.ia * q, self.ib * q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        # fast paths: one operand a plain rational
        if not (o.rb or o.ia or o.ib):
            return self.scale(o.ra)
        if not (self.rb or self.ia or self.ib):
            return o.scale(self.ra)
        a1, b1, c1, d1 = self.ra, self.rb, self.ia, self.ib
        a2, b2, c2, d2 = o.ra, o.rb, o.ia, o.ib
        if not (c1 or d1 or c2 or d2):  # both real: one Q(√p) product
            return Scalar._raw(p, a1 * a2 + p * b1 * b2, a1 * b2 + b1 * a2,
                               _Q0, _Q0)
        # full product: (r1 + i·m1)(r2 + i·m2) with r, m in Q(√p)
        re_a = a1 * a2 + p * b1 * b2 - (c1 * c2 + p * d1 * d2)
        re_b = a1 * b2 + b1 * a2 - (c1 * d2 + d1 * c2)
        im_a = a1 * c2 + p * b1 * d2 + c1 * a2 + p * d1 * b2
        im_b = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return Scalar._raw(p, re_a, re_b, im_a, im_b)

    __rmul__ = __mul__

    def mul_root_p_power(self, n: int) -> "Scalar":
        """Multiply by p^(n/2) exactly (n may be negative)."""
        if n == 0 or self.is_zero():
            return self
        k, odd = divmod(n, 2)
        if k >= 0:
            q = Q(self.p) ** k
        else:
            q = Q(1, self.p ** (-k))
        ra, rb, ia, ib = self.ra, self.rb, self.ia, self.ib
        if odd:  # (a + b√p)·√p = p·b + a·√p
            pp = self.p
            ra, rb, ia, ib = pp * rb, ra, pp * ib, ia
        if q != 1:
            ra, rb, ia, ib = ra * q, rb * q, ia * q, ib * q
        return Scalar._raw(self.p, ra, rb, ia, ib)

    def conjugate(self) -> "Scalar":
        if not (self.ia or self.ib):
            return self
        return Scalar._raw(self.p, self.ra, self.rb, -self.ia, -self.ib)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        p = self.p
        # |z|^2 = z · conj(z) lies in Q(√p): (na + nb·√p)
        a, b, c, d = self.ra, self.rb, self.ia, self.ib
        na = a * a + p * b * b + c * c + p * d * d
        nb = 2 * (a * b + c * d)
        # invert na + nb·√p in Q(√p): (na − nb·√p)/(na² − p·nb²)
        den = na * na - p * nb * nb
        inv_a = na / den
        inv_b = -nb / den
        # conj(z) · (inv_a + inv_b·√p)
        conj = self.conjugate()
        mult = Scalar._raw(p, inv_a, inv_b, _Q0, _Q0)
        return conj * mult

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not (o.rb or o.ia or o.ib):  # rational divisor
            if not o.ra:
                raise ZeroDivisionError("division by zero scalar")
            return self.scale(_Q1 / o.ra)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- order structure on the real part ------------------------------

    def real_sign(self) -> int:
        """Exact sign of a + b·√p; requires a real scalar."""
        if self.ia or self.ib:
            raise ValueError("real_sign of a non-real scalar")
        a, b = self.ra, self.rb
        if not b:
            return (a > 0) - (a < 0)
        if not a:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # mixed signs: compare a² with p·b² (√p is irrational, no tie)
        lhs, rhs = a * a, self.p * b * b
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    # -- equality / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (self.p == other.p and self.ra == other.ra
                    and self.rb == other.rb and self.ia == other.ia
                    and self.ib == other.ib)
        if isinstance(other, (int, Fraction)) or isinstance(other, type(_Q0)):
            return (not (self.rb or self.ia or self.ib)
                    and self.ra == as_rational(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.ra, self.rb, self.ia, self.ib))

    # -- display / serialization ----------------------------------------

    def to_complex(self) -> complex:
        """Floating approximation, for display only."""
        r = math.sqrt(self.p)
        return complex(float(self.ra) + float(self.rb) * r,
                       float(self.ia) + float(self.ib) * r)

    def _part_str(self, a, b) -> str:
        terms = []
        if a:
            terms.append(str(a))
        if b:
            if b == 1:
                terms.append(f"√{self.p}")
            elif b == -1:
                terms.append(f"-√{self.p}")
            else:
                terms.append(f"{b}·√{self.p}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def pretty(self) -> str:
        """Exact human-readable form, e.g. '1/2·√2' or '3 + i·(√5)'."""
        re = self._part_str(self.ra, self.rb)
        if self.is_real():
            return re
        im = self._part_str(self.ia, self.ib)
        if re == "0":
            return f"i·({im})"
        return f"{re} + i·({im})"

    def __repr__(self):
        return f"<Scalar p={self.p} {self.pretty()}>"

    def to_json(self) -> list[str]:
        return [rational_str(self.ra), rational_str(self.rb),
                rational_str(self.ia), rational_str(self.ib)]

    @classmethod
    def from_json(cls, p: int, data) -> "Scalar":
        if len(data) != 4:
            raise ValueError("scalar JSON must have four rational components")
        return cls(p, *(as_rational(x) for x in data))


def format_with_decimal(s: Scalar, digits: int = 8) -> str:
    """Exact form, with a decimal annotation when the value is irrational."""
    out = s.pretty()
    if s.rb or s.ia or s.ib:
        z = s.to_complex()
        if z.imag == 0:
            out += f" ≈ {z.real:.{digits}f}"
        else:
            out += f" ≈ {z.real:.{digits}f}{z.imag:+.{digits}f}i"
    return out
