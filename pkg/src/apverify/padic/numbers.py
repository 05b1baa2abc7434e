"""Elements of Q_p known modulo p^N (absolute precision)."""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq, mpz


class PrecisionError(ArithmeticError):
    """Raised when a value is not known precisely enough to answer."""


class HenselError(ArithmeticError):
    pass


def vp(n, p: int) -> int:
    """p-adic valuation of a nonzero rational or integer."""
    q = mpq(n)
    if q == 0:
        raise ValueError("valuation of zero")
    num, den = q.numerator, q.denominator
    v = 0
    if num % p == 0:
        num, k = gmpy2.remove(num, p)
        v += k
    if den % p == 0:
        den, k = gmpy2.remove(den, p)
        v -= k
    return int(v)


@dataclass(frozen=True)
class PadicNumber:
    """unit * p^valuation, known modulo p^precision.

    The zero-to-precision element has valuation == precision and unit 0.
    """

    p: int
    precision: int
    valuation: int
    unit: int

    # -- construction ------------------------------------------------------
    @classmethod
    def zero(cls, p, precision):
        return cls(p, precision, precision, 0)

    @classmethod
    def from_rational(cls, x, p, precision):
        x = mpq(x)
        if x == 0:
            return cls.zero(p, precision)
        v = vp(x, p)
        if v >= precision:
            return cls.zero(p, precision)
        num, den = x.numerator, x.denominator
        if v > 0:
            num //= mpz(p) ** v
        elif v < 0:
            den //= mpz(p) ** (-v)
        mod = mpz(p) ** (precision - v)
        return cls(p, precision, v, int(num * gmpy2.invert(den, mod) % mod))

    @classmethod
    def from_int(cls, n, p, precision):
        return cls.from_rational(n, p, precision)

    def _make(self, precision, value_over, shift):
        """Build from integer value_over * p^shift known mod p^precision."""
        p = self.p
        if precision <= shift:
            return PadicNumber.zero(p, precision)
        mod = mpz(p) ** (precision - shift)
        w = mpz(value_over) % mod
        if w == 0:
            return PadicNumber.zero(p, precision)
        w, k = gmpy2.remove(w, p)
        v = shift + int(k)
        return PadicNumber(p, precision, v, int(w % mpz(p) ** (precision - v)))

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("different primes")
            return other
        return PadicNumber.from_rational(other, self.p, self.precision)

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def relative_precision(self) -> int:
        return self.precision - self.valuation

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        N = min(self.precision, o.precision)
        s = min(self.valuation, o.valuation)
        p = mpz(self.p)
        w = self.unit * p ** (self.valuation - s) + o.unit * p ** (o.valuation - s)
        return self._make(N, w, s)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        mod = self.p ** self.relative_precision
        return PadicNumber(self.p, self.precision, self.valuation, (-self.unit) % mod)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = self.p
        if self.is_zero() or o.is_zero():
            N = min(self.precision + o.valuation, o.precision + self.valuation)
            return PadicNumber.zero(p, N)
        v = self.valuation + o.valuation
        rel = min(self.relative_precision, o.relative_precision)
        return PadicNumber(p, v + rel, v, self.unit * o.unit % p ** rel)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("p-adic zero has no inverse")
        rel = self.relative_precision
        mod = mpz(self.p) ** rel
        return PadicNumber(self.p, rel - self.valuation, -self.valuation,
                           int(gmpy2.invert(self.unit, mod)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by p-adic zero")
        if self.is_zero():
            return PadicNumber.zero(self.p, self.precision - o.valuation)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PadicNumber.from_int(1, self.p, self.precision)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if other.p != self.p:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.p, self.precision, self.valuation, self.unit))

    # -- conversions -----------------------------------------------------
    def to_rational(self):
        return mpq(self.unit) * mpq(self.p) ** self.valuation

    def residue(self) -> int:
        """Integer representative in [0, p^precision) (needs valuation >= 0)."""
        if self.valuation < 0:
            raise PrecisionError("not p-integral")
        if self.precision <= 0:
            return 0
        return int(self.unit * mpz(self.p) ** self.valuation % mpz(self.p) ** self.precision)

    def lift_to(self, precision):
        """Reinterpret with a different known precision (caller vouches for it)."""
        return PadicNumber.from_rational(self.to_rational(), self.p, precision)

    def with_precision(self, precision):
        if precision > self.precision:
            raise PrecisionError("cannot invent precision")
        return PadicNumber.from_rational(self.to_rational(), self.p, precision)

    def to_json(self):
        return {"p": str(self.p), "valuation": str(self.valuation),
                "unit": str(self.unit), "precision": str(self.precision)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["p"]), int(data["precision"]), int(data["valuation"]), int(data["unit"]))

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.precision})"
        return f"{self.unit}*{self.p}^{self.valuation} + O({self.p}^{self.precision})"


def qp_is_square(a) -> bool:
    """Decide whether a (a PadicNumber) is a square in Q_p."""
    if a.is_zero():
        raise PrecisionError("zero to this precision: squareness undecided")
    if a.valuation % 2:
        return False
    p = a.p
    if p == 2:
        if a.relative_precision < 3:
            raise PrecisionError("need the unit part modulo 8")
        return a.unit % 8 == 1
    if a.relative_precision < 1:
        raise PrecisionError("need the unit part modulo p")
    return gmpy2.legendre(a.unit % p, p) == 1


def is_square_rational_qp(x, p: int) -> bool:
    """Squareness in Q_p of a nonzero exact rational."""
    x = mpq(x)
    if x == 0:
        return True
    v = vp(x, p)
    return qp_is_square(PadicNumber.from_rational(x, p, v + 3))


def hensel_lift_root(f, x0, precision: int):
    """Lift a simple root of f (integer or rational coefficients) from x0.

    x0 is a PadicNumber (or integer, taken to precision 1).  Requires
    v(f(x0)) > 2 v(f'(x0)).
    """
    from ..algebra import Polynomial, QQ
    if not isinstance(f, Polynomial):
        f = Polynomial(f, QQ)
    if isinstance(x0, PadicNumber):
        p = x0.p
        r = x0.to_rational()
    else:
        raise TypeError("x0 must be a PadicNumber")
    df = f.derivative()
    fx, dfx = f(r), df(r)
    if dfx == 0:
        raise HenselError("derivative vanishes at the seed")
    k = vp(dfx, p)
    if fx != 0 and vp(fx, p) <= 2 * k:
        raise HenselError("Hensel condition |f(x0)| < |f'(x0)|^2 fails")
    if fx == 0:
        return PadicNumber.from_rational(r, p, precision)
    # Newton over exact rationals, reduced mod p^(precision + k) each step
    work = precision + k + 2
    mod = mpz(p) ** work
    r = _reduce_rational(r, p, work)
    while True:
        fx = f(r)
        if fx == 0 or vp(fx, p) >= precision + 2 * k:
            break
        r = _reduce_rational(r - fx / df(r), p, work)
    del mod
    return PadicNumber.from_rational(r, p, precision)


def _reduce_rational(r, p, N):
    r = mpq(r)
    if r == 0:
        return r
    v = vp(r, p)
    if v >= N:
        return mpq(0)
    pn = PadicNumber.from_rational(r, p, N)
    return pn.to_rational()
