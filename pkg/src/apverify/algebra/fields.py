"""Coefficient domains.

A domain is a small object that knows how to do arithmetic on its
elements; polynomials carry a reference to one.  Three kinds exist:

* ``QQ`` -- the rationals, backed by ``gmpy2.mpq`` (always in lowest terms).
* ``PrimeField(p)`` -- elements are Python ints in ``range(p)``.
* ``ExtensionField(p, k)`` -- elements are k-tuples of ints, the
  coefficients of a representative modulo a fixed irreducible polynomial.

The public value type for extension-field elements is :class:`FqElement`,
which wraps a tuple together with its field and overloads the operators.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq, mpz


class DomainError(ValueError):
    """Raised for mismatched or unsupported coefficient domains."""


class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    zero = mpq(0)
    one = mpq(1)

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def __call__(self, x) -> mpq:
        if isinstance(x, str):
            num, _, den = x.partition("/")
            return mpq(int(num), int(den or 1))
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @staticmethod
    def div(a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    @staticmethod
    def is_zero(a) -> bool:
        return not a

    def to_str(self, a) -> str:
        a = mpq(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


def rational_str(a) -> str:
    return QQ.to_str(a)


def parse_rational(s: str) -> mpq:
    return QQ(s)


class PrimeField:
    """The prime field F_p with elements represented by ints in [0, p)."""

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not mpz(p).is_prime():
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.degree = 1
        self.zero = 0
        self.one = 1
        self._nonresidue = None

    def __call__(self, x) -> int:
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def is_square(self, a) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def elements(self):
        return range(self.p)

    def sqrt(self, a):
        """Least non-negative square root of ``a``, or None."""
        p = self.p
        a %= p
        if p == 2:
            raise DomainError("square roots in characteristic 2 are not supported")
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        r = _tonelli_shanks(a, p)
        return min(r, p - r)

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# --- polynomials over F_p as int lists, used to build extension fields ---

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mulmod(a, b, mod, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _fp_rem([c % p for c in prod], mod, p)


def _fp_rem(a, mod, p):
    a = _trim(list(a))
    k = len(mod) - 1
    inv = pow(mod[-1], -1, p)
    while len(a) > k:
        c = a[-1] * inv % p
        shift = len(a) - 1 - k
        for i, m in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * m) % p
        _trim(a)
    return a


def _fp_powmod(base, e, mod, p):
    result = [1]
    base = _fp_rem(base, mod, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_rem(a, b, p)
    return a


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(coeffs, p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p (ascending coefficients)."""
    f = _trim([c % p for c in coeffs])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _fp_rem(_fp_sub(_fp_powmod(x, p ** k, f, p), x, p), f, p):
        return False
    for r in _prime_divisors(k):
        h = _fp_sub(_fp_powmod(x, p ** (k // r), f, p), x, p)
        g = _fp_gcd(f, h, p)
        if len(g) > 1:
            return False
    return True


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple:
    """First monic irreducible polynomial of degree k over F_p.

    Candidates are scanned in increasing order of the integer code
    ``sum(c_i * p**i)`` of their non-leading coefficients.
    """
    for code in range(p ** k):
        coeffs, n = [], code
        for _ in range(k):
            coeffs.append(n % p)
            n //= p
        coeffs.append(1)
        if is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise DomainError(f"no irreducible polynomial of degree {k} over F_{p}")


class ExtensionField:
    """F_{p^k} as F_p[x]/(modulus); elements are k-tuples of ints."""

    def __init__(self, p: int, k: int, modulus=None):
        self.base = PrimeField(p)
        self.p = p
        self.degree = k
        self.characteristic = p
        self.order = p ** k
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree k")
        if not is_irreducible_mod_p(modulus, p):
            raise DomainError("modulus is not irreducible")
        self.modulus = modulus
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._nonresidue = None

    def _pack(self, c):
        c = list(c)
        c += [0] * (self.degree - len(c))
        return tuple(c)

    def __call__(self, x):
        if isinstance(x, FqElement):
            if x.field != self:
                raise DomainError("element of a different field")
            return x.rep
        if isinstance(x, tuple):
            return self._pack(c % self.p for c in x)
        return self._pack([self.base(x)])

    def gen(self):
        """Class of x (the generator of the power basis)."""
        if self.degree == 1:
            return self._pack(_fp_rem([0, 1], self.modulus, self.p))
        return self._pack([0, 1])

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        return self._pack(_fp_mulmod(list(a), list(b), list(self.modulus), self.p))

    def pow(self, a, e: int):
        return self._pack(_fp_powmod(list(a), e, list(self.modulus), self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @staticmethod
    def is_zero(a) -> bool:
        return not any(a)

    def code(self, a) -> int:
        return sum(c * self.p ** i for i, c in enumerate(a))

    def from_code(self, n: int):
        out = []
        for _ in range(self.degree):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def elements(self):
        for n in range(self.order):
            yield self.from_code(n)

    def is_square(self, a) -> bool:
        if self.is_zero(a) or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def _find_nonresidue(self):
        if self._nonresidue is None:
            for n in range(1, self.order):
                z = self.from_code(n)
                if not self.is_square(z):
                    self._nonresidue = z
                    break
        return self._nonresidue

    def sqrt(self, a):
        """Square root with the smaller integer code, or None for non-squares."""
        if self.p == 2:
            raise DomainError("square roots in characteristic 2 are not supported")
        if self.is_zero(a):
            return self.zero
        if not self.is_square(a):
            return None
        q = self.order
        s, m = 0, q - 1
        while m % 2 == 0:
            m //= 2
            s += 1
        z = self._find_nonresidue()
        c = self.pow(z, m)
        t = self.pow(a, m)
        r = self.pow(a, (m + 1) // 2)
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            s, c = i, self.mul(b, b)
            t, r = self.mul(t, c), self.mul(r, b)
        r2 = self.neg(r)
        return r if self.code(r) <= self.code(r2) else r2

    def to_str(self, a) -> str:
        return "[" + ",".join(str(c) for c in a) + "]"

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GFq", self.p, self.modulus))


def GF(p: int, k: int = 1):
    """Prime field for k = 1, extension field otherwise."""
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, k)


@dataclass(frozen=True)
class FqElement:
    """An element of F_{p^k} with operator overloading."""

    field: ExtensionField
    rep: tuple

    @classmethod
    def of(cls, field: ExtensionField, x) -> "FqElement":
        return cls(field, field(x))

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise DomainError("elements of different fields")
            return other.rep
        return self.field(other)

    def __add__(self, other):
        return FqElement(self.field, self.field.add(self.rep, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElement(self.field, self.field.sub(self.rep, self._coerce(other)))

    def __rsub__(self, other):
        return FqElement(self.field, self.field.sub(self._coerce(other), self.rep))

    def __mul__(self, other):
        return FqElement(self.field, self.field.mul(self.rep, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.rep))

    def __truediv__(self, other):
        return FqElement(self.field, self.field.div(self.rep, self._coerce(other)))

    def __pow__(self, e: int):
        if e < 0:
            return FqElement(self.field, self.field.pow(self.field.inv(self.rep), -e))
        return FqElement(self.field, self.field.pow(self.rep, e))

    def __eq__(self, other):
        try:
            return self.rep == self._coerce(other)
        except (DomainError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.rep))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.rep)

    def __repr__(self):
        return f"{self.field!r}{list(self.rep)}"


def fq_sqrt(a: FqElement):
    """Square root of ``a`` in its field (least code), or None for a non-residue."""
    r = a.field.sqrt(a.rep)
    return None if r is None else FqElement(a.field, r)
