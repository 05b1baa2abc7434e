"""Finite extensions Q_p(theta) = Q_p[x]/(A) for small irreducible A.

Elements are kept as exact rational polynomials reduced modulo A, so
arithmetic never loses precision.  Valuations come from norms:
v(alpha) = v_p(N(alpha)) / deg A, valid because A is irreducible over Q_p.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from gmpy2 import mpq

from ..algebra import QQ, Polynomial, resultant
from .factor import FactorError, _divmod_monic, _int_coeffs, root_valuations
from .numbers import vp


class LocalFieldError(ArithmeticError):
    pass


def _has_quadratic_factor_mod(F, p, k):
    """Exhaustive: does some monic quadratic divide F modulo p^k (k >= 1)?"""
    cands = [(a, b) for a in range(p) for b in range(p)
             if not any(_divmod_monic(F, [b, a, 1], p)[1])]
    for j in range(2, k + 1):
        m = p ** j
        step = p ** (j - 1)
        nxt = []
        for a0, b0 in cands:
            for s, t in product(range(p), repeat=2):
                a, b = a0 + s * step, b0 + t * step
                if not any(_divmod_monic(F, [b, a, 1], m)[1]):
                    nxt.append((a, b))
        cands = nxt
        if not cands:
            return False, j
    return bool(cands), k


def irreducibility_certificate(A: Polynomial, p: int, max_k: int = 12) -> str:
    """A short reason why monic integral A (degree <= 4) is irreducible over Q_p.

    Raises LocalFieldError if no certificate is found.
    """
    F = _int_coeffs(A)
    n = len(F) - 1
    if F[-1] != 1:
        raise LocalFieldError("defining polynomial must be monic")
    if n == 1:
        return "linear"
    if n > 4:
        raise LocalFieldError("only degree <= 4 is supported")
    vals, zeros = root_valuations(A, p)
    if zeros:
        raise LocalFieldError("A(0) = 0")
    if all(v.denominator == n for v in vals):
        return f"Newton polygon: one slope of denominator {n}"
    if all(v.denominator != 1 for v in vals):
        # no root in Q_p, hence no linear or cubic factor
        if n <= 3:
            return "no root of integral valuation"
        found, k = _has_quadratic_factor_mod(F, p, max_k)
        if not found:
            return f"no root of integral valuation; no monic quadratic factor mod {p}^{k}"
    raise LocalFieldError("could not certify irreducibility")


class LocalField:
    """Q_p(theta) with theta a root of the monic integral polynomial A.

    uniformizer and residue_generator are optional hints (as rational
    polynomials in theta); the structure is verified, not trusted:
    v(uniformizer) = 1/e and residue_generator has residue degree f with
    e f = deg A.
    """

    def __init__(self, A: Polynomial, p: int, uniformizer=None, residue_generator=None,
                 residue_degree=1):
        self.A = A.change_ring(QQ) if A.K is not QQ else A
        self.p = p
        self.n = self.A.degree
        self.certificate = irreducibility_certificate(self.A, p)
        theta = self.gen()
        self.pi = self(uniformizer) if uniformizer is not None else theta
        self.w = self(residue_generator) if residue_generator is not None else self.one()
        self.f = residue_degree
        if self.n % self.f:
            raise LocalFieldError("residue degree must divide the degree")
        self.e = self.n // self.f
        if self.pi.valuation() != Fraction(1, self.e):
            raise LocalFieldError("uniformizer hint has the wrong valuation")
        self._check_residue_degree()

    def _check_residue_degree(self):
        w = self.w
        if self.f == 1:
            return
        if w.valuation() != 0:
            raise LocalFieldError("residue generator must be a unit")
        q = self.p ** self.f
        if (w ** q - w).valuation() <= 0:
            raise LocalFieldError("residue generator not in F_{p^f}")
        for d in range(1, self.f):
            if self.f % d == 0 and (w ** (self.p ** d) - w).valuation() > 0:
                raise LocalFieldError("residue generator lies in a smaller field")

    def __call__(self, c):
        if isinstance(c, LocalFieldElement):
            return c
        if isinstance(c, Polynomial):
            return LocalFieldElement(self, c.change_ring(QQ) % self.A)
        if isinstance(c, (list, tuple)):
            return LocalFieldElement(self, Polynomial([mpq(x) for x in c], QQ) % self.A)
        return LocalFieldElement(self, Polynomial([mpq(c)], QQ))

    def gen(self):
        return self([0, 1])

    def one(self):
        return self(1)

    def residue_representatives(self):
        """Elements of O_K, one per residue class of O_K / pi."""
        powers = [self.w ** i for i in range(self.f)]
        for digits in product(range(self.p), repeat=self.f):
            s = self(0)
            for d, wi in zip(digits, powers):
                if d:
                    s = s + wi * d
            yield s

    def is_square(self, z: "LocalFieldElement") -> bool:
        """Exact decision: is z a square in this field?"""
        if z.is_zero():
            return True
        vz = z.valuation() * self.e
        if vz.denominator != 1:
            raise LocalFieldError("valuation not in (1/e)Z: defining data inconsistent")
        k = int(vz)
        if k % 2:
            return False
        u = z * self.pi ** (-k) if k else z
        # unit u is a square iff u = y0^2 mod pi^(2 e v(2) + 1), y0 mod pi^(e v(2) + 1)
        t = self.e * (1 if self.p == 2 else 0)
        bound = Fraction(2 * t + 1, self.e)
        reps = list(self.residue_representatives())
        pis = [self.pi ** i for i in range(t + 1)]
        for digits in product(reps, repeat=t + 1):
            y = digits[0]
            if y.is_zero():
                continue
            for d, pw in zip(digits[1:], pis[1:]):
                y = y + d * pw
            if (u - y * y).valuation() >= bound:
                return True
        return False


class LocalFieldElement:
    __slots__ = ("K", "poly")

    def __init__(self, K: LocalField, poly: Polynomial):
        self.K = K
        self.poly = poly

    def _co(self, other):
        return self.K(other)

    def __add__(self, other):
        return LocalFieldElement(self.K, self.poly + self._co(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return LocalFieldElement(self.K, self.poly - self._co(other).poly)

    def __neg__(self):
        return LocalFieldElement(self.K, -self.poly)

    def __mul__(self, other):
        return LocalFieldElement(self.K, (self.poly * self._co(other).poly) % self.K.A)

    __rmul__ = __mul__

    def inverse(self):
        from ..algebra import poly_xgcd
        g, s, _ = poly_xgcd(self.poly, self.K.A)
        if g.degree != 0:
            raise ZeroDivisionError("not invertible")
        return LocalFieldElement(self.K, s % self.K.A)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.K.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def is_zero(self) -> bool:
        return not self.poly

    def norm(self):
        if self.is_zero():
            return mpq(0)
        return mpq(resultant(self.K.A, self.poly))

    def valuation(self) -> Fraction:
        nm = self.norm()
        if nm == 0:
            raise LocalFieldError("valuation of zero")
        return Fraction(vp(nm, self.K.p), self.K.n)

    def __eq__(self, other):
        return isinstance(other, LocalFieldElement) and self.K is other.K and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"LocalFieldElement({self.poly!r})"
