"""Dense univariate polynomials over a coefficient domain.

Coefficients are stored in ascending degree order with no trailing zeros,
so the zero polynomial has an empty coefficient tuple and degree
:data:`ZERO_DEGREE`.
"""

from __future__ import annotations

from .fields import QQ, DomainError

ZERO_DEGREE = -1


class Polynomial:
    __slots__ = ("K", "c")

    def __init__(self, coeffs=(), K=QQ, _raw=False):
        self.K = K
        if _raw:
            self.c = coeffs
            return
        c = [K(a) for a in coeffs]
        while c and K.is_zero(c[-1]):
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _make(cls, c, K):
        c = list(c)
        while c and K.is_zero(c[-1]):
            c.pop()
        return cls(tuple(c), K, _raw=True)

    @classmethod
    def constant(cls, a, K=QQ):
        return cls([a], K)

    @classmethod
    def x(cls, K=QQ):
        return cls([K.zero, K.one], K, _raw=True)

    @classmethod
    def from_roots(cls, roots, K=QQ):
        p = cls.constant(1, K)
        for r in roots:
            p = p * cls([K.neg(K(r)), K.one], K)
        return p

    # -- basic accessors ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.K.zero

    def __bool__(self):
        return bool(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def leading(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def coeffs(self) -> list:
        return list(self.c)

    def map(self, K2, fn=None) -> "Polynomial":
        fn = fn or K2
        return Polynomial._make([fn(a) for a in self.c], K2)

    def change_ring(self, K2) -> "Polynomial":
        return Polynomial._make([K2(a) for a in self.c], K2)

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([other], self.K)
        if other.K != self.K:
            raise DomainError(f"domain mismatch: {self.K!r} vs {other.K!r}")
        return other

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        K, a, b = self.K, self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = K.add(out[i], y)
        return Polynomial._make(out, K)

    __radd__ = __add__

    def __neg__(self):
        K = self.K
        return Polynomial(tuple(K.neg(a) for a in self.c), K, _raw=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        a, b, K = self.c, other.c, self.K
        if not a or not b:
            return Polynomial((), K, _raw=True)
        add, mul = K.add, K.mul
        out = [K.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial._make(out, K)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        K = self.K
        s = K(s)
        return Polynomial._make([K.mul(s, a) for a in self.c], K)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Polynomial.constant(1, self.K), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.K == other.K and self.c == other.c
        return self == Polynomial([other], self.K)

    def __hash__(self):
        return hash((self.K, self.c))

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if self.K.is_zero(a):
                continue
            s = self.K.to_str(a)
            terms.append(s if i == 0 else f"({s})*x^{i}")
        return " + ".join(terms)

    # -- division ----------------------------------------------------------
    def divrem(self, other):
        other = self._check(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        K = self.K
        inv = K.inv(other.c[-1])
        r = list(self.c)
        db = len(other.c) - 1
        q = [K.zero] * max(len(r) - db, 0)
        b = other.c
        sub, mul = K.sub, K.mul
        for k in range(len(r) - 1 - db, -1, -1):
            coef = mul(r[k + db], inv)
            q[k] = coef
            if K.is_zero(coef):
                continue
            for j in range(db + 1):
                r[k + j] = sub(r[k + j], mul(coef, b[j]))
        return Polynomial._make(q, K), Polynomial._make(r[:db], K)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exact_div(self, other):
        q, r = self.divrem(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.K.inv(self.c[-1]))

    # -- evaluation and calculus -------------------------------------------
    def __call__(self, x):
        K = self.K
        acc = K.zero
        for a in reversed(self.c):
            acc = K.add(K.mul(acc, x), a)
        return acc

    def eval_generic(self, x, one=1):
        """Horner evaluation at ``x`` of any type supporting + and *."""
        acc = 0 * one
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self):
        K = self.K
        return Polynomial._make([K.mul(K(i), a) for i, a in enumerate(self.c)][1:], K)

    def compose(self, other):
        other = self._check(other)
        acc = Polynomial((), self.K, _raw=True)
        for a in reversed(self.c):
            acc = acc * other + Polynomial([a], self.K)
        return acc

    def reverse(self, n=None):
        """x^n * p(1/x), with n defaulting to the degree."""
        n = self.degree if n is None else n
        c = list(self.c) + [self.K.zero] * (n + 1 - len(self.c))
        return Polynomial._make(c[::-1], self.K)

    def shift(self, k: int):
        """Multiply by x^k."""
        if not self.c:
            return self
        return Polynomial(tuple([self.K.zero] * k) + self.c, self.K, _raw=True)

    def truncate(self, n: int):
        return Polynomial._make(self.c[:n], self.K)

    def content(self):
        """gcd of integer coefficients (rational inputs with denominator 1)."""
        from math import gcd
        g = 0
        for a in self.c:
            g = gcd(g, int(a))
        return g

    def to_json(self):
        return [self.K.to_str(a) for a in self.c]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both inputs are zero)."""
    b = a._check(b)
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    b = a._check(b)
    K = a.K
    one = Polynomial.constant(1, K)
    zero = Polynomial((), K, _raw=True)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1:
        q, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = K.inv(r0.leading())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def resultant(a: Polynomial, b: Polynomial):
    """Resultant over a field via the Euclidean remainder sequence."""
    b = a._check(b)
    K = a.K
    if not a or not b:
        return K.zero
    acc = K.one
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            lead = b.c[0]
            r = K.one
            for _ in range(m):
                r = K.mul(r, lead)
            return K.mul(acc, r)
        r = a % b
        if not r:
            return K.zero
        k = r.degree
        if (m * n) % 2:
            acc = K.neg(acc)
        lead = b.leading()
        for _ in range(m - k):
            acc = K.mul(acc, lead)
        a, b = b, r


def discriminant(f: Polynomial):
    n = f.degree
    K = f.K
    res = resultant(f, f.derivative())
    d = K.div(res, f.leading())
    if (n * (n - 1) // 2) % 2:
        d = K.neg(d)
    return d


def poly_arith(a: Polynomial, b, op: str):
    """Dispatch for the basic binary operations by name."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divrem(b)
    if op == "gcd":
        return poly_gcd(a, b)
    if op == "resultant":
        return resultant(a, b)
    if op == "eval":
        return a(a.K(b))
    raise ValueError(f"unknown operation {op!r}")


def sturm_sequence(f: Polynomial):
    seq = [f, f.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        seq.append(-r)
    return seq[:-1]


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: Polynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots in (lo, hi]; None means the infinite end."""
    seq = sturm_sequence(f)

    def at(x, side):
        if x is None:
            # sign at +-infinity is sign(lc) * (+-1)^deg
            return [p.leading() * (1 if side > 0 or p.degree % 2 == 0 else -1) for p in seq]
        return [p(f.K(x)) for p in seq]

    return _sign_changes(at(lo, -1)) - _sign_changes(at(hi, +1))


def root_bound(f: Polynomial):
    """Cauchy bound: every real root lies in [-B, B]."""
    lc = abs(f.leading())
    return 1 + max((abs(a) / lc for a in f.c[:-1]), default=0)
