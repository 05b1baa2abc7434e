"""Truncated power series in one variable, and Newton power sums."""

from __future__ import annotations

from gmpy2 import mpq

from ..algebra import Polynomial


class SeriesError(ArithmeticError):
    pass


def _is_zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


class TruncatedSeries:
    """sum c_k t^k + O(t^order).

    Coefficients are mpq by default; PadicNumber coefficients also work, and
    their own precision records any loss from dividing by k + 1.
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs, order, var="t"):
        cs = list(coeffs)[:order]
        if cs and not hasattr(cs[0], "is_zero"):
            cs = [mpq(c) for c in cs]
        while len(cs) < order:
            cs.append(cs[0] * 0 if cs else mpq(0))
        self.coeffs = tuple(cs)
        self.order = order
        self.var = var

    @classmethod
    def from_polynomial(cls, f: Polynomial, order, var="t"):
        return cls([mpq(c) for c in f.c], order, var)

    def __getitem__(self, k):
        return self.coeffs[k] if k < self.order else None

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order, self.var)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([a * other for a in self.coeffs], self.order, self.var)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            s = a[0] * b[k]
            for i in range(1, k + 1):
                s = s + a[i] * b[k - i]
            out.append(s)
        return TruncatedSeries(out, n, self.var)

    __rmul__ = __mul__

    def inverse(self):
        a = self.coeffs
        if not a or _is_zero(a[0]):
            raise SeriesError("constant term is not a unit")
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, self.order):
            s = a[1] * b[k - 1]
            for i in range(2, k + 1):
                s = s + a[i] * b[k - i]
            b.append(-s * inv0)
        return TruncatedSeries(b, self.order, self.var)

    def sqrt(self, root0=None):
        """Square root with constant term root0 (found for rational squares)."""
        a = self.coeffs
        if not a or _is_zero(a[0]):
            raise SeriesError("constant term is not a unit")
        if root0 is None:
            root0 = _rational_sqrt(a[0])
        b = [root0]
        two_b0 = 2 * root0
        for k in range(1, self.order):
            s = a[k]
            for i in range(1, k):
                s = s - b[i] * b[k - i]
            b.append(s / two_b0)
        return TruncatedSeries(b, self.order, self.var)

    def compose(self, other: "TruncatedSeries"):
        """self(other(t)); other must have zero constant term."""
        if not _is_zero(other.coeffs[0]):
            raise SeriesError("inner series must vanish at 0")
        n = min(self.order, other.order)
        out = TruncatedSeries([self.coeffs[-1] * 0], n, self.var)
        for c in reversed(self.coeffs[:n]):
            out = out * other + c
        return out

    def integrate(self):
        """sum c_k t^k  ->  sum c_k t^(k+1)/(k+1), known to order + 1."""
        zero = self.coeffs[0] * 0
        out = [zero] + [c / (k + 1) for k, c in enumerate(self.coeffs)]
        return TruncatedSeries(out, self.order + 1, self.var)

    def shift(self, k):
        """t^k * self (k >= 0)."""
        zero = self.coeffs[0] * 0
        return TruncatedSeries([zero] * k + list(self.coeffs), self.order + k, self.var)

    def truncate(self, order):
        return TruncatedSeries(self.coeffs[:order], min(order, self.order), self.var)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(_is_zero(a - b) for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __repr__(self):
        terms = [f"{c}*{self.var}^{k}" for k, c in enumerate(self.coeffs) if not _is_zero(c)]
        return " + ".join(terms + [f"O({self.var}^{self.order})"])

    def to_json(self):
        return {"var": self.var, "order": self.order, "coeffs": [str(c) for c in self.coeffs]}


def _rational_sqrt(c):
    from gmpy2 import is_square, isqrt
    c = mpq(c)
    n, d = c.numerator, c.denominator
    if c < 0 or not is_square(n) or not is_square(d):
        raise SeriesError(f"constant term {c} is not a rational square")
    return mpq(isqrt(n), isqrt(d))


def power_sums_from_coefficients(a: Polynomial, count: int):
    """[p_1, ..., p_count], power sums of the roots of the monic polynomial a."""
    if not a or a.leading() != a.K.one:
        raise ValueError("polynomial must be monic")
    K = a.K
    n = a.degree
    # x^n + e1' x^(n-1) + ... : c[n-i] is the coefficient of x^(n-i)
    c = a.c
    coef = [c[n - i] for i in range(n + 1)]   # coef[0] = 1
    sums = []
    for m in range(1, count + 1):
        s = K.zero
        if m <= n:
            s = K.mul(K(m), coef[m])
        for i in range(1, min(m - 1, n) + 1):
            s = K.add(s, K.mul(coef[i], sums[m - i - 1]))
        sums.append(K.neg(s))
    return sums
