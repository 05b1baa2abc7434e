"""The curves C_j : y^2 = f_j(x) attached to progressions (a^2, b^2, c^2, d^5).

Writing b + c*sqrt(2) = (1 + sqrt(2))^j (u + v*sqrt(2))^5 = g_j(u,v) + h_j(u,v)*sqrt(2)
gives a^2 = 2 g_j^2 - h_j^2, which dehomogenizes to y^2 = f_j(x) with
x = u/v and y = a/v^5.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from gmpy2 import iroot, mpz

from .algebra import QQ, Polynomial, discriminant
from .algebra.fields import DomainError


class CurveError(ValueError):
    pass


# --- Z[sqrt 2] as pairs (r, s) = r + s*sqrt(2) ------------------------------

def zsqrt2_mul(a, b):
    return (a[0] * b[0] + 2 * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def zsqrt2_pow(a, n: int):
    """a^n for n >= 0; negative n uses (1 + sqrt2)^-1 = -1 + sqrt2 style units only."""
    if n < 0:
        norm = a[0] * a[0] - 2 * a[1] * a[1]
        if norm not in (1, -1):
            raise CurveError("only units can be raised to negative powers")
        a = (a[0] * norm, -a[1] * norm)
        n = -n
    out = (1, 0)
    for _ in range(n):
        out = zsqrt2_mul(out, a)
    return out


# --- binary forms as coefficient lists: F(u, v) = sum c[i] u^i v^(deg-i) -----

@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple  # coeffs[i] multiplies u^i v^(degree - i)

    def __call__(self, u, v):
        return sum(c * u ** i * v ** (self.degree - i) for i, c in enumerate(self.coeffs))

    def dehomogenize(self) -> Polynomial:
        return Polynomial(self.coeffs, QQ)


def _fifth_power_forms(j: int):
    """g_j, h_j with (1+sqrt2)^j (u + v sqrt2)^5 = g_j + h_j sqrt2."""
    unit = zsqrt2_pow((1, 1), j)
    # (u + v sqrt2)^5 = sum_k C(5,k) u^k (v sqrt2)^(5-k)
    from math import comb
    g = [0] * 6
    h = [0] * 6
    for k in range(6):
        e = 5 - k  # power of v*sqrt2
        coef = comb(5, k) * 2 ** (e // 2)
        part = (coef, 0) if e % 2 == 0 else (0, coef)
        r, s = zsqrt2_mul(unit, part)
        g[k] += r
        h[k] += s
    return BinaryForm(5, tuple(g)), BinaryForm(5, tuple(h))


@dataclass(frozen=True)
class CurveFamily:
    j: int
    g: BinaryForm
    h: BinaryForm
    f: Polynomial

    @property
    def curve(self) -> "HyperellipticCurve":
        return HyperellipticCurve(self.f)

    def to_json(self):
        return {"j": self.j, "f": [int(a) for a in self.f.coeffs()],
                "g": list(self.g.coeffs), "h": list(self.h.coeffs)}


def build_family(j: int) -> CurveFamily:
    if not -2 <= j <= 2:
        raise CurveError(f"j = {j} outside [-2, 2]")
    g, h = _fifth_power_forms(j)
    gx, hx = g.dehomogenize(), h.dehomogenize()
    f = 2 * gx * gx - hx * hx
    return CurveFamily(j, g, h, f)


def reflection_check(j: int) -> bool:
    """f_{-j}(x) == f_j(-x) exactly."""
    f = build_family(j).f
    fm = build_family(-j).f
    return fm == f.compose(Polynomial([0, -1]))


def sqrt2_split_check(j: int) -> bool:
    """f_j = (sqrt2 g_j + h_j)(sqrt2 g_j - h_j) expanded in Z[sqrt2][x]."""
    fam = build_family(j)
    gx, hx = fam.g.coeffs, fam.h.coeffs
    left = [(hx[i], gx[i]) for i in range(6)]       # h + g sqrt2
    right = [(-hx[i], gx[i]) for i in range(6)]     # -h + g sqrt2
    prod = [(0, 0)] * 11
    for i in range(6):
        for k in range(6):
            t = zsqrt2_mul(left[i], right[k])
            prod[i + k] = (prod[i + k][0] + t[0], prod[i + k][1] + t[1])
    if any(s for _, s in prod):
        return False
    return [r for r, _ in prod] == [int(a) for a in fam.f.coeffs()] + [0] * (11 - len(fam.f))


# --- hyperelliptic curves ---------------------------------------------------

class HyperellipticCurve:
    """y^2 = f(x) with f squarefree of even degree 2g + 2 over a field K.

    The two points at infinity are rational over K iff lc(f) is a square;
    infinity_plus is the branch on which y / x^(g+1) tends to the chosen
    square root ``c`` of lc(f).
    """

    def __init__(self, f: Polynomial, K=None, sqrt_lc=None):
        if K is not None and f.K != K:
            f = f.change_ring(K)
        self.f = f
        self.K = f.K
        n = f.degree
        if n < 2 or n % 2:
            raise CurveError("only even-degree models are supported")
        self.genus = (n - 2) // 2
        self._sqrt_lc = sqrt_lc
        self._vplus = None

    @property
    def leading_coefficient(self):
        return self.f.leading()

    def sqrt_lc(self):
        """Chosen square root of the leading coefficient, or None."""
        if self._sqrt_lc is None:
            lc = self.f.leading()
            K = self.K
            if K == QQ:
                num, den = int(lc.numerator), int(lc.denominator)
                rn, rd = isqrt(num) if num >= 0 else -1, isqrt(den)
                if rn >= 0 and rn * rn == num and rd * rd == den:
                    self._sqrt_lc = QQ(rn) / rd
            else:
                self._sqrt_lc = K.sqrt(lc)
        return self._sqrt_lc

    def has_rational_infinity(self) -> bool:
        return self.sqrt_lc() is not None

    def vplus(self) -> Polynomial:
        """V+ : the degree g+1 polynomial with lc = sqrt(lc f) and deg(f - V+^2) <= g."""
        if self._vplus is None:
            c = self.sqrt_lc()
            if c is None:
                raise DomainError("leading coefficient is not a square in the base field")
            K, g = self.K, self.genus
            n = self.f.degree
            F = [self.f[n - i] for i in range(g + 2)]  # reversed top coefficients
            s = [c]
            two_c = K.mul(K(2), c)
            for k in range(1, g + 2):
                acc = F[k]
                for i in range(1, k):
                    acc = K.sub(acc, K.mul(s[i], s[k - i]))
                s.append(K.div(acc, two_c))
            self._vplus = Polynomial([s[g + 1 - i] for i in range(g + 2)], K)
        return self._vplus

    def is_on_curve(self, pt: "CurvePoint") -> bool:
        if pt.is_infinity:
            return self.has_rational_infinity()
        K = self.K
        return K.sub(K.mul(pt.y, pt.y), self.f(pt.x)) == K.zero

    def reduce(self, p: int) -> "HyperellipticCurve":
        from .algebra import PrimeField
        Fp = PrimeField(p)
        fp = self.f.change_ring(Fp)
        if fp.degree != self.f.degree:
            raise CurveError(f"leading coefficient vanishes mod {p}")
        c = None
        if self._sqrt_lc is not None or self.sqrt_lc() is not None:
            c = Fp(self.sqrt_lc())
        return HyperellipticCurve(fp, sqrt_lc=c)

    def points_at_infinity(self):
        if not self.has_rational_infinity():
            return []
        return [CurvePoint.infinity(+1), CurvePoint.infinity(-1)]

    def affine_points(self):
        """All affine points over a finite base field."""
        K = self.K
        out = []
        for x in K.elements():
            fx = self.f(x)
            y = K.sqrt(fx)
            if y is None:
                continue
            out.append(CurvePoint(x, y))
            if not K.is_zero(y):
                out.append(CurvePoint(x, K.neg(y)))
        return out

    def rational_points(self):
        """All points over a finite base field, infinity first."""
        return self.points_at_infinity() + self.affine_points()

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f!r})"

    def to_json(self):
        return {"f": self.f.to_json(), "genus": self.genus}


@dataclass(frozen=True)
class CurvePoint:
    """Affine (x, y), or a point at infinity with sign +1 / -1."""

    x: object = None
    y: object = None
    sign: int = 0

    @classmethod
    def infinity(cls, sign: int) -> "CurvePoint":
        if sign not in (1, -1):
            raise CurveError("infinity sign must be +1 or -1")
        return cls(None, None, sign)

    @property
    def is_infinity(self) -> bool:
        return self.sign != 0

    def negate(self, K=QQ) -> "CurvePoint":
        """Image under the hyperelliptic involution (y -> -y, inf+ <-> inf-)."""
        if self.is_infinity:
            return CurvePoint.infinity(-self.sign)
        return CurvePoint(self.x, K.neg(self.y), 0)

    def __repr__(self):
        if self.is_infinity:
            return "inf+" if self.sign > 0 else "inf-"
        return f"({self.x}, {self.y})"

    def to_json(self, K=QQ):
        if self.is_infinity:
            return {"infinity": "+" if self.sign > 0 else "-"}
        return {"x": K.to_str(self.x), "y": K.to_str(self.y)}


# --- progressions -----------------------------------------------------------

@dataclass(frozen=True)
class ProgressionWitness:
    a: int
    b: int
    c: int
    d: int
    j: int
    u: int
    v: int

    def terms(self):
        return (self.a ** 2, self.b ** 2, self.c ** 2, self.d ** 5)

    def to_json(self):
        return {k: getattr(self, k) for k in ("a", "b", "c", "d", "j", "u", "v")}


def _is_progression(t) -> bool:
    return t[1] - t[0] == t[2] - t[1] == t[3] - t[2]


def _int_fifth_root(n: int):
    neg = n < 0
    r = int(iroot(mpz(abs(n)), 5)[0])
    if r ** 5 != abs(n):
        return None
    return -r if neg else r


def check_witness(w: ProgressionWitness):
    """Raise CurveError unless w satisfies all progression/parametrization invariants."""
    t = w.terms()
    if not _is_progression(t):
        raise CurveError("terms do not form an arithmetic progression")
    if gcd(t[0], t[1]) != 1:
        raise CurveError("progression is not primitive")
    if not all(n % 2 for n in (w.a, w.b, w.c, w.d)):
        raise CurveError("a, b, c, d must all be odd")
    if not -2 <= w.j <= 2:
        raise CurveError("j outside [-2, 2]")
    if gcd(w.u, w.v) != 1:
        raise CurveError("u, v not coprime")
    if w.u % 2 == 0 or (w.v - w.j - 1) % 2:
        raise CurveError("parity constraint u odd, v = j+1 mod 2 violated")
    fam = build_family(w.j)
    if fam.g(w.u, w.v) != w.b or fam.h(w.u, w.v) != w.c:
        raise CurveError("b, c do not match g_j(u,v), h_j(u,v)")


def progression_to_point(w: ProgressionWitness):
    check_witness(w)
    if w.v == 0:
        # y/x^5 = (a/v^5)/(u/v)^5 = a/u^5
        sign = 1 if w.a * w.u ** 5 > 0 else -1
        return w.j, CurvePoint.infinity(sign)
    return w.j, CurvePoint(QQ(w.u) / w.v, QQ(w.a) / w.v ** 5)


def point_to_progression(j: int, P: CurvePoint):
    """Recover (a, b, c, d) from a rational point of C_j, or None if not primitive."""
    fam = build_family(j)
    if P.is_infinity:
        u, v = 1, 0
        lc = int(fam.f.leading())
        r = isqrt(lc)
        if r * r != lc:
            raise CurveError("points at infinity are not rational on this curve")
        a = P.sign * r
    else:
        x = QQ(P.x)
        u, v = int(x.numerator), int(x.denominator)
        a5 = QQ(P.y) * v ** 5
        if a5.denominator != 1:
            raise CurveError("y * v^5 is not integral")
        a = int(a5)
    b, c = fam.g(u, v), fam.h(u, v)
    d5 = 2 * c * c - b * b
    d = _int_fifth_root(d5)
    if d is None:
        raise CurveError("2c^2 - b^2 is not a fifth power")
    if 2 * b * b - c * c != a * a:
        raise CurveError("a^2 != 2b^2 - c^2")
    w = ProgressionWitness(a, b, c, d, j, u, v)
    t = w.terms()
    if not _is_progression(t) or gcd(t[0], t[1]) != 1:
        return None
    return w


# --- metadata ---------------------------------------------------------------

def trial_factor(n: int, bound: int = 10 ** 6):
    """Factor |n| by trial division; returns (factors dict, unfactored cofactor)."""
    n = abs(int(n))
    out = {}
    d = 2
    while d * d <= n and d <= bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1 and d * d > n:
        out[n] = out.get(n, 0) + 1
        n = 1
    return out, n


def bad_primes(C: HyperellipticCurve) -> set:
    """Primes dividing 2 * disc(f) * lc(f) for this integral model."""
    f = C.f
    if any(QQ(a).denominator != 1 for a in f.coeffs()):
        raise CurveError("model must have integer coefficients")
    disc = discriminant(f)
    if disc == 0:
        raise CurveError("f is not squarefree")
    primes = {2}
    for n in (int(disc), int(f.leading())):
        fac, rest = trial_factor(n)
        if rest != 1:
            raise CurveError(f"could not fully factor {n}")
        primes |= set(fac)
    return primes


def curve(j: int) -> HyperellipticCurve:
    return build_family(j).curve
