"""Divisor-class arithmetic on Jacobians of even-degree hyperelliptic curves.

Model: y^2 = f(x), deg f = 2g + 2 with g even and lc(f) a square, so both
points at infinity are rational.  Write W = inf+ + inf- (the class of any
fibre P + P^- of the x-map) and D_inf = (g/2) W.

A class is stored as ``(u, v, m)`` meaning

    [ D0 + m*inf+ + (g - deg u - m)*inf- - D_inf ],

where D0 is the affine effective divisor with Mumford data (u, v),
u monic, deg v < deg u, u | f - v^2, and 0 <= m <= g - deg u.  Every class
has exactly one such representative.

Internally the reduction works with the "balance" delta = 2m - g + deg u,
for which the class reads D0 + ((delta - d)/2) inf+ + ((-delta - d)/2) inf-
with d = deg u; delta is additive under composition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QQ, Polynomial, poly_xgcd
from .algebra.fields import DomainError
from .curves import CurvePoint, HyperellipticCurve


class JacobianError(ArithmeticError):
    pass


class ReductionError(JacobianError):
    """The chosen representative does not reduce cleanly modulo p."""


@dataclass(frozen=True)
class MumfordDivisor:
    u: Polynomial
    v: Polynomial
    m: int

    @property
    def degree(self) -> int:
        return self.u.degree

    def to_json(self):
        return {"u": self.u.to_json(), "v": self.v.to_json(), "m": self.m}


def validate(C: HyperellipticCurve, u: Polynomial, v: Polynomial) -> bool:
    """True iff u is monic and f - v^2 = 0 mod u."""
    if not u or u.leading() != u.K.one:
        return False
    return not ((C.f - v * v) % u)


class Jacobian:
    def __init__(self, curve: HyperellipticCurve):
        if curve.genus % 2:
            raise JacobianError("balanced arithmetic needs even genus")
        if curve.sqrt_lc() is None:
            raise DomainError("leading coefficient must be a square in the base field")
        self.curve = curve
        self.K = curve.K
        self.g = curve.genus
        self.f = curve.f
        self.Vp = curve.vplus()
        rest = self.f - self.Vp * self.Vp
        # order of vanishing of y - V+ at inf+ (and of y + V+ at inf-)
        self._zero_order = self.g + 1 - rest.degree
        self._one = Polynomial.constant(1, self.K)
        self._zero = Polynomial((), self.K)

    # -- constructors ------------------------------------------------------
    def zero(self) -> "JacobianPoint":
        return JacobianPoint(self, self._one, self._zero, self.g // 2)

    def point(self, u, v, m=None, check=True) -> "JacobianPoint":
        """Class of (u, v, m); m defaults to the balanced value (g - deg u) / 2."""
        K = self.K
        u = u if isinstance(u, Polynomial) else Polynomial(u, K)
        v = v if isinstance(v, Polynomial) else Polynomial(v, K)
        if u.K != K or v.K != K:
            u, v = u.change_ring(K), v.change_ring(K)
        if check and not validate(self.curve, u, v):
            raise JacobianError("f - v^2 is not divisible by u")
        d = u.degree
        if m is None:
            if (self.g - d) % 2:
                raise JacobianError("no balanced default for odd g - deg u")
            m = (self.g - d) // 2
        delta = 2 * m - self.g + d
        return self._normalize(u.monic(), v % u, delta)

    def from_balance(self, u, v, delta) -> "JacobianPoint":
        """Class of D0 + ((delta-d)/2) inf+ + ((-delta-d)/2) inf-, any integer delta."""
        if (delta - u.degree) % 2:
            raise JacobianError("delta must have the parity of deg u")
        return self._normalize(u.monic(), v % u, delta)

    def embed(self, P: CurvePoint) -> "JacobianPoint":
        """[P - inf-]."""
        if P.is_infinity:
            if P.sign > 0:
                return self._normalize(self._one, self._zero, 2)
            return self.zero()
        K = self.K
        x0, y0 = K(P.x), K(P.y)
        if K.sub(K.mul(y0, y0), self.f(x0)) != K.zero:
            raise JacobianError("point is not on the curve")
        u = Polynomial([K.neg(x0), K.one], K)
        return self._normalize(u, Polynomial([y0], K), 1)

    # -- the group law -----------------------------------------------------
    def _compose(self, u1, v1, u2, v2):
        d0, e1, e2 = poly_xgcd(u1, u2)
        if d0.degree == 0:
            # coprime supports: no cancellation
            u = u1 * u2
            v = (v1 * e2 * u2 + v2 * e1 * u1) % u
            return u, v
        d, c1, c2 = poly_xgcd(d0, v1 + v2)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2).exact_div(d * d)
        v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + self.f)).exact_div(d) % u
        return u, v

    def _pole_order(self, r: Polynomial) -> int:
        if r:
            return r.degree
        return -self._zero_order

    def _step(self, u, v, delta, plus: bool):
        """One reduction step through the function y - v' with v' = +-V+ + ... ."""
        Vp = self.Vp
        if plus:
            vn = Vp + (v - Vp) % u
        else:
            vn = -Vp + (v + Vp) % u
        e_plus = self._pole_order(Vp - vn)
        e_minus = self._pole_order(Vp + vn)
        w = self.f - vn * vn
        if w.degree != e_plus + e_minus:
            raise JacobianError("pole bookkeeping mismatch")
        u1 = w.exact_div(u).monic()
        v1 = (-vn) % u1
        return u1, v1, delta + e_plus - e_minus

    def _normalize(self, u, v, delta) -> "JacobianPoint":
        g = self.g
        for _ in range(64 + 4 * abs(delta)):
            d = u.degree
            if d <= g and abs(delta) <= g - d:
                m = (delta + g - d) // 2
                return JacobianPoint(self, u, v, m)
            if d > g:
                plus = delta >= 0
            else:
                plus = delta > g - d
            u, v, delta = self._step(u, v, delta, plus)
        raise JacobianError("reduction did not terminate")

    def add(self, P: "JacobianPoint", Q: "JacobianPoint") -> "JacobianPoint":
        if P.J is not Q.J and P.J.curve != Q.J.curve:
            raise JacobianError("points on different Jacobians")
        u, v = self._compose(P.u, P.v, Q.u, Q.v)
        return self._normalize(u, v, P.delta + Q.delta)

    def neg(self, P: "JacobianPoint") -> "JacobianPoint":
        return JacobianPoint(self, P.u, (-P.v) % P.u if P.u.degree else P.v,
                             self.g - P.u.degree - P.m)

    def mul(self, P: "JacobianPoint", n: int) -> "JacobianPoint":
        if n < 0:
            return self.mul(self.neg(P), -n)
        result = self.zero()
        base = P
        while n:
            if n & 1:
                result = self.add(result, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return result

    def rebase_at_infinity(self, P: "JacobianPoint", k=None):
        """Effective (A, B) of degree k = g with P = [D - k*inf-].

        Returns the Mumford pair of D.  Raises JacobianError when the class
        has no representative of that shape with deg A = k.
        """
        k = self.g if k is None else k
        u, v, delta = P.u, P.v, P.delta
        # target: D0 + 0*inf+ - k*inf-, i.e. deg u = k and delta = k
        for _ in range(16):
            if u.degree == k and delta == k:
                return u, v
            if delta > k:
                u, v, delta = self._step(u, v, delta, True)
            else:
                u, v, delta = self._step(u, v, delta, False)
            if u.degree > k:
                continue
        raise JacobianError("class is not representable as [D - k*inf-] with deg D = k")

    # -- reduction modulo p ------------------------------------------------
    def reduction(self, p: int) -> "Jacobian":
        """The Jacobian of the reduced curve (cached per prime)."""
        cache = self.__dict__.setdefault("_reductions", {})
        if p not in cache:
            cache[p] = Jacobian(self.curve.reduce(p))
        return cache[p]

    def reduce_mod_p(self, P: "JacobianPoint", p: int) -> "JacobianPoint":
        """rho_p(P) for a class over Q and a good odd prime p.

        Affine points of the support whose x-coordinate is not p-integral
        reduce to inf+ or inf-; they are split off by a p-adic slope
        factorization of u, and their branches are read from a trace.  If
        the remaining affine part still has no p-integral Mumford pair, the
        class is shifted by small multiples of [inf+ - inf-] and the shift is
        subtracted again over F_p.
        """
        if self.K != QQ:
            raise JacobianError("reduction needs a class over Q")
        if p == 2:
            raise JacobianError("p must be odd")
        Jp = self.reduction(p)
        try:
            return _reduce_class(self, Jp, P, p)
        except ReductionError:
            pass
        E = self.embed(CurvePoint.infinity(1))
        Ep = Jp.embed(CurvePoint.infinity(1))
        for j in (1, -1, 2, -2, 3, -3):
            try:
                shifted = _reduce_class(self, Jp, P + E * j, p)
            except ReductionError:
                continue
            return shifted - Ep * j
        raise ReductionError(f"no p-integral representative found at p = {p}")

    def __eq__(self, other):
        return isinstance(other, Jacobian) and other.curve == self.curve

    def __hash__(self):
        return hash(self.curve)

    def __repr__(self):
        return f"Jacobian({self.curve!r})"


class JacobianPoint:
    __slots__ = ("J", "u", "v", "m")

    def __init__(self, J: Jacobian, u: Polynomial, v: Polynomial, m: int):
        self.J, self.u, self.v, self.m = J, u, v, m

    @property
    def delta(self) -> int:
        return 2 * self.m - self.J.g + self.u.degree

    @property
    def mumford(self) -> MumfordDivisor:
        return MumfordDivisor(self.u, self.v, self.m)

    def is_zero(self) -> bool:
        return self.u.degree == 0 and self.m == self.J.g // 2

    def __add__(self, other):
        return self.J.add(self, other)

    def __neg__(self):
        return self.J.neg(self)

    def __sub__(self, other):
        return self.J.add(self, self.J.neg(other))

    def __mul__(self, n: int):
        return self.J.mul(self, n)

    __rmul__ = __mul__

    def key(self):
        return (self.u.c, self.v.c, self.m)

    def __eq__(self, other):
        return isinstance(other, JacobianPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<u={self.u!r}, v={self.v!r}, m={self.m}>"

    def to_json(self):
        return self.mumford.to_json()


def jacobian_point_from_json(J: Jacobian, data) -> JacobianPoint:
    K = J.K
    return J.point(Polynomial([K(s) for s in data["u"]], K),
                   Polynomial([K(s) for s in data["v"]], K), data["m"])


def _is_p_integral(poly: Polynomial, p: int) -> bool:
    return all(c.denominator % p for c in poly.c)


def _reduce_class(J: Jacobian, Jp: Jacobian, P: JacobianPoint, p: int) -> JacobianPoint:
    Fp = Jp.K
    u, v, delta = P.u, P.v, P.delta
    if _is_p_integral(u, p):
        if not _is_p_integral(v, p):
            raise ReductionError("v is not p-integral")
        return Jp.from_balance(u.change_ring(Fp), v.change_ring(Fp), delta)
    from .padic.factor import hensel_factor, root_valuations
    from .padic.numbers import vp
    from .padic.series import power_sums_from_coefficients
    d = u.degree
    vals, _ = root_valuations(u, p)
    k = sum(1 for x in vals if x < 0)
    # R(t) = t^d u(1/t) as a primitive integer polynomial; its roots 1/x_i
    R = [u.c[d - i] for i in range(d + 1)]
    den = 1
    for c in R:
        den = den * int(c.denominator) // _gcd(den, int(c.denominator))
    Ri = [int(c * den) for c in R]
    cont = 0
    for c in Ri:
        cont = _gcd(cont, c)
    Ri = [c // cont for c in Ri]
    if any(c % p for c in Ri[:k]) or Ri[k] % p == 0:
        raise ReductionError("Newton polygon and residue disagree")
    V = max([0] + [-vp(c, p) for c in v.c if c])
    N = V + 4
    A, B = hensel_factor(Ri, [0] * k + [1], [c % p for c in Ri[k:]], p, N)
    A = A + [0] * (k + 1 - len(A))
    B = B + [0] * (d - k + 1 - len(B))
    mod = p ** N
    # trace of y t^(g+1) over the large roots: equals c (k+ - k-) mod p
    g = J.g
    Apoly = Polynomial(A, QQ)
    sums = power_sums_from_coefficients(Apoly, g + 1) if k else []
    tr = QQ.zero
    for j, vj in enumerate(v.c):
        m = g + 1 - j
        if vj and m >= 1:
            tr = tr + vj * sums[m - 1]
        elif vj and m == 0:
            tr = tr + vj * k
    if tr != 0 and vp(tr, p) < 0:
        raise ReductionError("branch trace is not p-integral")
    s = int(Fp(tr) * Fp.inv(Fp(J.curve.sqrt_lc()))) if k else 0
    diff = s if s <= p // 2 else s - p
    if abs(diff) > k or (k - diff) % 2:
        raise ReductionError("branch count inconsistent")
    k_plus = (k + diff) // 2
    new_delta = delta + k_plus - (k - k_plus)
    # small part: u_s(x) = x^(d-k) B(1/x) / B(0)
    b0 = B[0] % mod
    inv_b0 = pow(b0, -1, mod)
    us = [B[d - k - i] * inv_b0 % mod for i in range(d - k + 1)]
    vs = _rem_mod_pN(v, us, p, V, N)
    if vs is None:
        raise ReductionError("affine part has no p-integral Mumford pair")
    us_p = Polynomial([c % p for c in us], Fp)
    vs_p = Polynomial([c % p for c in vs], Fp)
    if (Jp.f - vs_p * vs_p) % us_p:
        raise ReductionError("reduced pair is not a Mumford pair")
    return Jp.from_balance(us_p, vs_p, new_delta)


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _rem_mod_pN(v: Polynomial, us, p, V, N):
    """v mod us, computed on p^V v mod p^(N+V); None if not p-integral."""
    M = p ** (N + V)
    scale = p ** V
    w = [int(mpq_to_mod(c * scale, M)) for c in v.c]
    n = len(us) - 1
    w = w + [0] * max(0, n - len(w))
    for i in range(len(w) - 1, n - 1, -1):
        c = w[i] % M
        if c:
            for j in range(n + 1):
                w[i - n + j] -= c * us[j]
    rem = [c % M for c in w[:n]]
    if any(c % scale for c in rem):
        return None
    return [c // scale for c in rem]


def mpq_to_mod(c, M):
    return int(c.numerator) * pow(int(c.denominator), -1, M) % M


def mordell_weil_generators(J: Jacobian):
    """Q1, Q2 on C_1 (Mumford data over Q)."""
    P = lambda cs: Polynomial([QQ(c) for c in cs], QQ)
    Q1 = J.point(P(["4/5", 0, 4, 0, 1]), P([0, "-96/5", 0, -16]))
    Q2 = J.point(P(["36/5", "48/5", "36/5", "24/5", 1]),
                 P(["-2336/25", "-1728/25", "-976/25", "-1712/75"]))
    return Q1, Q2
