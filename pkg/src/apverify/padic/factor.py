"""Factoring over Z_p: Hensel lifting of coprime factorizations, Newton
polygons, and the quadratic-factor search over Z_2."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from gmpy2 import mpq, mpz, invert

from ..algebra import QQ, Polynomial, PrimeField, poly_xgcd
from .numbers import PrecisionError, vp


class FactorError(ArithmeticError):
    pass


def newton_polygon(coeffs, p):
    """Slopes of the p-adic Newton polygon as (slope, length) pairs.

    coeffs are ascending rationals.  A slope s means roots of valuation -s.
    Returned in increasing slope order, i.e. from largest root valuation
    down.
    """
    pts = [(i, vp(c, p)) for i, c in enumerate(coeffs) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return out


def root_valuations(f: Polynomial, p):
    """Multiset of valuations of the roots of f over an algebraic closure of Q_p."""
    vals = []
    zeros = next(i for i, c in enumerate(f.c) if c != 0)
    coeffs = list(f.c[zeros:])
    for s, n in newton_polygon(coeffs, p):
        vals += [-s] * n
    return vals, zeros


# -- integer polynomials mod p^N (ascending lists) ----------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod(a, m):
    return _trim([int(x % m) for x in a])


def _mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod(out, m)


def _add(a, b, m):
    n = max(len(a), len(b))
    return _mod([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], m)


def _sub(a, b, m):
    return _add(a, [-x for x in b], m)


def _divmod_monic(a, b, m):
    """Division by a monic b modulo m."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _mod(a, m)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % m
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _mod(q, m), _mod(a[:db], m)


def _to_fp(a, p):
    F = PrimeField(p)
    return Polynomial([x % p for x in a], F)


def hensel_factor(f, g0, h0, p, N):
    """Lift f = g0*h0 mod p (g0 monic, gcd(g0, h0) = 1 mod p) to mod p^N.

    f is an integer coefficient list with p not dividing its leading
    coefficient.  Returns (g, h) integer lists with g monic, f = g*h mod p^N.
    Linear lifting, one p-adic digit per step.
    """
    gb, hb = _to_fp(g0, p), _to_fp(h0, p)
    d, s, t = poly_xgcd(gb, hb)
    if d.degree != 0:
        raise FactorError("factors are not coprime modulo p")
    s = [int(c) for c in s.c]
    t = [int(c) for c in t.c]
    g, h = _mod(g0, p), _mod(h0, p)
    if _sub(f, _mul(g, h, p), p):
        raise FactorError("f != g0*h0 modulo p")
    pk = 1
    for k in range(1, N):
        pk *= p
        m = pk * p
        e = _sub(f, _mul(g, h, m), m)
        if any(c % pk for c in e):
            raise FactorError("lifting invariant broken")
        e = [c // pk for c in e]
        q, r = _divmod_monic(_mul(t, e, p), _mod(g, p), p)
        dh = _add(_mul(s, e, p), _mul(q, h, p), p)
        g = _add(g, [pk * c for c in r], m)
        h = _add(h, [pk * c for c in dh], m)
    return g, h


def _int_coeffs(f):
    if isinstance(f, Polynomial):
        cs = [mpq(c) for c in f.c]
    else:
        cs = [mpq(c) for c in f]
    if any(c.denominator != 1 for c in cs):
        raise FactorError("integer coefficients required")
    return [int(c) for c in cs]


def _remainder_and_jacobian(F, a, b, m):
    q = [b, a, 1]
    Q, r = _divmod_monic(F, q, m)
    r = r + [0] * (2 - len(r))
    _, rb = _divmod_monic(Q, q, m)
    _, ra = _divmod_monic([0] + Q, q, m)
    rb = [-c for c in rb + [0] * (2 - len(rb))]
    ra = [-c for c in ra + [0] * (2 - len(ra))]
    return Q, r, ra, rb


def _v2(n, cap):
    n = int(n)
    if n == 0:
        return cap
    return min((n & -n).bit_length() - 1, cap)


def find_quadratic_factor_2adic(f, precision=20, seed_bits=6, max_steps=64):
    """Monic quadratic factor of f over Z_2, to 2^precision.

    Exhaustive seeds (a, b) mod 2^seed_bits for x^2 + a x + b, each refined
    by two-variable Newton iteration on the remainder of f modulo the
    quadratic.  Returns (q, c) with f = lc(f) q c mod 2^precision, None when
    no seed converges; raises PrecisionError if a seed converges to the
    requested precision without a Hensel certificate (v(r) > 2 v(det)).
    """
    F = _int_coeffs(f)
    if len(F) - 1 < 2:
        raise FactorError("degree must be at least 2")
    lc = F[-1]
    if lc % 2 == 0:
        raise FactorError("leading coefficient must be a 2-adic unit")
    P = Polynomial
    if len(F) - 1 == 2:
        inv = mpq(1, lc)
        return P([c * inv for c in F], QQ), P([lc], QQ)
    W = 2 * precision + 16
    m = 1 << W
    uncertified = False
    seen = set()
    for a0, b0 in product(range(1 << seed_bits), repeat=2):
        a, b = a0, b0
        for _ in range(max_steps):
            Q, r, ra, rb = _remainder_and_jacobian(F, a, b, m)
            vr = min(_v2(r[0], W), _v2(r[1], W))
            # J = [[dr0/da, dr0/db], [dr1/da, dr1/db]]
            det = (ra[0] * rb[1] - rb[0] * ra[1]) % m
            vd = _v2(det, W)
            if vr >= precision:
                key = (a % (1 << precision), b % (1 << precision))
                if vr > 2 * vd and vd < W:
                    inv = mpq(1, lc)
                    q = P([key[1], key[0], 1], QQ)
                    c = P([mpq(x % (1 << precision)) * inv for x in Q], QQ)
                    return q, c
                if key not in seen:
                    seen.add(key)
                    uncertified = True
                break
            if vd >= W or vd > vr:
                break  # Newton step would leave Z_2
            # Delta = -J^{-1} r, computed 2-adically
            unit, k = det >> vd, vd
            inv = int(invert(unit, m))
            da = -(rb[1] * r[0] - rb[0] * r[1])
            db = -(-ra[1] * r[0] + ra[0] * r[1])
            if _v2(da % m, W) < k or _v2(db % m, W) < k:
                break
            a = (a + (da >> k) * inv) % m if da % (1 << k) == 0 else None
            b = (b + (db >> k) * inv) % m if db % (1 << k) == 0 else None
            if a is None or b is None:
                break
    if uncertified:
        raise PrecisionError("Newton reached the target precision without a Hensel certificate")
    return None
