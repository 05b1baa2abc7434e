"""Local solubility over R and Q_p, small-height point search, and the
2-adic checks on the divisors D1, D2, D3 of C_1."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np
from gmpy2 import mpq, mpz, is_square as mpz_is_square, isqrt as mpz_isqrt

from .algebra import QQ, Polynomial, count_real_roots, discriminant
from .curves import CurvePoint, HyperellipticCurve, curve
from .padic import LocalField, PrecisionError, is_square_rational_qp, vp


@dataclass
class LocalSolubilityResult:
    place: object            # prime or "inf"
    soluble: object          # True, False, or None (inconclusive)
    witness: object = None
    depth: int = 0

    def to_json(self):
        return {"place": str(self.place), "soluble": self.soluble,
                "witness": None if self.witness is None else str(self.witness), "depth": self.depth}


def has_real_points(C: HyperellipticCurve) -> LocalSolubilityResult:
    f = C.f
    if f.leading() > 0:
        return LocalSolubilityResult("inf", True, "lc > 0: f(x) > 0 for large |x|")
    n = count_real_roots(f)
    if n:
        return LocalSolubilityResult("inf", True, f"f has {n} real roots")
    return LocalSolubilityResult("inf", False, "lc < 0 and no real roots: f < 0 on R")


def _int_poly(f: Polynomial):
    cs = [mpq(c) for c in f.c]
    if any(c.denominator != 1 for c in cs):
        raise ValueError("integral model required")
    return [int(c) for c in cs]


def _shift(coeffs, a, s):
    """Coefficients of g(z) = f(a + s z)."""
    out = [0] * len(coeffs)
    # Horner in the variable z
    for c in reversed(coeffs):
        # out = out * (a + s z) + c
        new = [0] * len(coeffs)
        for i, x in enumerate(out):
            if x:
                new[i] += x * a
                if i + 1 < len(new):
                    new[i + 1] += x * s
        new[0] += c
        out = new
    return out


def _vp_int(n, p):
    return vp(n, p) if n else 10 ** 9


def _disc_search(coeffs, p, center, k, depth, limit, slack):
    """Search the disc center + p^k Z_p for x with f(x) a square.

    Returns (True, x) when found, (False, None) when the disc provably has
    no point, or (None, None) when the depth limit was hit.
    """
    g = _shift(coeffs, center, p ** k)
    c0 = g[0]
    if c0 == 0 or is_square_rational_qp(c0, p):
        return True, (center, k)
    v0 = _vp_int(c0, p)
    rest = min(_vp_int(c, p) for c in g[1:]) if len(g) > 1 else 10 ** 9
    if rest >= v0 + slack:
        # every value in the disc is c0 times a square-class-preserving unit
        return False, None
    if depth >= limit:
        return None, None
    undecided = False
    for i in range(p):
        ok, x = _disc_search(coeffs, p, center + i * p ** k, k + 1, depth + 1, limit, slack)
        if ok:
            return True, x
        if ok is None:
            undecided = True
    return (None if undecided else False), None


def has_qp_points(C: HyperellipticCurve, p: int, depth_limit=None) -> LocalSolubilityResult:
    """Decide C(Q_p) != {} by residue-disc subdivision over both charts."""
    f = _int_poly(C.f)
    n = len(f) - 1
    if depth_limit is None:
        d = discriminant(C.f)
        depth_limit = 2 * (vp(d, p) + 4) if d else 16
    slack = 3 if p == 2 else 1
    lc = f[-1]
    if is_square_rational_qp(lc, p):
        return LocalSolubilityResult(p, True, "points at infinity (lc is a square)", 0)
    ok, x = _disc_search(f, p, 0, 0, 0, depth_limit, slack)
    if ok:
        return LocalSolubilityResult(p, True, f"x = {x[0]} + O({p}^{x[1]}), f(x) a square", x[1])
    # the chart at infinity: t = 1/x in p Z_p, y^2 = t^n f(1/t)
    rev = list(reversed(f))
    ok2, t = _disc_search(rev, p, 0, 1, 0, depth_limit, slack)
    if ok2:
        return LocalSolubilityResult(p, True, f"1/x = {t[0]} + O({p}^{t[1]})", t[1])
    if ok is None or ok2 is None:
        return LocalSolubilityResult(p, None, "depth limit reached", depth_limit)
    return LocalSolubilityResult(p, False, "every residue disc excluded", depth_limit)


def _small_primes(n):
    out, c = [], 3
    while len(out) < n:
        if all(c % q for q in range(3, isqrt(c) + 1, 2)):
            out.append(c)
        c += 2
    return out


def search_rational_points(C: HyperellipticCurve, height_bound: int = 1000):
    """All points with x = u/v, gcd(u, v) = 1, max(|u|, |v|) <= bound, plus rational infinity."""
    f = _int_poly(C.f)
    n = len(f) - 1
    pts = list(C.points_at_infinity())
    primes = _small_primes(12)
    qr = {q: np.zeros(q, dtype=bool) for q in primes}
    for q in primes:
        qr[q][[(i * i) % q for i in range(q)]] = True
    us = np.arange(-height_bound, height_bound + 1, dtype=np.int64)
    half = (n + 1) // 2
    for v in range(1, height_bound + 1):
        mask = np.gcd(us, v) == 1
        for q in primes:
            um, vm = us % q, v % q
            val = np.zeros_like(us)
            vpow = [pow(vm, n - i, q) for i in range(n + 1)]
            for i in range(n, -1, -1):
                val = (val * um + (f[i] % q) * vpow[i]) % q
            mask &= qr[q][val]
            if not mask.any():
                break
        for u in us[mask]:
            u = int(u)
            F = sum(c * u ** i * v ** (n - i) for i, c in enumerate(f))
            if F < 0 or not mpz_is_square(mpz(F)):
                continue
            r = int(mpz_isqrt(mpz(F)))
            x = QQ(u) / v
            y = QQ(r) / mpq(v) ** half
            pts.append(CurvePoint(x, y))
            if r:
                pts.append(CurvePoint(x, -y))
    for P in pts:
        if not P.is_infinity and not C.is_on_curve(P):
            raise AssertionError("search produced a point off the curve")
    return pts


D2_POLY = (6, -2, 1)                 # x^2 - 2x + 6, ascending
D3_POLY = (36, 0, 12, 4, 1)          # x^4 + 4x^3 + 12x^2 + 36
D3_UNIFORMIZER = (0, mpq(1, 2), 0, mpq(1, 4))   # (theta^3 + 2 theta) / 4


def verify_q2_divisor_witnesses(f1: Polynomial = None) -> dict:
    """Support of D1, D2, D3 consists of Q_2-points of C_1 (exact checks)."""
    f1 = curve(1).f if f1 is None else f1
    out = {}
    xs = [mpq(1, 2), mpq(1, 4)]
    out["D1"] = {"holds": all(is_square_rational_qp(f1(QQ(x)), 2) for x in xs),
                 "values": [str(f1(QQ(x))) for x in xs]}
    K2 = LocalField(Polynomial([QQ(c) for c in D2_POLY], QQ), 2)
    z2 = K2(f1)
    out["D2"] = {"holds": K2.is_square(z2), "certificate": K2.certificate,
                 "e": K2.e, "f": K2.f, "valuation": str(z2.valuation())}
    K3 = LocalField(Polynomial([QQ(c) for c in D3_POLY], QQ), 2,
                    uniformizer=Polynomial([QQ(c) for c in D3_UNIFORMIZER], QQ))
    z3 = K3(f1)
    out["D3"] = {"holds": K3.is_square(z3), "certificate": K3.certificate,
                 "e": K3.e, "f": K3.f, "valuation": str(z3.valuation())}
    out["holds"] = all(out[k]["holds"] for k in ("D1", "D2", "D3"))
    return out
