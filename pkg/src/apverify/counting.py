"""Point counts over F_{p^k}, L-polynomials, and the group J(F_p)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb, gcd

import numpy as np

from .algebra import ExtensionField, Polynomial, PrimeField
from .algebra.fields import default_modulus, is_irreducible_mod_p
from .curves import HyperellipticCurve, bad_primes, trial_factor
from .jacobian import Jacobian, JacobianPoint


class CountingError(ArithmeticError):
    pass


# -- vectorized F_{p^k} arithmetic: elements are columns of a (k, n) array ----

def _vec_mul(a, b, p, modulus):
    k = a.shape[0]
    if k == 1:
        return (a * b) % p
    c = np.zeros((2 * k - 1, a.shape[1]), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            c[i + j] += a[i] * b[j]
    c %= p
    for i in range(2 * k - 2, k - 1, -1):
        top = c[i]
        for j in range(k):
            if modulus[j]:
                c[i - k + j] -= top * modulus[j]
        c[i - k:i] %= p
    return c[:k] % p


def _digits(codes, p, k):
    out = np.empty((k, codes.shape[0]), dtype=np.int64)
    n = codes.copy()
    for i in range(k):
        out[i] = n % p
        n //= p
    return out


def _codes(vec, p):
    k = vec.shape[0]
    out = np.zeros(vec.shape[1], dtype=np.int64)
    for i in range(k - 1, -1, -1):
        out = out * p + vec[i]
    return out


def count_points(C: HyperellipticCurve, p: int, k: int = 1, chunk: int = 1 << 18) -> int:
    """#C(F_{p^k}) for the smooth model of y^2 = f(x), both points at infinity included."""
    if p in bad_primes(C):
        raise CountingError(f"{p} is a bad prime")
    if not 1 <= k <= 4:
        raise CountingError("k must be between 1 and 4")
    modulus = default_modulus(p, k)
    q = p ** k
    f = [int(PrimeField(p)(c)) for c in C.f.c]
    allx = np.arange(q, dtype=np.int64)
    X = _digits(allx, p, k)
    is_sq = np.zeros(q, dtype=bool)
    for s in range(0, q, chunk):
        sq = _vec_mul(X[:, s:s + chunk], X[:, s:s + chunk], p, modulus)
        is_sq[_codes(sq, p)] = True
    total = 0
    for s in range(0, q, chunk):
        x = X[:, s:s + chunk]
        y = np.zeros_like(x)
        for c in reversed(f):
            y = _vec_mul(y, x, p, modulus)
            y[0] = (y[0] + c) % p
        codes = _codes(y, p)
        zero = codes == 0
        total += int(zero.sum()) + 2 * int((is_sq[codes] & ~zero).sum())
    lc = f[-1]
    lc_square = k % 2 == 0 or pow(lc, (p - 1) // 2, p) == 1
    return total + (2 if lc_square else 0)


def count_points_naive(C: HyperellipticCurve, p: int) -> int:
    """Reference count over F_p by direct enumeration (test oracle)."""
    Fp = PrimeField(p)
    fp = C.f.change_ring(Fp)
    n = 0
    for x in range(p):
        fx = fp(x)
        n += 1 if fx == 0 else (2 if Fp.is_square(fx) else 0)
    lc = int(fp.leading())
    return n + (2 if Fp.is_square(lc) else 0)


@dataclass(frozen=True)
class LPolynomial:
    p: int
    coeffs: tuple  # a_0 .. a_2g, ascending in T

    @property
    def genus(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def __call__(self, t):
        out = 0
        for a in reversed(self.coeffs):
            out = out * t + a
        return out

    def satisfies_functional_equation(self) -> bool:
        g, a, p = self.genus, self.coeffs, self.p
        return all(a[2 * g - i] == p ** (g - i) * a[i] for i in range(g + 1))

    def within_weil_bounds(self) -> bool:
        n = 2 * self.genus
        return all(a * a <= comb(n, i) ** 2 * self.p ** i for i, a in enumerate(self.coeffs))

    def to_json(self):
        return {"p": self.p, "coeffs": [str(a) for a in self.coeffs]}


def l_polynomial_from_counts(p: int, counts) -> LPolynomial:
    """L(T) from N_1..N_g via Newton's identities and the functional equation."""
    g = len(counts)
    s = [p ** (k + 1) + 1 - n for k, n in enumerate(counts)]
    a = [1]
    for i in range(1, g + 1):
        acc = sum(s[j - 1] * a[i - j] for j in range(1, i + 1))
        if acc % i:
            raise CountingError("counts are inconsistent (non-integral L-coefficient)")
        a.append(-acc // i)
    for i in range(g + 1, 2 * g + 1):
        a.append(p ** (i - g) * a[2 * g - i])
    L = LPolynomial(p, tuple(a))
    if not L.within_weil_bounds():
        raise CountingError("L-polynomial violates the Weil bounds")
    return L


def l_polynomial(C: HyperellipticCurve, p: int) -> LPolynomial:
    return l_polynomial_from_counts(p, [count_points(C, p, k) for k in range(1, C.genus + 1)])


def jacobian_order(C: HyperellipticCurve, p: int) -> int:
    n = l_polynomial(C, p)(1)
    if n <= 0:
        raise CountingError("non-positive group order")
    return n


# -- group structure ------------------------------------------------------------

def random_point(J: Jacobian, rng: random.Random) -> JacobianPoint:
    """A random class: an irreducible place of degree d <= g plus an infinity twist."""
    Fp = J.K
    p = Fp.p
    g = J.g
    while True:
        d = rng.randint(0, g)
        m = rng.randint(0, g - d)
        if d == 0:
            return J.point(Polynomial([1], Fp), Polynomial([], Fp), m)
        coeffs = [rng.randrange(p) for _ in range(d)] + [1]
        if not is_irreducible_mod_p(coeffs, p):
            continue
        u = Polynomial(coeffs, Fp)
        E = ExtensionField(p, d, modulus=coeffs)
        a = E(tuple((J.f % u).c))
        if not E.is_square(a):
            continue
        v = Polynomial(list(E.sqrt(a)), Fp)
        if rng.random() < 0.5:
            v = -v
        return J.point(u, v, m)


def element_order(P: JacobianPoint, N: int) -> int:
    """Order of P given that N * P = 0."""
    order = N
    for q in trial_factor(N, 10 ** 6)[0]:
        while order % q == 0 and (P * (order // q)).is_zero():
            order //= q
    return order


class _SylowTable:
    """An enumerated l-group with a basis and coordinates for each element."""

    def __init__(self, ell, basis, orders, table):
        self.ell = ell
        self.basis = basis
        self.orders = orders
        self.table = table  # key -> coordinate tuple

    def coordinates(self, P):
        try:
            return self.table[P.key()]
        except KeyError:
            raise CountingError("element outside the enumerated Sylow subgroup") from None


def _span(J, basis, orders):
    """Dictionary key -> coordinates for the subgroup with the given independent basis."""
    table = {J.zero().key(): tuple(0 for _ in basis)}
    elems = [(J.zero(), tuple(0 for _ in basis))]
    for idx, (b, n) in enumerate(zip(basis, orders)):
        new = []
        for P, c in elems:
            Q = P
            for t in range(1, n):
                Q = Q + b
                cc = list(c)
                cc[idx] = t
                cc = tuple(cc)
                table[Q.key()] = cc
                new.append((Q, cc))
        elems += new
    return table, [P for P, _ in elems]


def _sylow(J, N, ell, e, rng, max_size=10 ** 4):
    size = ell ** e
    if size > max_size:
        raise CountingError(f"Sylow {ell}-subgroup too large to enumerate")
    cof = N // size
    basis, orders = [], []
    table, elems = _span(J, basis, orders)
    attempts = 0
    while len(table) < size:
        attempts += 1
        if attempts > 2000:
            raise CountingError("sampling failed to generate the Sylow subgroup")
        # greedy: best candidate by order in the quotient by the current span
        cands = []
        for _ in range(8):
            x = random_point(J, rng) * cof
            n = 1
            y = x
            while y.key() not in table:
                y = y + x
                n += 1
            cands.append((n, x, y))
        n, x, y = max(cands, key=lambda t: t[0])
        if n == 1:
            continue
        # n*x = y lies in the span; y = sum c_i b_i with n | c_i (greedy max order)
        c = table[y.key()]
        fix = J.zero()
        ok = True
        for ci, b in zip(c, basis):
            if ci % n:
                ok = False
                break
            fix = fix + b * (ci // n)
        if not ok:
            continue
        x = x - fix
        basis.append(x)
        orders.append(n)
        table, elems = _span(J, basis, orders)
    order = sorted(range(len(basis)), key=lambda i: orders[i])
    basis = [basis[i] for i in order]
    orders = [orders[i] for i in order]
    table, _ = _span(J, basis, orders)
    return _SylowTable(ell, basis, orders, table)


@dataclass
class GroupStructure:
    p: int
    order: int
    invariants: tuple
    generators: tuple
    sylow: dict = field(repr=False, default_factory=dict)

    def element(self, coords):
        J = self.generators[0].J if self.generators else None
        out = J.zero()
        for c, G in zip(coords, self.generators):
            out = out + G * c
        return out

    def to_json(self):
        return {"p": self.p, "order": self.order, "invariants": list(self.invariants),
                "generators": [G.to_json() for G in self.generators]}


def group_structure(C: HyperellipticCurve, p: int, seed: int = 0, N=None) -> GroupStructure:
    """Invariant factors and generators of J(F_p) (C is over Q or already over F_p)."""
    Cp = C if isinstance(C.K, PrimeField) else C.reduce(p)
    Cq = C if not isinstance(C.K, PrimeField) else None
    if N is None:
        N = jacobian_order(Cq if Cq is not None else Cp, p)
    J = Jacobian(Cp)
    factors, rest = trial_factor(N, 10 ** 6)
    if rest != 1:
        raise CountingError("group order does not factor by trial division")
    rng = random.Random(seed)
    sylow = {}
    for ell, e in sorted(factors.items()):
        sylow[ell] = _sylow(J, N, ell, e, rng)
    rank = max(len(s.basis) for s in sylow.values())
    gens, invs = [], []
    for r in range(rank):
        G, d = J.zero(), 1
        for ell, s in sylow.items():
            pad = rank - len(s.basis)
            if r >= pad:
                G = G + s.basis[r - pad]
                d *= s.orders[r - pad]
        gens.append(G)
        invs.append(d)
    S = GroupStructure(p, N, tuple(invs), tuple(gens), sylow)
    for G, d in zip(gens, invs):
        if element_order(G, N) != d:
            raise CountingError("generator order mismatch")
    prod = 1
    for d in invs:
        prod *= d
    if prod != N:
        raise CountingError("invariant factors do not multiply to #J")
    return S


def dlog(P: JacobianPoint, S: GroupStructure):
    """Coordinates of P on S.generators, each modulo its invariant factor."""
    N = S.order
    rank = len(S.invariants)
    residues = [[] for _ in range(rank)]
    for ell, s in S.sylow.items():
        size = 1
        for o in s.orders:
            size *= o
        cof = N // size
        # idempotent for the l-part
        e = cof * pow(cof, -1, size)
        c = s.coordinates(P * e)
        pad = rank - len(s.basis)
        for i, ci in enumerate(c):
            residues[pad + i].append((ci, s.orders[i]))
    out = []
    for r in residues:
        x, m = 0, 1
        for ci, n in r:
            # CRT
            t = ((ci - x) * pow(m, -1, n)) % n if n > 1 else 0
            x, m = x + m * t, m * n
        out.append(x % m if m > 1 else 0)
    return tuple(out)


def torsion_and_independence(C1: HyperellipticCurve, Q1, Q2, orders=None):
    """Report: torsion-freeness from coprime orders at 7 and 41 and independence mod 7."""
    N7 = orders[7] if orders else jacobian_order(C1, 7)
    N41 = orders[41] if orders else jacobian_order(C1, 41)
    J = Q1.J
    S7 = group_structure(C1, 7, N=N7)
    a, b = dlog(J.reduce_mod_p(Q1, 7), S7), dlog(J.reduce_mod_p(Q2, 7), S7)
    cyclic = _is_cyclic_image([a, b], S7.invariants)
    single = _is_cyclic_image([a], S7.invariants)
    return {
        "order_7": N7,
        "order_41": N41,
        "gcd": gcd(N7, N41),
        "torsion_free": gcd(N7, N41) == 1,
        "image_cyclic": cyclic,
        "image_Q1_cyclic": single,
        "independent": gcd(N7, N41) == 1 and not cyclic,
    }


def subgroup_invariants(vectors, invariants):
    """Invariant factors of the subgroup of prod Z/d_i generated by the vectors."""
    from .algebra import IntegerLattice, invariant_factors
    n = len(invariants)
    rels = [[d if i == j else 0 for j in range(n)] for i, d in enumerate(invariants)]
    gens = [list(v) for v in vectors]
    # subgroup H = (gens + rels) / rels; its structure is that of Z^k / kernel
    from .algebra import left_kernel
    ker = left_kernel(gens + rels)
    k = len(gens)
    proj = [row[:k] for row in ker]
    lat = IntegerLattice.from_generators(proj, k) if proj else IntegerLattice(k, ())
    d = [x for x in invariant_factors([list(r) for r in lat.basis])] if lat.basis else []
    return tuple(x for x in d if x != 1)


def _is_cyclic_image(vectors, invariants) -> bool:
    return len(subgroup_invariants(vectors, invariants)) <= 1
