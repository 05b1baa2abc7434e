"""Integer matrices: Hermite and Smith normal forms, sublattices of Z^n.

Matrices are lists of rows of Python ints.  Lattices are row lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def transpose(m):
    return [list(r) for r in zip(*m)] if m else []


def determinant(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf_with_transform(m):
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U*m = H.  The nonzero rows of H
    come first, pivots are positive and entries above a pivot are reduced
    into [0, pivot).
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(map(int, r)) for r in m]
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, s, t = xgcd(a, b)
            x, y = a // g, b // g
            hr, hi = h[r], h[i]
            h[r] = [s * p + t * q for p, q in zip(hr, hi)]
            h[i] = [-y * p + x * q for p, q in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [s * p + t * q for p, q in zip(ur, ui)]
            u[i] = [-y * p + x * q for p, q in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-v for v in h[r]]
            u[r] = [-v for v in u[r]]
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [p - q * s for p, s in zip(h[i], h[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        r += 1
    return h, u


def hnf(m):
    return hnf_with_transform(m)[0]


def left_kernel(m):
    """Basis (HNF) of {x in Z^rows : x*m = 0}."""
    h, u = hnf_with_transform(m)
    ker = [u[i] for i, row in enumerate(h) if not any(row)]
    if not ker:
        return []
    return [r for r in hnf(ker) if any(r)]


def smith_normal_form(m):
    """Return (U, D, V) with U*m*V = D diagonal, d1 | d2 | ..., U and V unimodular."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(rows, cols)):
        while True:
            # pivot: smallest nonzero |entry| in the trailing block
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, d, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = d[i][t] // piv
                if q:
                    d[i] = [a - q * b for a, b in zip(d[i], d[t])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[t])]
                if d[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = d[t][j] // piv
                if q:
                    for row in d:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if d[t][j]:
                    clean = False
            if not clean:
                continue
            # divisibility condition against the trailing block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            d[t] = [a + b for a, b in zip(d[t], d[bad])]
            u[t] = [a + b for a, b in zip(u[t], u[bad])]
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
    return u, d, v


def invariant_factors(m):
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def determinantal_divisors(m):
    """d_k = gcd of all k x k minors (d_0 = 1); used as an independent SNF check."""
    from itertools import combinations
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, determinant([[m[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^n with its HNF basis (rows)."""

    dim: int
    basis: tuple

    @classmethod
    def from_generators(cls, gens, dim=None):
        gens = [list(map(int, g)) for g in gens]
        if dim is None:
            dim = len(gens[0])
        if not gens:
            return cls(dim, ())
        rows = [tuple(r) for r in hnf(gens) if any(r)]
        return cls(dim, tuple(rows))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self) -> int:
        """[Z^n : L] for full-rank L."""
        if self.rank != self.dim:
            raise ValueError("lattice is not of full rank")
        out = 1
        for i, row in enumerate(self.basis):
            out *= row[i]
        return out

    def contains(self, vec) -> bool:
        w = list(map(int, vec))
        for row in self.basis:
            c = next(j for j, a in enumerate(row) if a)
            q, r = divmod(w[c], row[c])
            if r:
                return False
            w = [a - q * b for a, b in zip(w, row)]
        return not any(w)

    def reduce(self, vec):
        """Canonical coset representative of vec modulo the lattice."""
        w = list(map(int, vec))
        for row in self.basis:
            c = next(j for j, a in enumerate(row) if a)
            q = w[c] // row[c]
            w = [a - q * b for a, b in zip(w, row)]
        return tuple(w)

    def __add__(self, other: "IntegerLattice") -> "IntegerLattice":
        return IntegerLattice.from_generators(list(self.basis) + list(other.basis), self.dim)

    def coset_representatives(self):
        """All reduced representatives of Z^n / L (full rank, HNF upper triangular)."""
        from itertools import product
        if self.rank != self.dim:
            raise ValueError("lattice is not of full rank")
        ranges = [range(self.basis[i][i]) for i in range(self.dim)]
        for v in product(*ranges):
            yield self.reduce(v)

    def to_json(self):
        return {"dim": self.dim, "basis": [list(r) for r in self.basis]}
