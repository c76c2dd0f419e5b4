"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples of Python ints, so nothing overflows.
Rational vectors are tuples of ``Fraction``.  Lattices are stored by a
canonical echelon basis, which makes structural equality the same as
equality of subgroups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import NotSublattice, RankMismatch

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# small helpers


def as_int_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    x = int(x)
                else:
                    raise TypeError(f"expected an integer entry, got {x!r}")
            r.append(int(x))
        out.append(tuple(r))
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return tuple(out)


def as_rational_vector(v: Iterable) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def as_int_vector(v: Iterable) -> IntVector:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"expected an integer vector, got entry {x}")
        out.append(int(x))
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> tuple:
    if not M:
        return ()
    return tuple(zip(*M))


def columns(M: Sequence[Sequence[int]]) -> list[IntVector]:
    return [tuple(c) for c in zip(*M)] if M else []


def matmul(X: Sequence[Sequence], Y: Sequence[Sequence]) -> tuple:
    Yt = transpose(Y)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Yt) for row in X)


def matvec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def primitive(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
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


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in M]
    pivots: list[int] = []
    if not a:
        return a, pivots
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def vectors_rank(vectors: Sequence[Sequence]) -> int:
    return rank(list(vectors)) if vectors else 0


def solve_rational(M: Sequence[Sequence], b: Sequence) -> Optional[RationalVector]:
    """One rational solution of M x = b, or None."""
    if not M:
        return None if any(Fraction(x) != 0 for x in b) else ()
    ncols = len(M[0])
    aug = [list(r) + [bb] for r, bb in zip(M, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[-1]
    return tuple(x)


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(Fraction(x) == 0 for x in v)
    return solve_rational(transpose(vectors), v) is not None


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U unimodular m×m, V unimodular n×n and U·M·V = D.

    D is diagonal with nonnegative entries, each dividing the next.
    """
    M = as_int_matrix(M)
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(r) for r in M]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            # a leftover remainder smaller than the pivot becomes the new pivot
            small = None
            for i in range(t + 1, m):
                if D[i][t] and (small is None or abs(D[i][t]) < abs(small[2])):
                    small = ("r", i, D[i][t])
            for j in range(t + 1, n):
                if D[t][j] and (small is None or abs(D[t][j]) < abs(small[2])):
                    small = ("c", j, D[t][j])
            if small is not None:
                if small[0] == "r":
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[1])
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return tuple(map(tuple, D)), tuple(map(tuple, U)), tuple(map(tuple, V))


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i] != 0]


def hnf_rows(vectors: Iterable[Sequence[int]]) -> list[IntVector]:
    """Canonical echelon basis of the subgroup generated by integer vectors.

    Pivots are positive, every row has zeros left of its pivot, and entries
    above a pivot lie in [0, pivot).
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        p = active[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        rows = [r for r in rest if any(r)]
        col += 1
    # reduce entries above pivots
    for k in range(len(basis)):
        pc = next(c for c, x in enumerate(basis[k]) if x != 0)
        for i in range(k):
            q = basis[i][pc] // basis[k][pc]
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[k])]
    return [tuple(r) for r in basis]


def integer_kernel(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[IntVector]:
    """A Z-basis of {x ∈ Z^n : M x = 0}; the returned lattice is saturated."""
    M = as_int_matrix(M)
    if not M:
        return [tuple(r) for r in identity(ncols or 0)]
    n = len(M[0])
    D, _, V = smith_normal_form(M)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^d given by a canonical echelon basis.

    ``basis`` lists the generators (as vectors); it is the column Hermite
    normal form of the generator matrix, written row by row.
    """

    basis: tuple[IntVector, ...]
    ambient_dim: int

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], ambient_dim: int) -> "Lattice":
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient_dim:
                raise ValueError("generator of wrong length")
        return cls(tuple(hnf_rows(gens)), ambient_dim)

    @classmethod
    def standard(cls, d: int) -> "Lattice":
        return cls(identity(d), d)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _pivots(self) -> list[int]:
        return [next(c for c, x in enumerate(b) if x != 0) for b in self.basis]

    def reduce(self, v: Sequence) -> tuple:
        """Canonical representative of v modulo the lattice.

        Works for rational v: two vectors differing by a lattice element
        reduce to the same output.
        """
        out = list(v)
        for b, p in zip(self.basis, self._pivots()):
            q = math.floor(Fraction(out[p]) / b[p])
            if q:
                out = [x - q * y for x, y in zip(out, b)]
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        if not is_integral(v):
            return False
        return all(x == 0 for x in self.reduce(v))

    def coordinates(self, v: Sequence) -> Optional[RationalVector]:
        """Rational coordinates of v in the stored basis, or None if outside the span."""
        if not self.basis:
            return () if all(Fraction(x) == 0 for x in v) else None
        return solve_rational(transpose(self.basis), v)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)


def _sub_coordinates(sub: Lattice, sup: Lattice) -> IntMatrix:
    if sub.ambient_dim != sup.ambient_dim or sub.rank != sup.rank:
        raise RankMismatch(f"ranks {sub.rank} and {sup.rank} differ")
    rows = []
    for b in sub.basis:
        c = sup.coordinates(b)
        if c is None or not is_integral(c):
            raise NotSublattice(f"{b} is not in the larger lattice")
        rows.append(tuple(int(x) for x in c))
    return tuple(rows)


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """[sup : sub] for sublattices of equal rank."""
    T = _sub_coordinates(sub, sup)
    if not T:
        return 1
    out = 1
    for f in invariant_factors(T):
        out *= f
    return out


def coset_representatives(sub: Lattice, sup: Lattice) -> list[IntVector]:
    """Representatives of sup/sub from the half-open echelon box, in lexicographic order."""
    T = _sub_coordinates(sub, sup)
    k = sup.rank
    if k == 0:
        return [tuple(0 for _ in range(sup.ambient_dim))]
    H = hnf_rows(T)
    diag = [H[i][i] for i in range(k)]
    reps = []
    for c in product(*(range(h) for h in diag)):
        v = [0] * sup.ambient_dim
        for ci, b in zip(c, sup.basis):
            if ci:
                v = [x + ci * y for x, y in zip(v, b)]
        reps.append(tuple(v))
    return sorted(reps)


def saturation(vectors: Sequence[Sequence[int]], d: int) -> Lattice:
    """Z^d intersected with the rational span of the given vectors."""
    if not vectors or rank(vectors) == 0:
        return Lattice((), d)
    W = integer_kernel(vectors)  # rows x with <v, x> = 0 for all v
    if not W:
        return Lattice.standard(d)
    return Lattice.from_generators(integer_kernel(W), d)


def shifted_lattice_meet_subspace(
    beta: Sequence, subspace_basis: Sequence[Sequence[int]]
) -> Optional[tuple[RationalVector, Lattice]]:
    """Intersect β + Z^d with the rational span of the given vectors.

    Returns (λ0, L) with (β + Z^d) ∩ span = λ0 + L, where L = Z^d ∩ span and
    λ0 is reduced canonically modulo L; None when the intersection is empty.
    """
    beta = as_rational_vector(beta)
    d = len(beta)
    gens = [tuple(v) for v in subspace_basis if any(v)]
    L = saturation(gens, d)
    if L.rank == d:
        return as_rational_vector(L.reduce(beta)), L
    # W is a Z-basis of the integer annihilator of the span
    W = integer_kernel(gens, ncols=d) if gens else [tuple(r) for r in identity(d)]
    c = tuple(-dot(w, beta) for w in W)
    D, U, V = smith_normal_form(W)
    Uc = matvec(U, c)
    y = [Fraction(0)] * d
    for i, val in enumerate(Uc):
        di = D[i][i] if i < d else 0
        if di == 0:
            if val != 0:
                return None
            continue
        q = Fraction(val) / di
        if q.denominator != 1:
            return None
        y[i] = q
    z = matvec(V, y)
    lam = vadd(beta, z)
    return as_rational_vector(L.reduce(lam)), L


def solve_integer(M: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[IntVector]:
    """One integer solution of M x = b, or None."""
    M = as_int_matrix(M)
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return () if not any(b) else None
    D, U, V = smith_normal_form(M)
    Ub = matvec(U, b)
    y = [0] * n
    for i, val in enumerate(Ub):
        di = D[i][i] if i < n else 0
        if di == 0:
            if val != 0:
                return None
            continue
        if val % di:
            return None
        y[i] = val // di
    return tuple(matvec(V, y))
