"""Exact membership in N-spans of integer vectors and in localized semigroups.

All decisions reduce to one search: is r in N·P + L, where P is a list of
columns, L is a lattice, and a functional w vanishes on L and is positive on
every column of P?  The search is a depth-first enumeration of coefficients
of P bounded by w, pruned by lattice residues and by the exact facet
inequalities of the rational cone spanned by the remaining columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from . import lp
from .cones import Face, GkzDatum
from .errors import BudgetExceeded
from .lattice import (
    IntVector,
    Lattice,
    as_int_matrix,
    as_int_vector,
    columns,
    dot,
    integer_kernel,
    solve_integer,
    vectors_rank,
)

DEFAULT_BUDGET = 10**6
DEFAULT_FAST_PATH_K = 64


class _Search:
    """Decides r ∈ N·pos + Z·lat for a fixed column list and lattice."""

    def __init__(self, pos: Sequence[IntVector], lat: Sequence[IntVector], weight: Sequence[int], d: int):
        order = sorted(range(len(pos)), key=lambda i: (-dot(weight, pos[i]), i))
        self.order = order
        self.pos = [tuple(pos[i]) for i in order]
        self.wpos = [dot(weight, a) for a in self.pos]
        assert all(x > 0 for x in self.wpos)
        self.lat_gens = [tuple(v) for v in lat]
        self.weight = tuple(weight)
        self.d = d
        self.lattice = Lattice.from_generators(self.lat_gens, d)
        self.lat_basis = list(self.lattice.basis)
        m = len(self.pos)
        self.suffix_lattices = [
            Lattice.from_generators(self.pos[k:] + self.lat_gens, d) for k in range(m + 1)
        ]
        self.failed: set = set()
        self.cones: dict = {}

    def _suffix_cone(self, k: int) -> tuple[list[IntVector], list[IntVector]]:
        """Equations and facet inequalities of cone(pos[k:]) + span(lattice)."""
        hit = self.cones.get(k)
        if hit is not None:
            return hit
        pos = self.pos[k:]
        lat = self.lat_basis
        gens = pos + lat
        eqs = integer_kernel(gens, ncols=self.d) if gens else [
            tuple(int(i == j) for j in range(self.d)) for i in range(self.d)
        ]
        ineqs: list[IntVector] = []
        if pos:
            r_all = vectors_rank(gens)
            r_lat = vectors_rank(lat) if lat else 0
            for S in combinations(pos, r_all - 1 - r_lat):
                base = list(S) + lat
                if base and vectors_rank(base) != r_all - 1:
                    continue
                ker = integer_kernel(base, ncols=self.d) if base else [
                    tuple(int(i == j) for j in range(self.d)) for i in range(self.d)
                ]
                y = next((v for v in ker if any(dot(v, g) for g in pos)), None)
                if y is None:
                    continue
                vals = [dot(y, g) for g in pos]
                if all(v >= 0 for v in vals):
                    h = y
                elif all(v <= 0 for v in vals):
                    h = tuple(-x for x in y)
                else:
                    continue
                if h not in ineqs:
                    ineqs.append(h)
        out = (eqs, ineqs)
        self.cones[k] = out
        return out

    def _relaxation(self, k: int, r: IntVector) -> bool:
        """r ∈ cone(pos[k:]) + span(lattice), exactly over Q."""
        eqs, ineqs = self._suffix_cone(k)
        return all(dot(y, r) == 0 for y in eqs) and all(dot(h, r) >= 0 for h in ineqs)

    def find(self, r: IntVector, budget: int) -> Optional[tuple[list[int], IntVector]]:
        """Coefficients on pos (in caller order) and the lattice remainder, or None."""
        counter = [0]
        coeffs = [0] * len(self.pos)
        m = len(self.pos)

        def rec(k: int, r: IntVector) -> Optional[IntVector]:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded(counter[0])
            wr = dot(self.weight, r)
            if wr < 0:
                return None
            if wr == 0 or k == m:
                return r if self.lattice.contains(r) else None
            if (k, r) in self.failed:
                return None
            if not self.suffix_lattices[k].contains(r) or not self._relaxation(k, r):
                self.failed.add((k, r))
                return None
            a, wa = self.pos[k], self.wpos[k]
            if k == m - 1:
                if wr % wa:
                    self.failed.add((k, r))
                    return None
                c = wr // wa
                rest = tuple(x - c * y for x, y in zip(r, a))
                if self.lattice.contains(rest):
                    coeffs[k] = c
                    return rest
                self.failed.add((k, r))
                return None
            for c in range(wr // wa + 1):
                rest = tuple(x - c * y for x, y in zip(r, a))
                leaf = rec(k + 1, rest)
                if leaf is not None:
                    coeffs[k] = c
                    return leaf
            self.failed.add((k, r))
            return None

        leaf = rec(0, tuple(r))
        if leaf is None:
            return None
        out = [0] * m
        for slot, i in enumerate(self.order):
            out[i] = coeffs[slot]
        return out, leaf


def _lineality_columns(cols: Sequence[IntVector]) -> list[int]:
    """Indices i with -g_i in the cone spanned by all generators."""
    m = len(cols)
    d = len(cols[0])
    out = []
    for i, g in enumerate(cols):
        rows = [(tuple(c[t] for c in cols), -g[t]) for t in range(d)]
        if lp.feasible_point(m, eq=rows) is not None:
            out.append(i)
    return out


def _integer_scale(v: Sequence[Fraction]) -> IntVector:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return tuple(int(Fraction(x) * den) for x in v)


@dataclass
class _SpanProblem:
    search: _Search
    pos_idx: list[int]
    lin_idx: list[int]
    relation: IntVector  # positive integer relation on the lineality columns


_span_cache: dict = {}


def _span_problem(gens: tuple[IntVector, ...]) -> _SpanProblem:
    hit = _span_cache.get(gens)
    if hit is not None:
        return hit
    d = len(gens[0])
    lin = _lineality_columns(gens)
    pos = [i for i in range(len(gens)) if i not in lin]
    if lin:
        rows = [(tuple(gens[i][t] for i in lin), 0) for t in range(d)]
        rel = lp.feasible_point(len(lin), eq=rows, ge=[(tuple(int(j == k) for j in range(len(lin))), 1) for k in range(len(lin))])
        relation = _integer_scale(rel)
    else:
        relation = ()
    w = lp.feasible_point(
        d,
        eq=[(gens[i], 0) for i in lin],
        ge=[(gens[i], 1) for i in pos],
        free=range(d),
    )
    weight = _integer_scale(w)
    search = _Search([gens[i] for i in pos], [gens[i] for i in lin], weight, d)
    prob = _SpanProblem(search, pos, lin, relation)
    if len(_span_cache) > 4096:
        _span_cache.clear()
    _span_cache[gens] = prob
    return prob


def find_nonneg_combination(
    generators: Sequence[Sequence[int]], alpha: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> Optional[IntVector]:
    """Some u ∈ N^m with generators·u = α, or None.  Generators are the columns."""
    G = as_int_matrix(generators)
    alpha = as_int_vector(alpha)
    cols = columns(G)
    m = len(cols)
    nz = [i for i in range(m) if any(cols[i])]
    if not nz:
        return tuple([0] * m) if not any(alpha) else None
    prob = _span_problem(tuple(cols[i] for i in nz))
    found = prob.search.find(alpha, budget)
    if found is None:
        return None
    pos_coeffs, rest = found
    u_nz = [0] * len(nz)
    for slot, c in zip(prob.pos_idx, pos_coeffs):
        u_nz[slot] = c
    if prob.lin_idx:
        lin_cols = [cols[nz[i]] for i in prob.lin_idx]
        z = solve_integer(list(zip(*lin_cols)), rest)
        shift = max(0, max(math.ceil(Fraction(-zi, ci)) for zi, ci in zip(z, prob.relation)))
        for slot, zi, ci in zip(prob.lin_idx, z, prob.relation):
            u_nz[slot] = zi + shift * ci
    u = [0] * m
    for slot, i in enumerate(nz):
        u[i] = u_nz[slot]
    return tuple(u)


def in_nonneg_span(
    generators: Sequence[Sequence[int]], alpha: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> bool:
    """True iff α is a nonnegative integer combination of the columns of ``generators``."""
    return find_nonneg_combination(generators, alpha, budget=budget) is not None


# ---------------------------------------------------------------------------
# localized semigroups NA - NF


def _face_search(datum: GkzDatum, F: Face) -> _Search:
    key = ("search", F.indices)
    s = datum.cache.get(key)
    if s is None:
        cols = datum.cols
        pos = [cols[i] for i in range(datum.n) if i not in F.indices]
        if F.indices:
            weight = F.witness
        else:
            weight = datum.empty_face.witness
        s = _Search(pos, datum.face_columns(F), weight, datum.d)
        datum.cache[key] = s
    return s


def in_semigroup(datum: GkzDatum, alpha: Sequence[int], *, budget: int = DEFAULT_BUDGET) -> bool:
    """α ∈ NA."""
    alpha = as_int_vector(alpha)
    memo = datum.cache.setdefault("NA", {})
    hit = memo.get(alpha)
    if hit is None:
        if any(h(alpha) < 0 for _, h in datum.facets):
            hit = False
        else:
            hit = _face_search(datum, datum.empty_face).find(alpha, budget) is not None
        memo[alpha] = hit
    return hit


def in_localized_semigroup(
    datum: GkzDatum,
    F: Face,
    alpha: Sequence[int],
    *,
    budget: int = DEFAULT_BUDGET,
    fast_path_k: int = DEFAULT_FAST_PATH_K,
) -> bool:
    """α ∈ NA − NF."""
    alpha = as_int_vector(alpha)
    if len(F.indices) == datum.n:
        return True
    if not F.indices:
        return in_semigroup(datum, alpha, budget=budget)
    for h in datum.support_functions_above(F):
        if h(alpha) < 0:
            return False
    key = datum.lattice_of(F).reduce(alpha)
    memo = datum.cache.setdefault(("loc", F.indices), {})
    hit = memo.get(key)
    if hit is not None:
        return hit
    sigma = tuple(sum(c) for c in zip(*datum.face_columns(F)))
    result = None
    # membership of α + kσ in NA is monotone in k, so sampling k geometrically is enough
    k = 0
    while k <= fast_path_k:
        if in_semigroup(datum, tuple(x + k * s for x, s in zip(alpha, sigma)), budget=budget):
            result = True
            break
        k = 1 if k == 0 else 2 * k
    if result is None:
        result = _face_search(datum, F).find(alpha, budget) is not None
    memo[key] = result
    return result


def localized_membership_by_generators(
    datum: GkzDatum, F: Face, alpha: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> bool:
    """α ∈ NA − NF decided directly on the generator matrix [A | −F] (no face data used)."""
    neg = [tuple(-x for x in c) for c in datum.face_columns(F)]
    gens = list(datum.cols) + neg
    return in_nonneg_span(list(zip(*gens)), alpha, budget=budget)


def zonotope_lattice_points(A: Sequence[Sequence[int]]) -> list[IntVector]:
    """Integer points of {Σ λ_i a_i : 0 ≤ λ_i < 1}, sorted."""
    A = as_int_matrix(A)
    cols = columns(A)
    d, n = len(A), len(cols)
    lo = [sum(min(0, c[t]) for c in cols) for t in range(d)]
    hi = [sum(max(0, c[t]) for c in cols) for t in range(d)]
    out = []
    for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        # maximise t subject to Aλ = p, λ_i + t ≤ 1, t ≤ 1, λ, t ≥ 0
        eq = [(tuple(c[r] for c in cols) + (0,), p[r]) for r in range(d)]
        le = [(tuple(int(j == i) for j in range(n)) + (1,), 1) for i in range(n)]
        le.append((tuple([0] * n) + (1,), 1))
        res = lp.solve(n + 1, objective=tuple([0] * n) + (1,), eq=eq, le=le)
        if res.status == lp.OPTIMAL and res.value > 0:
            out.append(tuple(p))
    return out
