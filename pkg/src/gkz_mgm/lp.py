"""Exact rational linear programming.

A dense two-phase simplex over ``Fraction`` with Bland's rule, plus a small
front end that accepts free variables and inequality rows.  Problem sizes
here are tiny (a handful of rows), so clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    pv = T[r][c]
    if pv != 1:
        T[r] = [x / pv for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                T[i] = [x - f * y for x, y in zip(T[i], row)]
    basis[r] = c


def _run(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Maximise with the last row of T holding reduced costs; False if unbounded."""
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def maximize(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximise c·x subject to A_eq x = b_eq and x ≥ 0."""
    n = len(c)
    rows = [[Fraction(x) for x in r] for r in A_eq]
    rhs = [Fraction(x) for x in b_eq]
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    m = len(rows)
    # phase 1: artificials in columns n .. n+m-1
    T = []
    for i in range(m):
        T.append(rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]])
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * n + [Fraction(-1)] * m + [Fraction(0)]
    for i in range(m):
        obj = [x + y for x, y in zip(obj, T[i])]
    T.append(obj)
    _run(T, basis, n + m)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive zero-valued artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T) - 1:
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1
    T = [r[:n] + [r[-1]] for r in T[:-1]]
    cf = [Fraction(x) for x in c]
    obj = cf + [Fraction(0)]
    for i, bi in enumerate(basis):
        if cf[bi]:
            obj = [x - cf[bi] * y for x, y in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, n):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = T[i][-1]
    return LPResult(OPTIMAL, tuple(x), -T[-1][-1])


def solve(
    n: int,
    *,
    objective: Optional[Sequence] = None,
    eq: Sequence[tuple[Sequence, object]] = (),
    ge: Sequence[tuple[Sequence, object]] = (),
    le: Sequence[tuple[Sequence, object]] = (),
    free: Sequence[int] = (),
) -> LPResult:
    """General front end: variables are ≥ 0 unless listed in ``free``.

    Constraint rows are (coefficients, rhs) pairs.  With no objective this is
    a feasibility problem and the returned point is any feasible one.
    """
    free_set = set(free)
    # column layout: each variable gets x+ (and x- when free), then slacks
    col_of: list[tuple[int, Optional[int]]] = []
    k = 0
    for v in range(n):
        if v in free_set:
            col_of.append((k, k + 1))
            k += 2
        else:
            col_of.append((k, None))
            k += 1
    nslack = len(ge) + len(le)
    width = k + nslack

    def expand(coeffs: Sequence) -> list[Fraction]:
        row = [Fraction(0)] * width
        for v, a in enumerate(coeffs):
            if a:
                p, q = col_of[v]
                row[p] += Fraction(a)
                if q is not None:
                    row[q] -= Fraction(a)
        return row

    A, b = [], []
    for coeffs, r in eq:
        A.append(expand(coeffs))
        b.append(Fraction(r))
    s = k
    for coeffs, r in ge:
        row = expand(coeffs)
        row[s] = Fraction(-1)
        s += 1
        A.append(row)
        b.append(Fraction(r))
    for coeffs, r in le:
        row = expand(coeffs)
        row[s] = Fraction(1)
        s += 1
        A.append(row)
        b.append(Fraction(r))
    c = expand(objective) if objective is not None else [Fraction(0)] * width
    res = maximize(c, A, b)
    if res.status != OPTIMAL:
        return LPResult(res.status)
    x = []
    for p, q in col_of:
        val = res.x[p] - (res.x[q] if q is not None else 0)
        x.append(val)
    return LPResult(OPTIMAL, tuple(x), res.value)


def feasible_point(n: int, **constraints) -> Optional[tuple[Fraction, ...]]:
    res = solve(n, **constraints)
    return res.x if res.status == OPTIMAL else None
