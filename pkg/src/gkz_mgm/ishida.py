"""Degreewise local cohomology of the localized semigroup ring via the Ishida complex.

For a face F the complex has one node per face σ ⪰ F at position
rank σ − rank F.  In degree α the node σ contributes a copy of Q exactly when
α ∈ NA − Nσ, and the differential is a signed incidence matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cones import Face, GkzDatum, faces_containing
from .cosets import CosetSet, admissible_shifts
from .lattice import IntVector, as_int_vector, determinant, rank, vectors_rank, vsub
from .membership import DEFAULT_BUDGET, DEFAULT_FAST_PATH_K, in_localized_semigroup


@dataclass(frozen=True)
class IshidaComplex:
    base_face: Face
    nodes: tuple[Face, ...]
    positions: tuple[int, ...]
    signed_incidence: dict  # (σ.indices, τ.indices) -> ±1

    @property
    def length(self) -> int:
        return max(self.positions)

    def nodes_at(self, p: int) -> list[Face]:
        return [s for s, q in zip(self.nodes, self.positions) if q == p]

    def differential(self, p: int, populated: Optional[set] = None) -> list[list[int]]:
        """Matrix of the map from position p to p+1 (rows: targets), restricted to populated nodes."""
        src = [s for s in self.nodes_at(p) if populated is None or s.indices in populated]
        dst = [t for t in self.nodes_at(p + 1) if populated is None or t.indices in populated]
        return [
            [self.signed_incidence.get((s.indices, t.indices), 0) for s in src] for t in dst
        ]


def _orientation(cols: Sequence[IntVector], idx: Sequence[int]) -> list[IntVector]:
    """Greedy rank extension over sorted column indices."""
    basis: list[IntVector] = []
    for i in sorted(idx):
        if vectors_rank(basis + [cols[i]]) > len(basis):
            basis.append(cols[i])
    return basis


def _orientation_sign(M: list[IntVector], B: list[IntVector]) -> int:
    """Sign of the change of basis between two bases of the same subspace."""
    k = len(B)
    if k == 0:
        return 1
    d = len(B[0])
    # pick a row subset on which B is nonsingular
    rows: list[int] = []
    for t in range(d):
        cand = rows + [t]
        if rank([[b[r] for b in B] for r in cand]) == len(cand):
            rows = cand
        if len(rows) == k:
            break
    dm = determinant([[m[r] for m in M] for r in rows])
    db = determinant([[b[r] for b in B] for r in rows])
    assert dm != 0 and db != 0
    return 1 if (dm > 0) == (db > 0) else -1


def build_ishida(datum: GkzDatum, F: Face) -> IshidaComplex:
    key = ("ishida", F.indices)
    hit = datum.cache.get(key)
    if hit is not None:
        return hit
    nodes = sorted(faces_containing(datum, F), key=lambda s: (s.rank, s.indices))
    cols = datum.cols
    orient = {s.indices: _orientation(cols, s.indices) for s in nodes}
    inc = {}
    for s in nodes:
        for t in nodes:
            if t.rank == s.rank + 1 and set(s.indices) < set(t.indices):
                extra = next(i for i in t.indices if i not in s.indices)
                M = orient[s.indices] + [cols[extra]]
                inc[(s.indices, t.indices)] = _orientation_sign(M, orient[t.indices])
    cx = IshidaComplex(F, tuple(nodes), tuple(s.rank - F.rank for s in nodes), inc)
    for p in range(cx.length - 1):
        d0 = cx.differential(p)
        d1 = cx.differential(p + 1)
        for i in range(len(d1)):
            for j in range(len(d0[0]) if d0 else 0):
                if sum(d1[i][k] * d0[k][j] for k in range(len(d0))) != 0:
                    raise AssertionError("Ishida differential does not square to zero")
    datum.cache[key] = cx
    return cx


@dataclass(frozen=True)
class GradedLCProfile:
    degree: IntVector
    dims: tuple[int, ...]

    @property
    def nonzero(self) -> bool:
        return any(self.dims)


def graded_lc_dims(
    datum: GkzDatum,
    F: Face,
    alpha: Sequence[int],
    *,
    budget: int = DEFAULT_BUDGET,
    fast_path_k: int = DEFAULT_FAST_PATH_K,
) -> GradedLCProfile:
    """Dimensions of the local cohomology of NA − NF-graded pieces in degree α."""
    alpha = as_int_vector(alpha)
    cx = build_ishida(datum, F)
    populated = {
        s.indices
        for s in cx.nodes
        if in_localized_semigroup(datum, s, alpha, budget=budget, fast_path_k=fast_path_k)
    }
    L = cx.length
    counts = [len([s for s in cx.nodes_at(p) if s.indices in populated]) for p in range(L + 1)]
    ranks = []
    for p in range(L):
        m = cx.differential(p, populated)
        ranks.append(rank(m) if m and m[0] else 0)
    dims = []
    for p in range(L + 1):
        r_out = ranks[p] if p < L else 0
        r_in = ranks[p - 1] if p > 0 else 0
        dims.append(counts[p] - r_out - r_in)
    return GradedLCProfile(alpha, tuple(dims))


def estar_set(
    datum: GkzDatum,
    F: Face,
    beta: Sequence,
    *,
    budget: int = DEFAULT_BUDGET,
    fast_path_k: int = DEFAULT_FAST_PATH_K,
) -> CosetSet:
    """Classes λ with local cohomology along F nonzero in degree β − λ."""
    beta = tuple(Fraction(x) for x in beta)
    reps = []
    for lam in admissible_shifts(datum, F, beta):
        alpha = as_int_vector(vsub(beta, lam))
        if graded_lc_dims(datum, F, alpha, budget=budget, fast_path_k=fast_path_k).nonzero:
            reps.append(lam)
    return CosetSet(F, tuple(reps), datum.lattice_of(F))


def strongly_exceptional_contains(
    datum: GkzDatum,
    F: Face,
    beta: Sequence,
    *,
    budget: int = DEFAULT_BUDGET,
    fast_path_k: int = DEFAULT_FAST_PATH_K,
) -> bool:
    """Some local cohomology along F below the top degree is nonzero at β − λ for an admissible λ."""
    beta = tuple(Fraction(x) for x in beta)
    top = datum.d - F.rank
    for lam in admissible_shifts(datum, F, beta):
        alpha = as_int_vector(vsub(beta, lam))
        dims = graded_lc_dims(datum, F, alpha, budget=budget, fast_path_k=fast_path_k).dims
        if any(dims[:top]):
            return True
    return False


def exceptional_contains(
    datum: GkzDatum,
    beta: Sequence,
    *,
    budget: int = DEFAULT_BUDGET,
    fast_path_k: int = DEFAULT_FAST_PATH_K,
) -> bool:
    """β lies in the exceptional set: strongly exceptional along some face."""
    return any(
        strongly_exceptional_contains(datum, F, beta, budget=budget, fast_path_k=fast_path_k)
        for F in datum.faces
    )
