"""The datum A: validation, facets with primitive support functions, and faces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import LatticeNotSpanned, NotAFacet, NotPointed, UnknownFace, ZeroColumn
from .lattice import (
    IntMatrix,
    IntVector,
    Lattice,
    as_int_matrix,
    columns,
    dot,
    integer_kernel,
    invariant_factors,
    primitive,
    vectors_rank,
)


@dataclass(frozen=True)
class Face:
    """A face of the cone over A, stored as the saturated set of column indices.

    ``witness`` is an integer functional vanishing on the face's columns and
    positive on every other column (zero for the whole matrix).
    """

    indices: tuple[int, ...]
    rank: int
    witness: IntVector

    @property
    def name(self) -> str:
        return face_name(self.indices, None)

    def __contains__(self, j: int) -> bool:
        return j in self.indices

    def __le__(self, other: "Face") -> bool:
        return set(self.indices) <= set(other.indices)

    def __lt__(self, other: "Face") -> bool:
        return set(self.indices) < set(other.indices)


def face_name(indices: Sequence[int], n: Optional[int]) -> str:
    """"∅", "A" or "[a1,a3]" (1-based column labels)."""
    if not indices:
        return "∅"
    if n is not None and len(indices) == n:
        return "A"
    return "[" + ",".join(f"a{i + 1}" for i in indices) + "]"


@dataclass(frozen=True)
class SupportFunction:
    """Primitive integral linear form defining a facet, nonnegative on A."""

    row: IntVector
    facet: Face

    def __call__(self, v: Sequence):
        return dot(self.row, v)


@dataclass(frozen=True, eq=False)
class GkzDatum:
    A: IntMatrix
    epsilon_A: IntVector
    faces: tuple[Face, ...]
    facets: tuple[tuple[Face, SupportFunction], ...]
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def d(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def cols(self) -> list[IntVector]:
        if "cols" not in self.cache:
            self.cache["cols"] = columns(self.A)
        return self.cache["cols"]

    @property
    def empty_face(self) -> Face:
        return self.faces[0]

    @property
    def full_face(self) -> Face:
        return self.faces[-1]

    def face(self, indices: Iterable[int]) -> Face:
        key = tuple(sorted(set(indices)))
        for f in self.faces:
            if f.indices == key:
                return f
        raise UnknownFace(f"{face_name(key, None)} is not a face")

    def smallest_face_containing(self, indices: Iterable[int]) -> Face:
        s = set(indices)
        best = None
        for f in self.faces:
            if s <= set(f.indices) and (best is None or len(f.indices) < len(best.indices)):
                best = f
        return best

    def face_label(self, f: Face) -> str:
        return face_name(f.indices, self.n)

    def face_columns(self, f: Face) -> list[IntVector]:
        cols = self.cols
        return [cols[i] for i in f.indices]

    def lattice_of(self, f: Face) -> Lattice:
        key = ("ZF", f.indices)
        if key not in self.cache:
            self.cache[key] = Lattice.from_generators(self.face_columns(f), self.d)
        return self.cache[key]

    def support_functions_above(self, f: Face) -> list[SupportFunction]:
        """Support functions of the facets containing f."""
        s = set(f.indices)
        return [h for g, h in self.facets if s <= set(g.indices)]

    def __repr__(self) -> str:
        return f"GkzDatum(A={[list(r) for r in self.A]})"


def _facet_normal(facet_cols: Sequence[IntVector], all_cols: Sequence[IntVector]) -> Optional[IntVector]:
    """Primitive normal of a rank d-1 column set, oriented nonnegative on A; None if it separates A."""
    ker = integer_kernel(facet_cols, ncols=len(all_cols[0]))
    if len(ker) != 1:
        return None
    h = primitive(ker[0])
    vals = [dot(h, a) for a in all_cols]
    if all(v >= 0 for v in vals):
        return h
    if all(v <= 0 for v in vals):
        return tuple(-x for x in h)
    return None


def _positive_functional(cols: Sequence[IntVector], d: int):
    return lp.feasible_point(d, ge=[(a, 1) for a in cols], free=range(d))


def build_datum(A: Sequence[Sequence[int]]) -> GkzDatum:
    """Validate A and enumerate its facets and faces."""
    A = as_int_matrix(A)
    if not A or not A[0]:
        raise ValueError("A must have at least one row and one column")
    d, n = len(A), len(A[0])
    cols = columns(A)
    for j, a in enumerate(cols):
        if not any(a):
            raise ZeroColumn(f"column a{j + 1} is zero")
    facs = invariant_factors(A)
    if len(facs) != d or any(f != 1 for f in facs):
        raise LatticeNotSpanned(f"invariant factors {facs}: ZA is not Z^{d}")
    if _positive_functional(cols, d) is None:
        raise NotPointed("no functional is positive on every column")

    # facets: normals of rank d-1 column subsets that keep A on one side
    normals: dict[IntVector, tuple[int, ...]] = {}
    rays = sorted({primitive(a) for a in cols})
    for subset in combinations(rays, d - 1):
        if vectors_rank(subset) != d - 1:
            continue
        h = _facet_normal(subset, cols)
        if h is None or h in normals:
            continue
        normals[h] = tuple(i for i, a in enumerate(cols) if dot(h, a) == 0)
    full = tuple(range(n))
    facet_sets = sorted(set(normals.values()))
    face_sets = {full, *facet_sets}
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for s in frontier:
            for t in facet_sets:
                u = tuple(sorted(set(s) & set(t)))
                if u not in face_sets:
                    new.add(u)
        face_sets |= new
        frontier = new
    face_sets.add(())
    faces = []
    for s in sorted(face_sets, key=lambda s: (vectors_rank([cols[i] for i in s]), len(s), s)):
        w = [0] * d
        for h, g in normals.items():
            if set(s) <= set(g):
                w = [x + y for x, y in zip(w, h)]
        faces.append(Face(s, vectors_rank([cols[i] for i in s]), tuple(w)))
    by_set = {f.indices: f for f in faces}
    facets = tuple(
        sorted(
            ((by_set[g], SupportFunction(h, by_set[g])) for h, g in normals.items()),
            key=lambda fh: fh[0].indices,
        )
    )
    eps = tuple(sum(row) for row in A)
    datum = GkzDatum(A, eps, tuple(faces), facets)
    for f in faces:
        if f.indices != full:
            bad = [i for i in range(n) if (dot(f.witness, cols[i]) == 0) != (i in f.indices)]
            assert not bad and all(dot(f.witness, cols[i]) >= 0 for i in range(n)), f
    return datum


def support_function(datum: GkzDatum, facet: Face) -> SupportFunction:
    """The primitive integral support function of a facet, computed from its columns."""
    if facet.rank != datum.d - 1 or facet not in datum.faces:
        raise NotAFacet(f"{datum.face_label(facet)} is not a facet")
    h = _facet_normal(datum.face_columns(facet), datum.cols)
    if h is None:
        raise NotAFacet(f"{datum.face_label(facet)} is not a facet")
    return SupportFunction(h, facet)


def faces_containing(datum: GkzDatum, F: Face) -> list[Face]:
    if F not in datum.faces:
        raise UnknownFace(f"{face_name(F.indices, None)} is not a face")
    s = set(F.indices)
    return [g for g in datum.faces if s <= set(g.indices)]


def is_normal(datum: GkzDatum) -> bool:
    """True when NA is saturated, tested on the lattice points of the half-open zonotope."""
    if "normal" not in datum.cache:
        from .membership import in_nonneg_span, zonotope_lattice_points

        datum.cache["normal"] = all(
            in_nonneg_span(datum.A, p) for p in zonotope_lattice_points(datum.A)
        )
    return datum.cache["normal"]
