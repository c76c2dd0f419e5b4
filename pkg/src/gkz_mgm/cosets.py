"""Classes λ ∈ CF / ZF with β − λ integral."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import Face, GkzDatum
from .lattice import Lattice, RationalVector, coset_representatives, shifted_lattice_meet_subspace, vadd


@dataclass(frozen=True)
class CosetSet:
    """A set of classes modulo ZF, each stored by its canonical representative."""

    face: Face
    representatives: tuple[RationalVector, ...]
    modulus: Lattice

    def __post_init__(self) -> None:
        reps = tuple(sorted({tuple(Fraction(x) for x in self.modulus.reduce(r)) for r in self.representatives}))
        object.__setattr__(self, "representatives", reps)

    def __len__(self) -> int:
        return len(self.representatives)

    def __bool__(self) -> bool:
        return bool(self.representatives)

    def __contains__(self, lam: Sequence) -> bool:
        key = tuple(Fraction(x) for x in self.modulus.reduce(tuple(Fraction(x) for x in lam)))
        return key in self.representatives

    def negate(self) -> "CosetSet":
        return CosetSet(self.face, tuple(tuple(-x for x in r) for r in self.representatives), self.modulus)

    def issubset(self, other: "CosetSet") -> bool:
        return set(self.representatives) <= set(other.representatives)


def admissible_shifts(datum: GkzDatum, F: Face, beta: Sequence) -> list[RationalVector]:
    """Canonical representatives of ((β + Z^d) ∩ CF) / ZF, sorted."""
    beta = tuple(Fraction(x) for x in beta)
    key = ("shifts", F.indices, beta)
    hit = datum.cache.get(key)
    if hit is not None:
        return hit
    meet = shifted_lattice_meet_subspace(beta, datum.face_columns(F))
    if meet is None:
        out: list[RationalVector] = []
    else:
        lam0, sat = meet
        ZF = datum.lattice_of(F)
        reps = coset_representatives(ZF, sat)
        out = sorted({tuple(Fraction(x) for x in ZF.reduce(vadd(lam0, v))) for v in reps})
    datum.cache[key] = out
    return out
