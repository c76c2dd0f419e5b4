"""Per-face coset sets, orbit supports, strong resonance, and (dual) mixed Gauss–Manin tests.

Supports are those of the Euler–Koszul complex K(S_A; E − β).  They agree
with the supports of the hypergeometric module itself exactly when β is not
in the exceptional set (the rank-jump locus); the report records that flag.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .cones import Face, GkzDatum, face_name, is_normal
from .cosets import CosetSet, admissible_shifts
from .errors import BudgetExceeded, NotClosedComplement
from .ishida import estar_set, exceptional_contains
from .lattice import RationalVector, as_int_vector, as_rational_vector, vadd, vscale, vsub
from .membership import DEFAULT_BUDGET, DEFAULT_FAST_PATH_K, in_localized_semigroup


class TriState(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


SRES_BACKENDS = ("auto", "normal", "exact")


@dataclass(frozen=True)
class Config:
    budget: int = DEFAULT_BUDGET
    fast_path_k: int = DEFAULT_FAST_PATH_K
    kmax: int = 25
    box_radius: int = 3
    sres_backend: str = "auto"

    def __post_init__(self) -> None:
        if self.sres_backend not in SRES_BACKENDS:
            raise ValueError(f"unknown sRes backend {self.sres_backend!r}")
        if self.budget < 1 or self.kmax < 0 or self.box_radius < 0 or self.fast_path_k < 0:
            raise ValueError("budget must be positive and search bounds nonnegative")

    @property
    def membership(self) -> dict:
        return {"budget": self.budget, "fast_path_k": self.fast_path_k}


DEFAULT_CONFIG = Config()


# ---------------------------------------------------------------------------
# coset sets and supports


def ef_set(datum: GkzDatum, F: Face, beta: Sequence, config: Config = DEFAULT_CONFIG) -> CosetSet:
    """Classes λ with β − λ ∈ NA − NF."""
    beta = as_rational_vector(beta)
    reps = [
        lam
        for lam in admissible_shifts(datum, F, beta)
        if in_localized_semigroup(datum, F, as_int_vector(vsub(beta, lam)), **config.membership)
    ]
    return CosetSet(F, tuple(reps), datum.lattice_of(F))


def estar(datum: GkzDatum, F: Face, beta: Sequence, config: Config = DEFAULT_CONFIG) -> CosetSet:
    return estar_set(datum, F, beta, **config.membership)


@dataclass(frozen=True)
class OrbitSupport:
    """A union of torus orbits, recorded by the faces whose orbits it contains."""

    faces: tuple[Face, ...]

    def __contains__(self, F: Face) -> bool:
        return F in self.faces

    def labels(self, datum: GkzDatum) -> list[str]:
        return [datum.face_label(f) for f in self.faces]

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.indices for f in self.faces)


def _support(datum: GkzDatum, beta, fn, config: Config) -> OrbitSupport:
    return OrbitSupport(tuple(F for F in datum.faces if fn(datum, F, beta, config)))


def fiber_support(datum: GkzDatum, beta: Sequence, config: Config = DEFAULT_CONFIG) -> OrbitSupport:
    return _support(datum, as_rational_vector(beta), estar, config)


def cofiber_support(datum: GkzDatum, beta: Sequence, config: Config = DEFAULT_CONFIG) -> OrbitSupport:
    return _support(datum, as_rational_vector(beta), ef_set, config)


# ---------------------------------------------------------------------------
# open sets


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class OpenSetDescription:
    """U = Ĉⁿ minus the orbit closures V(I^A_F) of the maximal excluded faces."""

    excluded_maximal_faces: tuple[Face, ...]
    ideal_description: tuple[tuple[str, ...], ...]
    text: str

    def __str__(self) -> str:
        return self.text


def _closure_text(datum: GkzDatum, F: Face) -> str:
    if not F.indices:
        return "{0}"
    if len(F.indices) == 1:
        return "{∂" + str(F.indices[0] + 1).translate(_SUB) + "-axis}"
    gens = ", ".join("∂" + str(i + 1).translate(_SUB) for i in range(datum.n) if i not in F.indices)
    return f"V(I_A + ⟨{gens}⟩)"


def open_set_description(datum: GkzDatum, support: OrbitSupport) -> OpenSetDescription:
    inside = {f.indices for f in support.faces}
    excluded = [f for f in datum.faces if f.indices not in inside]
    for g in excluded:
        for f in datum.faces:
            if f < g and f.indices in inside:
                raise NotClosedComplement(
                    f"{datum.face_label(f)} is in the support but lies below the excluded face {datum.face_label(g)}"
                )
    maximal = tuple(g for g in excluded if not any(g < h for h in excluded))
    ideals = tuple(
        ("I_A",) + tuple(f"∂{i + 1}" for i in range(datum.n) if i not in g.indices) for g in maximal
    )
    n = str(datum.n).translate(_SUP)
    if not maximal:
        text = f"Ĉ{n}"
    elif inside == {datum.full_face.indices}:
        text = f"(C*){n}"
    else:
        parts = [_closure_text(datum, g) for g in maximal]
        body = parts[0] if len(parts) == 1 else "(" + " ∪ ".join(parts) + ")"
        text = f"Ĉ{n} ∖ {body}"
    return OpenSetDescription(maximal, ideals, text)


# ---------------------------------------------------------------------------
# strong resonance


def _sres_normal(datum: GkzDatum, beta: RationalVector) -> bool:
    for _, h in datum.facets:
        v = h(beta)
        if v.denominator == 1 and v < 0:
            return True
    return False


def _sres_exact(datum: GkzDatum, beta: RationalVector, config: Config) -> bool:
    """β lies in the quasidegrees of some H¹ along a single column.

    The degrees of H¹ along ∂_j form (NA − Na_j) ∖ NA, and their quasidegrees
    are the sets α + CG with G a face avoiding a_j and α + NG inside that set.
    Such an α exists in β + CG exactly when some class β − λ lies in
    NA − N(G ∪ a_j) but not in NA − NG.
    """
    for G in datum.faces:
        shifts = admissible_shifts(datum, G, beta)
        if not shifts:
            continue
        targets = {datum.smallest_face_containing(G.indices + (j,)) for j in range(datum.n) if j not in G.indices}
        for lam in shifts:
            alpha = as_int_vector(vsub(beta, lam))
            if in_localized_semigroup(datum, G, alpha, **config.membership):
                continue
            for H in targets:
                if in_localized_semigroup(datum, H, alpha, **config.membership):
                    return True
    return False


def sres_contains(datum: GkzDatum, beta: Sequence, config: Config = DEFAULT_CONFIG) -> TriState:
    """Is β strongly resonant?  UNKNOWN only when the membership budget runs out."""
    beta = as_rational_vector(beta)
    backend = config.sres_backend
    if backend == "auto":
        backend = "normal" if is_normal(datum) else "exact"
    if backend == "normal":
        if not is_normal(datum):
            raise ValueError("the closed-form backend requires a normal semigroup")
        return TriState.YES if _sres_normal(datum, beta) else TriState.NO
    key = ("sres", beta)
    hit = datum.cache.get(key)
    if hit is not None:
        return hit
    try:
        out = TriState.YES if _sres_exact(datum, beta, config) else TriState.NO
    except BudgetExceeded:
        return TriState.UNKNOWN
    datum.cache[key] = out
    return out


# ---------------------------------------------------------------------------
# mixed Gauss–Manin decisions


@dataclass(frozen=True)
class Verdict:
    """A tri-state answer with the witness β′ and how it was found."""

    value: TriState
    witness: Optional[RationalVector] = None
    stage: Optional[str] = None
    evidence: tuple[str, ...] = ()


def _profile(datum: GkzDatum, beta, config: Config, fn) -> dict:
    return {F.indices: fn(datum, F, beta, config) for F in datum.faces}


def _candidates(datum: GkzDatum, beta: RationalVector, config: Config, direction: int):
    """β + k·direction·ε_A for k = 0..K_max, then the integer box around β."""
    eps = datum.epsilon_A
    for k in range(config.kmax + 1):
        yield f"epsilon k={k}", vadd(beta, vscale(direction * k, eps))
    r = config.box_radius
    for z in product(range(-r, r + 1), repeat=datum.d):
        yield f"box z={list(z)}", vadd(beta, z)


def _format_face_sets(datum: GkzDatum, F: Face, mine: CosetSet, theirs: CosetSet) -> str:
    def fmt(cs: CosetSet) -> str:
        return "{" + ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in cs.representatives) + "}"

    return f"{datum.face_label(F)}: {fmt(mine)} vs {fmt(theirs)}"


def is_mixed_gauss_manin(datum: GkzDatum, beta: Sequence, config: Config = DEFAULT_CONFIG) -> Verdict:
    """YES with a non-resonant β′ ∈ β + Z^d whose E_F-sets cover every nonempty E_F(β).

    All non-resonant parameters in β + Z^d give isomorphic torus direct
    images, so they share one E_F-profile.  A mismatch against any one of them
    is therefore a certificate for NO.
    """
    beta = as_rational_vector(beta)
    try:
        mine = _profile(datum, beta, config, ef_set)
        unknown = False
        for stage, cand in _candidates(datum, beta, config, +1):
            s = sres_contains(datum, cand, config)
            if s is TriState.UNKNOWN:
                unknown = True
                continue
            if s is TriState.YES:
                continue
            theirs = _profile(datum, cand, config, ef_set)
            bad = [F for F in datum.faces if mine[F.indices] and mine[F.indices].representatives != theirs[F.indices].representatives]
            if not bad:
                return Verdict(TriState.YES, cand, stage)
            ev = tuple(_format_face_sets(datum, F, mine[F.indices], theirs[F.indices]) for F in bad)
            return Verdict(TriState.NO, cand, stage, ev)
        return Verdict(TriState.UNKNOWN, None, None, ("no non-resonant translate found" + (" (budget)" if unknown else ""),))
    except BudgetExceeded as exc:
        return Verdict(TriState.UNKNOWN, None, None, (str(exc),))


def is_dual_mixed_gauss_manin(datum: GkzDatum, beta: Sequence, config: Config = DEFAULT_CONFIG) -> Verdict:
    """YES when β avoids the exceptional set and E*_F(β) ⊆-matches −E_F(−β′) for a β′ with −β′ non-resonant."""
    beta = as_rational_vector(beta)
    try:
        if exceptional_contains(datum, beta, **config.membership):
            return Verdict(TriState.NO, None, "exceptional", ("β lies in the exceptional set",))
        mine = _profile(datum, beta, config, estar)
        unknown = False
        for stage, cand in _candidates(datum, beta, config, -1):
            neg = tuple(-x for x in cand)
            s = sres_contains(datum, neg, config)
            if s is TriState.UNKNOWN:
                unknown = True
                continue
            if s is TriState.YES:
                continue
            theirs = {k: v.negate() for k, v in _profile(datum, neg, config, ef_set).items()}
            bad = [F for F in datum.faces if mine[F.indices] and mine[F.indices].representatives != theirs[F.indices].representatives]
            if not bad:
                return Verdict(TriState.YES, cand, stage)
            ev = tuple(_format_face_sets(datum, F, mine[F.indices], theirs[F.indices]) for F in bad)
            return Verdict(TriState.NO, cand, stage, ev)
        return Verdict(TriState.UNKNOWN, None, None, ("no admissible translate found" + (" (budget)" if unknown else ""),))
    except BudgetExceeded as exc:
        return Verdict(TriState.UNKNOWN, None, None, (str(exc),))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FaceEntry:
    face: Face
    ef: CosetSet
    estar: CosetSet


@dataclass
class ClassificationReport:
    beta: RationalVector
    per_face: list[FaceEntry]
    fiber_support: OrbitSupport
    cofiber_support: OrbitSupport
    in_EA: bool
    sres: TriState
    mgm: Verdict
    dual_mgm: Verdict
    open_sets: dict = field(default_factory=dict)  # "U"/"V" -> OpenSetDescription or error string
    errors: list[str] = field(default_factory=list)

    @property
    def has_unknown(self) -> bool:
        return TriState.UNKNOWN in (self.sres, self.mgm.value, self.dual_mgm.value) or bool(self.errors)


def classify(datum: GkzDatum, beta: Sequence, config: Config = DEFAULT_CONFIG) -> ClassificationReport:
    beta = as_rational_vector(beta)
    errors: list[str] = []
    entries = []
    try:
        for F in datum.faces:
            entries.append(FaceEntry(F, ef_set(datum, F, beta, config), estar(datum, F, beta, config)))
        in_ea = exceptional_contains(datum, beta, **config.membership)
    except BudgetExceeded as exc:
        errors.append(str(exc))
        in_ea = False
    fsupp = OrbitSupport(tuple(e.face for e in entries if e.estar))
    csupp = OrbitSupport(tuple(e.face for e in entries if e.ef))
    open_sets: dict = {}
    if not errors:
        for name, supp in (("U", fsupp), ("V", csupp)):
            try:
                open_sets[name] = open_set_description(datum, supp)
            except NotClosedComplement as exc:
                open_sets[name] = f"not open: {exc}"
    return ClassificationReport(
        beta=beta,
        per_face=entries,
        fiber_support=fsupp,
        cofiber_support=csupp,
        in_EA=in_ea,
        sres=sres_contains(datum, beta, config),
        mgm=is_mixed_gauss_manin(datum, beta, config),
        dual_mgm=is_dual_mixed_gauss_manin(datum, beta, config),
        open_sets=open_sets,
        errors=errors,
    )


def revalidate(datum: GkzDatum, report: ClassificationReport, config: Config = DEFAULT_CONFIG) -> list[str]:
    """Re-check every YES verdict of a report from its stored witnesses; returns the problems found."""
    problems = []
    beta = report.beta
    if report.mgm.value is TriState.YES:
        w = report.mgm.witness
        if w is None or not all((Fraction(a) - Fraction(b)).denominator == 1 for a, b in zip(beta, w)):
            problems.append("mgm witness is not an integral translate")
        elif sres_contains(datum, w, config) is not TriState.NO:
            problems.append("mgm witness is strongly resonant")
        else:
            for F in datum.faces:
                e = ef_set(datum, F, beta, config)
                if e and e.representatives != ef_set(datum, F, w, config).representatives:
                    problems.append(f"mgm witness disagrees on {datum.face_label(F)}")
    if report.dual_mgm.value is TriState.YES:
        w = report.dual_mgm.witness
        if report.in_EA:
            problems.append("dual verdict YES although β is exceptional")
        if w is None or not all((Fraction(a) - Fraction(b)).denominator == 1 for a, b in zip(beta, w)):
            problems.append("dual witness is not an integral translate")
        else:
            neg = tuple(-x for x in w)
            if sres_contains(datum, neg, config) is not TriState.NO:
                problems.append("negated dual witness is strongly resonant")
            for F in datum.faces:
                e = estar(datum, F, beta, config)
                if e and e.representatives != ef_set(datum, F, neg, config).negate().representatives:
                    problems.append(f"dual witness disagrees on {datum.face_label(F)}")
    return problems


def face_label(indices: Sequence[int], n: int) -> str:
    return face_name(tuple(indices), n)


@dataclass
class SweepRow:
    fiber_support: OrbitSupport
    cofiber_support: OrbitSupport
    count: int
    example: RationalVector
    mgm: tuple[str, ...]
    dual_mgm: tuple[str, ...]


def sweep(datum: GkzDatum, betas: Sequence[Sequence], config: Config = DEFAULT_CONFIG) -> list[SweepRow]:
    """Group parameters by their (fiber support, cofiber support) pair."""
    rows: dict = {}
    for beta in sorted(as_rational_vector(b) for b in betas):
        f = fiber_support(datum, beta, config)
        c = cofiber_support(datum, beta, config)
        m = is_mixed_gauss_manin(datum, beta, config).value.value
        dm = is_dual_mixed_gauss_manin(datum, beta, config).value.value
        key = (f.key(), c.key())
        row = rows.get(key)
        if row is None:
            rows[key] = SweepRow(f, c, 1, beta, (m,), (dm,))
        else:
            row.count += 1
            if m not in row.mgm:
                row.mgm = tuple(sorted(row.mgm + (m,)))
            if dm not in row.dual_mgm:
                row.dual_mgm = tuple(sorted(row.dual_mgm + (dm,)))
    return list(rows.values())
