"""Classification of A-hypergeometric parameters by orbit supports and (dual) mixed Gauss–Manin tests."""

from __future__ import annotations

__version__ = "0.1.0"

from .classify import (
    ClassificationReport,
    Config,
    OpenSetDescription,
    OrbitSupport,
    TriState,
    Verdict,
    classify,
    cofiber_support,
    ef_set,
    fiber_support,
    is_dual_mixed_gauss_manin,
    is_mixed_gauss_manin,
    open_set_description,
    revalidate,
    sres_contains,
    sweep,
)
from .cones import Face, GkzDatum, SupportFunction, build_datum, faces_containing, is_normal, support_function
from .cosets import CosetSet
from .errors import (
    BudgetExceeded,
    GkzError,
    LatticeNotSpanned,
    NotAFacet,
    NotClosedComplement,
    NotPointed,
    NotSublattice,
    ParseError,
    RankMismatch,
    UnknownFace,
    ZeroColumn,
)
from .ishida import (
    GradedLCProfile,
    IshidaComplex,
    build_ishida,
    estar_set,
    exceptional_contains,
    graded_lc_dims,
    strongly_exceptional_contains,
)
from .lattice import (
    Lattice,
    coset_representatives,
    lattice_index,
    shifted_lattice_meet_subspace,
    smith_normal_form,
)
from .membership import in_localized_semigroup, in_nonneg_span, zonotope_lattice_points
