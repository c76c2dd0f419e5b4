"""Exception types raised across the package."""

from __future__ import annotations


class GkzError(Exception):
    """Base class for all errors raised by gkz_mgm."""


class LatticeNotSpanned(GkzError):
    """The columns of A do not generate Z^d as a group."""


class NotPointed(GkzError):
    """The semigroup generated by the columns contains a nonzero unit."""


class ZeroColumn(GkzError):
    """A has a column equal to zero."""


class NotAFacet(GkzError):
    """A face of codimension other than one was passed where a facet is needed."""


class UnknownFace(GkzError):
    """A column set that is not a face of the datum."""


class NotSublattice(GkzError):
    """The first lattice is not contained in the second."""


class RankMismatch(GkzError):
    """Two lattices that should have equal rank do not."""


class BudgetExceeded(GkzError):
    """The membership search explored more nodes than allowed."""

    def __init__(self, nodes: int) -> None:
        super().__init__(f"node budget exceeded after {nodes} nodes")
        self.nodes = nodes


class NotClosedComplement(GkzError):
    """The faces missing from a support are not closed under passing to subfaces."""


class ParseError(GkzError):
    """Malformed input."""
