"""
Conjugation action on an elementary abelian section N/Z.

Given group elements n_1..n_m whose cosets n_i Z form a basis of N/Z over
GF(p), an element g normalizing N and Z acts on N/Z by x Z -> x^g Z with
x^g = g^-1 x g. Row i of the action matrix holds the coordinates of n_i^g Z,
so actors compose as matrices: M(gh) = M(g) M(h).
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from ..core.errors import NotInGroupError, ShapeError
from ..gflin.matrix import Mat
from ..permcore import Perm

logger = structlog.get_logger(__name__)

ORIENTATIONS = ("rows", "columns", "rows-inverse", "columns-inverse")


@dataclass
class QuotientCoordinates:
    """Coordinates of the cosets of Z in N with respect to a basis n_i Z."""

    p: int
    basis: List[Perm]
    center: List[Perm]
    table: Dict[bytes, Tuple[int, ...]]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def key(self, x: Perm) -> bytes:
        return min((x * z).image.tobytes() for z in self.center)

    def coordinates(self, x: Perm) -> Tuple[int, ...]:
        try:
            return self.table[self.key(x)]
        except KeyError:
            raise NotInGroupError("Element does not lie in the span of the basis modulo Z") from None


def quotient_coordinates(
    basis: Sequence[Perm], center: Sequence[Perm], p: int
) -> QuotientCoordinates:
    """Enumerate all p^m basis products n_1^a_1 ... n_m^a_m modulo Z.

    Raises ShapeError when two coefficient vectors give the same coset, so the
    basis cosets are independent.
    """
    if not center or not any(z.is_identity() for z in center):
        raise ShapeError("Center list must contain the identity")
    coords = QuotientCoordinates(p, list(basis), list(center), {})
    identity = Perm.identity(basis[0].degree) if basis else center[0]
    powers = [[b**k for k in range(p)] for b in basis]
    for exponents in product(range(p), repeat=len(basis)):
        element = identity
        for b, k in zip(powers, exponents):
            if k:
                element = element * b[k]
        key = coords.key(element)
        if key in coords.table:
            raise ShapeError(f"Basis cosets are dependent: {exponents} repeats {coords.table[key]}")
        coords.table[key] = exponents
    logger.debug("quotient coordinates", p=p, dim=len(basis), cosets=len(coords.table))
    return coords


def conj_action_matrix(coords: QuotientCoordinates, actor: Perm) -> Mat:
    """Matrix of x Z -> actor^-1 x actor Z in the basis; rows are images of basis cosets."""
    rows = [coords.coordinates(b.conjugate(actor)) for b in coords.basis]
    return Mat.from_rows(coords.p, rows)


def conj_action_matrices(
    basis: Sequence[Perm], center: Sequence[Perm], actors: Mapping[str, Perm], p: int = 2
) -> Dict[str, Mat]:
    coords = quotient_coordinates(basis, center, p)
    return {name: conj_action_matrix(coords, g) for name, g in actors.items()}


def oriented(matrix: Mat, orientation: str) -> Mat:
    if orientation == "rows":
        return matrix
    if orientation == "columns":
        return matrix.T
    if orientation == "rows-inverse":
        return matrix.inverse()
    if orientation == "columns-inverse":
        return matrix.inverse().T
    raise ValueError(f"Invalid orientation: {orientation}")


def match_orientation(computed: Mapping[str, Mat], printed: Mapping[str, Mat]) -> Optional[str]:
    """The first orientation under which every computed matrix equals its printed one.

    One orientation must serve for all matrices of a family; None if none does.
    """
    shared = [n for n in printed if n in computed]
    for orientation in ORIENTATIONS:
        if all(oriented(computed[n], orientation) == printed[n] for n in shared):
            logger.info("conjugation matrices matched", orientation=orientation, matrices=len(shared))
            return orientation
    return None
