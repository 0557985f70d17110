"""
The invariant Δ(M) as a rational polyhedral fan.

For a principal module F*A/αF*A, Δ is the set of characters whose minimum
over supp(α) is attained at least twice: φ-initial forms are multiplicative
and the units of F*A are the scalar multiples of monomials, so some
annihilator αδ has a unique φ-minimum exactly when in_φ(α) is a monomial.
That set is a union of cones of the inner normal fan of the Newton polytope
of supp(α), computed here face by face.

Other modules get an inner and an outer approximation, exact where the
module splits into principal pieces.

"""

import itertools
import logging
from dataclasses import dataclass

from .conf import SearchBounds
from .elements import TorusElement, evaluate_character
from .exceptions import PreconditionFailed, PresentationError
from .fans import RationalCone, RationalFan, fan_dimension
from .fields import to_rational
from .modules import (
    CyclicModulePresentation,
    FGModulePresentation,
    _is_zero_module,
    _reduce_ideal,
    block_module,
    gk_dimension,
    split_blocks,
    torsion_witness,
)
from .pairing import ann_subspace, is_simple, isotropic_sublattices

__all__ = [
    "CarrierData",
    "DeltaApprox",
    "HolonomyVerdict",
    "carrier_spaces",
    "delta_module",
    "delta_principal",
    "delta_tensor",
    "exclude_certificate",
    "strongly_holonomic_check",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeltaApprox:
    """
    Fans with inner ⊆ Δ(M) ⊆ outer.

    """

    inner: RationalFan
    outer: RationalFan
    exact: bool
    zero_module: bool = False

    def __post_init__(self):
        if self.inner.ambient_dim != self.outer.ambient_dim:
            raise ValueError("inner and outer fans live in different spaces")
        for cone in self.inner.cones:
            points = cone.generators + (cone.interior_point(),)
            if not all(point in self.outer for point in points):
                raise ValueError("the inner fan is not contained in the outer fan")
        if self.exact and self.inner != self.outer:
            raise ValueError("an exact approximation has inner == outer")

    @classmethod
    def exactly(cls, fan, zero_module=False):
        return cls(fan, fan, True, zero_module)

    @property
    def ambient_dim(self):
        return self.outer.ambient_dim

    def __contains__(self, phi):
        """
        Return True or False when the approximation decides phi, else None.

        """
        if phi in self.inner:
            return True
        if phi not in self.outer:
            return False
        return None


def _difference(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _tropical_fan(alpha):
    n = alpha.algebra.rank
    support = sorted(alpha.terms)
    cones = []
    for p, q in itertools.combinations(support, 2):
        cones.append(
            RationalCone.from_constraints(
                n,
                [_difference(r, p) for r in support if r != p],
                [_difference(q, p)],
            )
        )
    return RationalFan.from_cones(n, cones)


def delta_principal(M):
    """
    Return Δ(F*A/αF*A) exactly.

    """
    if len(M.relations) != 1:
        raise PresentationError("delta_principal needs a single relation")
    (alpha,) = M.relations
    n = M.algebra.rank
    if len(alpha.terms) == 1:
        return DeltaApprox.exactly(RationalFan.zero(n), zero_module=True)
    fan = _tropical_fan(alpha)
    logger.debug("Δ of %s has %d cones", alpha, len(fan.cones))
    return DeltaApprox.exactly(fan)


def _lifted_product(n, pieces):
    """
    Return the fan of products of cones given on coordinate blocks.

    pieces is a list of (coordinates, fan) pairs covering range(n).

    """
    cones = []
    for choice in itertools.product(*(fan.cones for _, fan in pieces)):
        inequalities, equalities = [], []
        for (coordinates, _), cone in zip(pieces, choice):
            lifted = cone.lift(coordinates, n)
            inequalities += lifted[0]
            equalities += lifted[1]
        cones.append(RationalCone.from_constraints(n, inequalities, equalities))
    return RationalFan.from_cones(n, cones)


def delta_module(M, search_bounds=None):
    """
    Return a DeltaApprox of Δ(M) for a cyclic or finitely generated module.

    """
    bounds = search_bounds or SearchBounds()
    n = M.algebra.rank
    if isinstance(M, FGModulePresentation):
        if M.generators == 1:
            M = CyclicModulePresentation(M.algebra, [row[0] for row in M.relations])
        elif not M.is_diagonal():
            return DeltaApprox(RationalFan.zero(n), RationalFan.whole(n), False)
        else:
            return _delta_direct_sum(
                n, [delta_module(s, bounds) for s in M.summands()]
            )
    if M.free:
        return DeltaApprox.exactly(RationalFan.whole(n))
    if _is_zero_module(M, bounds.degree_bound):
        return DeltaApprox.exactly(RationalFan.zero(n), zero_module=True)
    if M.principal:
        return delta_principal(M)
    blocks = split_blocks(M)
    if len(blocks) > 1:
        pieces = [
            (block, delta_module(block_module(M, block), bounds)) for block in blocks
        ]
        if any(piece.zero_module for _, piece in pieces):
            return DeltaApprox.exactly(RationalFan.zero(n), zero_module=True)
        inner = _lifted_product(n, [(block, piece.inner) for block, piece in pieces])
        outer = _lifted_product(n, [(block, piece.outer) for block, piece in pieces])
        if all(piece.exact for _, piece in pieces):
            return DeltaApprox.exactly(outer)
        return DeltaApprox(inner, outer, False)
    outer = RationalFan.whole(n)
    for relation in M.relations:
        outer = outer.intersection(
            delta_principal(CyclicModulePresentation(M.algebra, [relation])).outer
        )
    return DeltaApprox(RationalFan.zero(n), outer, False)


def _delta_direct_sum(n, approximations):
    live = [a for a in approximations if not a.zero_module]
    if not live:
        return DeltaApprox.exactly(RationalFan.zero(n), zero_module=True)
    inner, outer = live[0].inner, live[0].outer
    for approximation in live[1:]:
        inner = inner.union(approximation.inner)
        outer = outer.union(approximation.outer)
    if all(a.exact for a in live):
        return DeltaApprox.exactly(outer)
    return DeltaApprox(inner, outer, False)


def exclude_certificate(M, phi, degree_bound):
    """
    Return an element of J whose support has a unique φ-minimum, or None.

    A certificate proves φ ∉ Δ(M).

    """
    n = M.algebra.rank
    phi = tuple(to_rational(x) for x in phi)
    if len(phi) != n:
        raise PresentationError(f"expected a character of length {n}")
    if M.free:
        return None
    # Rows pivoting at a level span the projections onto that level.
    reduced, pivots, exponents = _reduce_ideal(
        M, degree_bound, lambda m: (evaluate_character(phi, m), m)
    )
    for row, pivot in zip(reduced, pivots):
        level = evaluate_character(phi, exponents[pivot])
        if all(
            j == pivot or evaluate_character(phi, exponents[j]) != level for j in row
        ):
            return TorusElement(M.algebra, {exponents[j]: c for j, c in row.items()})
    return None


def delta_tensor(D1, D2):
    """
    Return Δ(M1 ⊗ M2) as the product of the two fans.

    """
    n = D1.ambient_dim + D2.ambient_dim
    if D1.zero_module or D2.zero_module:
        return DeltaApprox.exactly(RationalFan.zero(n), zero_module=True)
    inner = D1.inner.product(D2.inner)
    outer = D1.outer.product(D2.outer)
    if D1.exact and D2.exact:
        return DeltaApprox.exactly(outer)
    return DeltaApprox(inner, outer, False)


@dataclass(frozen=True)
class CarrierData:
    spaces: tuple
    subgroups: tuple


def carrier_spaces(F, m):
    """
    Return the spans of the m-dimensional cones of F and their
    annihilator sublattices.

    """
    if fan_dimension(F) != m:
        raise PreconditionFailed(
            "dimension mismatch", f"the fan has dimension {fan_dimension(F)}, not {m}"
        )
    spaces = []
    for cone in F.cones:
        if cone.dimension == m:
            span = cone.span()
            if span not in spaces:
                spaces.append(span)
    return CarrierData(tuple(spaces), tuple(ann_subspace(V) for V in spaces))


@dataclass(frozen=True)
class HolonomyVerdict:
    verdict: str
    reason: str
    gk: object = None
    witness: object = None

    CERTIFIED_FAILURE = "certified-failure"
    CONSISTENT = "consistent-up-to-bounds"

    @property
    def failed(self):
        return self.verdict == self.CERTIFIED_FAILURE


def strongly_holonomic_check(M, search_bounds=None):
    """
    Look for evidence that M is not strongly holonomic.

    A consistent verdict only means the bounded searches found nothing.

    """
    bounds = search_bounds or SearchBounds()
    P = M.algebra.presentation
    n = P.rank
    if not is_simple(P):
        raise PreconditionFailed("center larger than F")
    if n % 2:
        raise PreconditionFailed("odd rank", "strong holonomy needs an even rank")
    gk = gk_dimension(M, bounds)
    half = n // 2
    if gk.exact and gk.lower != half:
        return HolonomyVerdict(
            HolonomyVerdict.CERTIFIED_FAILURE, f"gk is {gk.lower}, not {half}", gk
        )
    if gk.upper < half:
        return HolonomyVerdict(
            HolonomyVerdict.CERTIFIED_FAILURE, f"gk is at most {gk.upper} < {half}", gk
        )
    if isinstance(M, CyclicModulePresentation):
        for r in range(1, n + 1):
            for count, C in enumerate(isotropic_sublattices(P, r, bounds.coeff_bound)):
                if count >= bounds.max_sublattices:
                    break
                witness = torsion_witness(M, C, bounds.degree_bound)
                if witness is not None:
                    return HolonomyVerdict(
                        HolonomyVerdict.CERTIFIED_FAILURE,
                        f"torsion over the commutative subalgebra on {C}",
                        gk,
                        (C, witness),
                    )
    return HolonomyVerdict(
        HolonomyVerdict.CONSISTENT,
        f"no torsion found at degree {bounds.degree_bound}",
        gk,
    )
