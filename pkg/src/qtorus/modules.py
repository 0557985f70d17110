"""
Finitely generated right modules over quantum tori.

Questions about the right ideal J of relations are answered by exact linear
algebra on its bounded part, the span of α·u^c for relations α and
cofactor exponents c in a box. A vector found there is a certificate; not
finding one is inconclusive.

"""

import functools
import itertools
import logging
from dataclasses import dataclass

from .conf import SearchBounds
from .elements import TorusElement, embed_element, evaluate_character
from .exceptions import (
    AlgebraMismatch,
    DimensionMismatch,
    NotExact,
    PresentationError,
    QTorusError,
)
from .fields import to_rational
from .lattice import Sublattice
from .linalg import reduce_vector, row_reduce

__all__ = [
    "CyclicModulePresentation",
    "FGModulePresentation",
    "GKResult",
    "box",
    "dim_exactness_check",
    "direct_sum",
    "filtration_verify",
    "gk_dimension",
    "in_right_ideal",
    "split_blocks",
    "tensor_module",
    "torsion_witness",
]

logger = logging.getLogger(__name__)


def box(n, radius):
    """
    Return the exponents with entries in [-radius, radius].

    """
    return itertools.product(range(-radius, radius + 1), repeat=n)


class CyclicModulePresentation:
    """
    The right module F*A / J where J = Σ α_i F*A.

    """

    def __init__(self, algebra, relations=()):
        relations = tuple(relations)
        for relation in relations:
            if relation.algebra != algebra:
                raise AlgebraMismatch("relation from another algebra")
            if relation.is_zero():
                raise PresentationError("relations must be nonzero")
        self.algebra = algebra
        self.relations = relations

    @property
    def principal(self):
        return len(self.relations) == 1

    @property
    def free(self):
        return not self.relations

    def translate(self, exponent):
        """
        Return the same module with every relation multiplied by u^exponent.

        """
        return CyclicModulePresentation(
            self.algebra, [relation.translate(exponent) for relation in self.relations]
        )

    def __eq__(self, other):
        return (
            isinstance(other, CyclicModulePresentation)
            and self.algebra == other.algebra
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.algebra, self.relations))

    def __repr__(self):
        relations = ", ".join(str(r) for r in self.relations)
        return f"CyclicModulePresentation([{relations}])"


class FGModulePresentation:
    """
    The right module F*A^g / (rows of the relation matrix) F*A.

    """

    def __init__(self, algebra, generators, relations=()):
        rows = []
        for row in relations:
            row = tuple(row)
            if len(row) != generators:
                raise DimensionMismatch(f"relation rows must have {generators} entries")
            for entry in row:
                if entry.algebra != algebra:
                    raise AlgebraMismatch("relation from another algebra")
            if all(entry.is_zero() for entry in row):
                raise PresentationError("relation rows must be nonzero")
            rows.append(row)
        if generators < 1:
            raise PresentationError("a module needs at least one generator")
        self.algebra = algebra
        self.generators = generators
        self.relations = tuple(rows)

    @classmethod
    def from_cyclic(cls, M):
        return cls(M.algebra, 1, [(relation,) for relation in M.relations])

    def is_diagonal(self):
        return all(sum(1 for entry in row if entry) == 1 for row in self.relations)

    def summands(self):
        """
        Return the cyclic summands of a diagonal presentation.

        """
        if not self.is_diagonal():
            raise PresentationError("the relation matrix is not diagonal")
        columns = [[] for _ in range(self.generators)]
        for row in self.relations:
            for index, entry in enumerate(row):
                if entry:
                    columns[index].append(entry)
        return [CyclicModulePresentation(self.algebra, column) for column in columns]

    def __eq__(self, other):
        return (
            isinstance(other, FGModulePresentation)
            and self.algebra == other.algebra
            and self.generators == other.generators
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.algebra, self.generators, self.relations))


def direct_sum(M1, M2):
    """
    Return M1 ⊕ M2 with a block-diagonal relation matrix.

    """
    if isinstance(M1, CyclicModulePresentation):
        M1 = FGModulePresentation.from_cyclic(M1)
    if isinstance(M2, CyclicModulePresentation):
        M2 = FGModulePresentation.from_cyclic(M2)
    if M1.algebra != M2.algebra:
        raise AlgebraMismatch("summands over different algebras")
    zero = M1.algebra.zero()
    rows = [row + (zero,) * M2.generators for row in M1.relations]
    rows += [(zero,) * M1.generators + row for row in M2.relations]
    return FGModulePresentation(M1.algebra, M1.generators + M2.generators, rows)


def tensor_module(M1, M2):
    """
    Return M1 ⊗ M2 over the tensor product of the algebras.

    """
    if not isinstance(M1, CyclicModulePresentation) or not isinstance(
        M2, CyclicModulePresentation
    ):
        raise PresentationError("tensor products need cyclic modules")
    algebra = M1.algebra.tensor(M2.algebra)
    relations = [embed_element(r, algebra, 0) for r in M1.relations]
    relations += [embed_element(r, algebra, M1.algebra.rank) for r in M2.relations]
    return CyclicModulePresentation(algebra, relations)


@functools.lru_cache(maxsize=64)
def _bounded_ideal(M, degree_bound):
    """
    Return the rows α·u^c spanning the bounded part of J.

    """
    rows = []
    for relation in M.relations:
        for c in box(M.algebra.rank, degree_bound):
            rows.append(relation.translate(c).terms)
    return tuple(rows)


def _reduce_ideal(M, degree_bound, order):
    """
    Row reduce the bounded part of J with columns sorted by order.

    Returns the reduced rows, their pivots and the column exponents.

    """
    rows = _bounded_ideal(M, degree_bound)
    exponents = sorted({m for row in rows for m in row}, key=order)
    index = {m: k for k, m in enumerate(exponents)}
    reduced, pivots = row_reduce(
        [{index[m]: c for m, c in row.items()} for row in rows],
        len(exponents),
        M.algebra.domain,
    )
    return reduced, pivots, exponents


def in_right_ideal(M, beta, degree_bound):
    """
    Check that beta lies in the span of α·u^c for c in the box.

    """
    if beta.algebra != M.algebra:
        raise AlgebraMismatch("element of another algebra")
    if beta.is_zero():
        return True
    if M.free:
        return False
    rows = _bounded_ideal(M, degree_bound)
    exponents = sorted({m for row in rows for m in row} | set(beta.terms))
    index = {m: k for k, m in enumerate(exponents)}
    domain = M.algebra.domain
    reduced, pivots = row_reduce(
        [{index[m]: c for m, c in row.items()} for row in rows], len(exponents), domain
    )
    vector = {index[m]: c for m, c in beta.terms.items()}
    return not reduce_vector(reduced, pivots, vector, domain)


def torsion_witness(M, B, degree_bound):
    """
    Return a nonzero β in J supported in B, or None.

    A witness proves that the generator of M is F*B-torsion.

    """
    if B.ambient_rank != M.algebra.rank:
        raise DimensionMismatch("sublattice of another lattice")
    if M.free:
        return None
    inside = B.membership_test()
    # Columns outside B come first, so rows pivoting in B live in B.
    reduced, pivots, exponents = _reduce_ideal(
        M, degree_bound, lambda m: (inside(m), m)
    )
    for row, pivot in zip(reduced, pivots):
        if inside(exponents[pivot]):
            witness = TorusElement(M.algebra, {exponents[j]: c for j, c in row.items()})
            logger.debug("torsion witness over %s: %s", B, witness)
            return witness
    return None


@dataclass(frozen=True)
class GKResult:
    """
    A bracket lower ≤ gk(M) ≤ upper, with the evidence for each side.

    The lower bound of a non-exact bracket is only as strong as the
    searches behind it.

    """

    lower: int
    upper: int
    exact: bool
    tag: str
    lower_certificate: object = None
    upper_certificate: object = None

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise ValueError("GK bracket must satisfy 0 <= lower <= upper")
        if self.exact and self.lower != self.upper:
            raise ValueError("an exact GK result has lower == upper")

    @property
    def value(self):
        if not self.exact:
            raise NotExact(f"GK dimension only known in [{self.lower}, {self.upper}]")
        return self.lower

    def __str__(self):
        if self.exact:
            return f"exact {self.lower} ({self.tag})"
        return f"bracket [{self.lower}, {self.upper}] ({self.tag})"


def _exact(value, tag, certificate=None):
    return GKResult(value, value, True, tag, certificate or tag, certificate or tag)


def _touched(relation):
    return {i for m in relation.terms for i, e in enumerate(m) if e}


def split_blocks(M):
    """
    Return the coordinate blocks of M: the connected components of the
    coordinates linked by a common relation or a nontrivial pairing.

    """
    n = M.algebra.rank
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for relation in M.relations:
        touched = sorted(_touched(relation))
        for i in touched[1:]:
            union(touched[0], i)
    P = M.algebra.presentation
    for i, j in itertools.combinations(range(n), 2):
        if P.pairing[i][j]:
            union(i, j)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values())


def block_module(M, coordinates):
    """
    Return the relations of M living on the coordinates, as a module over
    the subalgebra they generate.

    """
    algebra = M.algebra.restrict(coordinates)
    coordinates = list(coordinates)
    relations = []
    for relation in M.relations:
        if not _touched(relation) <= set(coordinates):
            continue
        relations.append(
            TorusElement(
                algebra,
                {
                    tuple(m[i] for i in coordinates): c
                    for m, c in relation.terms.items()
                },
            )
        )
    return CyclicModulePresentation(algebra, relations)


def _test_sublattices(n, r, limit):
    """
    Yield coordinate sublattices of rank r, then their images under the
    elementary matrices I + c E_ij with c in {±1, ±2}.

    """
    seen = set()
    bases = []
    for coordinates in itertools.combinations(range(n), r):
        bases.append(
            [tuple(1 if j == i else 0 for j in range(n)) for i in coordinates]
        )
    transformed = []
    for basis in bases:
        for i, j in itertools.permutations(range(n), 2):
            for c in (1, -1, 2, -2):
                transformed.append(
                    [
                        tuple(
                            v[k] + (c * v[i] if k == j else 0) for k in range(n)
                        )
                        for v in basis
                    ]
                )
    for basis in bases + transformed:
        sublattice = Sublattice.span(basis, n)
        if sublattice in seen:
            continue
        seen.add(sublattice)
        yield sublattice
        if len(seen) >= limit:
            return


def _has_unit_relation(M):
    return any(len(relation.terms) == 1 for relation in M.relations)


def _is_zero_module(M, degree_bound):
    if _has_unit_relation(M):
        return True
    zero = Sublattice.zero(M.algebra.rank)
    return torsion_witness(M, zero, degree_bound) is not None


def gk_dimension(M, search_bounds=None):
    """
    Return the GK dimension of M as an exact value or a bracket.

    """
    bounds = search_bounds or SearchBounds()
    if isinstance(M, FGModulePresentation):
        return _gk_fg(M, bounds)
    return _gk_cyclic(M, bounds, split=True)


def _gk_cyclic(M, bounds, split):
    # Inner import because the Δ machinery depends on this module.
    from .delta import delta_principal
    from .fans import fan_dimension

    n = M.algebra.rank
    if M.free:
        return _exact(n, "free")
    if _is_zero_module(M, bounds.degree_bound):
        return _exact(0, "zero-module")
    if split:
        blocks = split_blocks(M)
        if len(blocks) > 1:
            results = [
                _gk_cyclic(block_module(M, block), bounds, split=False)
                for block in blocks
            ]
            logger.info("module splits into %d tensor factors", len(blocks))
            if any(r.exact and r.tag == "zero-module" for r in results):
                return _exact(0, "zero-module")
            lower = sum(r.lower for r in results)
            upper = sum(r.upper for r in results)
            certificate = tuple(zip(map(tuple, blocks), results))
            if all(r.exact for r in results):
                return _exact(lower, "tensor", certificate)
            return GKResult(lower, upper, False, "tensor", certificate, certificate)
    if M.principal:
        dimension = fan_dimension(delta_principal(M).outer)
        return _exact(int(dimension), "principal")

    upper = n
    upper_certificate = []
    for relation in M.relations:
        principal = CyclicModulePresentation(M.algebra, [relation])
        dimension = int(fan_dimension(delta_principal(principal).outer))
        upper_certificate.append((relation, dimension))
        upper = min(upper, dimension)
    lower = 0
    lower_certificate = ("no search", bounds.degree_bound)
    witnesses = []
    for r in range(upper, 0, -1):
        found = None
        for B in _test_sublattices(n, r, bounds.max_sublattices):
            witness = torsion_witness(M, B, bounds.degree_bound)
            if witness is None:
                found = B
                break
            witnesses.append((B, witness))
        if found is not None:
            lower = r
            lower_certificate = (found, bounds.degree_bound)
            break
    logger.debug("GK bracket [%d, %d] after %d witnesses", lower, upper, len(witnesses))
    return GKResult(
        lower,
        upper,
        False,
        "bracket",
        lower_certificate,
        (tuple(upper_certificate), tuple(witnesses)),
    )


def _gk_fg(M, bounds):
    from .delta import delta_module
    from .fans import fan_dimension

    if M.generators == 1:
        return _gk_cyclic(
            CyclicModulePresentation(M.algebra, [row[0] for row in M.relations]),
            bounds,
            split=True,
        )
    if not M.is_diagonal():
        return GKResult(
            0, M.algebra.rank, False, "bracket", "unsupported", "unsupported"
        )
    summands = M.summands()
    approximations = [delta_module(summand, bounds) for summand in summands]
    if all(a.exact for a in approximations):
        live = [a.outer for a in approximations if not a.zero_module]
        if not live:
            return _exact(0, "zero-module")
        union = live[0]
        for fan in live[1:]:
            union = union.union(fan)
        return _exact(int(fan_dimension(union)), "direct-sum")
    results = [gk_dimension(summand, bounds) for summand in summands]
    return GKResult(
        max(r.lower for r in results),
        max(r.upper for r in results),
        False,
        "direct-sum",
        tuple(results),
        tuple(results),
    )


def dim_exactness_check(M1, M2, search_bounds=None):
    """
    Check that gk(M1 ⊕ M2) = max(gk(M1), gk(M2)).

    """
    first = gk_dimension(M1, search_bounds)
    second = gk_dimension(M2, search_bounds)
    if not (first.exact and second.exact):
        raise NotExact("both summands need an exact GK dimension")
    total = gk_dimension(direct_sum(M1, M2), search_bounds)
    return total.exact and total.lower == max(first.lower, second.lower)


def filtration_verify(M, phi, weights=None, window=3):
    """
    Check the φ-filtration L_μ = span{e_i u^m : w_i + φ(m) >= μ} of M,
    reduced modulo the relations, on the window of exponents with entries
    in [-window, window].

    (C1) and (C3) are checked on the images in the window quotient. (C4)
    fails when every generator is certified to lie in a strictly higher
    level: then L_μ = M for every μ. False is backed by a certificate; True
    is evidence for a proper filtration, not a proof.

    """
    if isinstance(M, CyclicModulePresentation):
        M = FGModulePresentation.from_cyclic(M)
    n = M.algebra.rank
    phi = tuple(to_rational(v) for v in phi)
    if len(phi) != n:
        raise DimensionMismatch(f"expected a character of length {n}")
    if window < 1:
        raise QTorusError("the window must contain at least one step")
    weights = tuple(to_rational(w) for w in (weights or (0,) * M.generators))
    if len(weights) != M.generators:
        raise DimensionMismatch(f"expected {M.generators} weights")
    if not any(phi):
        return True

    outer = _FiltrationWindow(M, phi, weights, window)
    # Certificates found here still fit in the outer window after a unit shift.
    inner = _FiltrationWindow(M, phi, weights, window - 1)
    mus = sorted(
        {outer.level((i, m)) for i in range(M.generators) for m in box(n, 1)}
    )
    for mu, nu in zip(mus, mus[1:]):
        for column in inner.columns:
            if outer.contains(column, nu) and not outer.contains(column, mu):
                logger.debug("(C1) fails between %s and %s at %s", mu, nu, column)
                return False
    for mu in mus:
        for j, sign in itertools.product(range(n), (1, -1)):
            target = mu + sign * phi[j]
            for i, m in inner.columns:
                moved = tuple(a + (sign if k == j else 0) for k, a in enumerate(m))
                if inner.contains((i, m), mu) and not outer.contains(
                    (i, moved), target
                ):
                    logger.debug("(C3) fails at %s for %s", mu, (i, m))
                    return False
    origin = (0,) * n
    for i in range(M.generators):
        if not outer.contains((i, origin), weights[i], strict=True):
            return True
    logger.debug("(C4) fails: every generator lies in a higher level")
    return False


class _FiltrationWindow:
    """
    The span of the window columns e_i u^m modulo the relation translates
    that fit in the window.

    """

    def __init__(self, M, phi, weights, radius):
        self.phi = phi
        self.weights = weights
        self.domain = M.algebra.domain
        self.columns = [
            (i, m) for i in range(M.generators) for m in box(M.algebra.rank, radius)
        ]
        self.index = {column: k for k, column in enumerate(self.columns)}
        self.rows = _window_relations(M, radius, self.index)
        self._reduced = {}

    def level(self, column):
        i, m = column
        return self.weights[i] + evaluate_character(self.phi, m)

    def _high(self, column, mu, strict):
        level = self.level(column)
        return level > mu if strict else level >= mu

    def contains(self, column, mu, strict=False):
        """
        Check that the image of column lies in L_μ, or in the union of the
        L_ν for ν > μ when strict.

        """
        if self._high(column, mu, strict):
            return True
        key = (mu, strict)
        if key not in self._reduced:
            # High columns are zero in the quotient by L_μ.
            high = {
                k
                for k, other in enumerate(self.columns)
                if self._high(other, mu, strict)
            }
            rows = [
                {k: c for k, c in row.items() if k not in high} for row in self.rows
            ]
            self._reduced[key] = row_reduce(rows, len(self.columns), self.domain)
        reduced, pivots = self._reduced[key]
        vector = {self.index[column]: self.domain.one}
        return not reduce_vector(reduced, pivots, vector, self.domain)


def _window_relations(M, window, index):
    rows = []
    for row in M.relations:
        support = [m for entry in row for m in entry.terms]
        low = [min(m[k] for m in support) for k in range(M.algebra.rank)]
        high = [max(m[k] for m in support) for k in range(M.algebra.rank)]
        ranges = [
            range(-window - lo, window - hi + 1) for lo, hi in zip(low, high)
        ]
        for shift in itertools.product(*ranges):
            vector = {}
            for i, entry in enumerate(row):
                if not entry:
                    continue
                for m, c in entry.translate(shift).terms.items():
                    vector[index[(i, m)]] = c
            rows.append(vector)
    return rows
