"""
The commutator pairing of a quantum torus and the structural algorithms
that depend only on it.

Commutators u^a u^b (u^a)^-1 (u^b)^-1 are scalars. They are tracked
additively, as exponent vectors in Z^d ⊕ Z/m over the declared generators
of the scalar group, so questions about the center or about commuting
monomials become integer linear algebra.

"""

import itertools
import logging
import math
from dataclasses import dataclass

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import QQ, ZZ

from .exceptions import (
    DegenerateForm,
    DimensionMismatch,
    InvalidWitness,
    PreconditionFailed,
    PresentationError,
    QTorusError,
    UnsupportedScalarGroup,
)
from .lattice import (
    RationalSubspace,
    Sublattice,
    integer_kernel,
    primitive_vector,
    solve_integer,
)
from .linalg import nullspace, rank

__all__ = [
    "BlockDecomposition",
    "CommutingMonomials",
    "FourSubgroupWitness",
    "QTorusPresentation",
    "ScalarGroup",
    "ScalarSubgroup",
    "ScalarValue",
    "TheoremBStep",
    "alternating_block_decomposition",
    "ann_subgroup",
    "ann_subspace",
    "commuting_monomials",
    "derived_unit_subgroup",
    "four_subgroup_validate",
    "is_isotropic",
    "is_simple",
    "isotropic_search",
    "isotropic_sublattices",
    "pairing_eval",
    "pfaffian",
    "radical",
    "restrict_presentation",
    "tensor_presentations",
    "theoremB_step",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarGroup:
    """
    The group Z^d ⊕ Z/m housing commutator exponents.

    m = 0 means there is no torsion part.

    """

    free_rank: int = 1
    torsion_modulus: int = 0

    def __post_init__(self):
        if self.free_rank < 0:
            raise PresentationError("free rank must be nonnegative")
        if self.torsion_modulus < 0 or self.torsion_modulus == 1:
            raise PresentationError("torsion modulus must be 0 or at least 2")

    def value(self, free=None, torsion=0):
        free = tuple(int(x) for x in (free if free is not None else ()))
        if not free:
            free = (0,) * self.free_rank
        if len(free) != self.free_rank:
            raise DimensionMismatch(
                f"expected {self.free_rank} free coordinates, got {len(free)}"
            )
        if self.torsion_modulus:
            m = self.torsion_modulus
            return ScalarValue(free, int(torsion) % m, m)
        if torsion:
            raise PresentationError("torsion part given for a torsion-free group")
        return ScalarValue(free, None, 0)

    def zero(self):
        return self.value()

    def coordinates(self):
        """
        Return the number of integer coordinates of a lifted value.

        """
        return self.free_rank + (1 if self.torsion_modulus else 0)


@dataclass(frozen=True)
class ScalarValue:
    free_part: tuple
    torsion_part: object = None
    modulus: int = 0

    def _combine(self, other, sign):
        if (len(self.free_part), self.modulus) != (len(other.free_part), other.modulus):
            raise DimensionMismatch("values from different scalar groups")
        free = tuple(a + sign * b for a, b in zip(self.free_part, other.free_part))
        if self.modulus:
            torsion = (self.torsion_part + sign * other.torsion_part) % self.modulus
            return ScalarValue(free, torsion, self.modulus)
        return ScalarValue(free, None, 0)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, factor):
        factor = int(factor)
        free = tuple(factor * a for a in self.free_part)
        if self.modulus:
            torsion = (factor * self.torsion_part) % self.modulus
            return ScalarValue(free, torsion, self.modulus)
        return ScalarValue(free, None, 0)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.free_part) and not self.torsion_part

    def __bool__(self):
        return not self.is_zero()

    def lift(self):
        """
        Return the integer coordinates, torsion last.

        """
        if self.modulus:
            return self.free_part + (self.torsion_part,)
        return self.free_part

    def __str__(self):
        text = ",".join(str(a) for a in self.free_part)
        if self.modulus:
            text += f";{self.torsion_part}"
        return text


@dataclass(frozen=True)
class QTorusPresentation:
    """
    A quantum torus u_i u_j = q_ij u_j u_i given by the exponents of q_ij.

    pairing[i][j] is the exponent vector of q_ij; it is alternating.

    """

    rank: int
    group: ScalarGroup
    pairing: tuple

    def __post_init__(self):
        if self.rank < 0:
            raise PresentationError("rank must be nonnegative")
        if len(self.pairing) != self.rank or any(
            len(row) != self.rank for row in self.pairing
        ):
            raise PresentationError("pairing must be a rank x rank matrix")
        for i in range(self.rank):
            for j in range(self.rank):
                value = self.pairing[i][j]
                if len(value.free_part) != self.group.free_rank or (
                    value.modulus != self.group.torsion_modulus
                ):
                    raise PresentationError(
                        f"pairing entry ({i + 1},{j + 1}) is not in the scalar group"
                    )
                if self.group.torsion_modulus and not (
                    0 <= value.torsion_part < self.group.torsion_modulus
                ):
                    raise PresentationError(
                        f"pairing entry ({i + 1},{j + 1}) has torsion out of range"
                    )
            if self.pairing[i][i]:
                raise PresentationError(f"pairing entry ({i + 1},{i + 1}) is not zero")
            for j in range(i):
                if self.pairing[i][j] != -self.pairing[j][i]:
                    raise PresentationError(
                        f"pairing is not alternating at ({i + 1},{j + 1})"
                    )

    @classmethod
    def from_entries(cls, rank, group, entries):
        """
        Build a presentation from {(i, j): value} with 0-based i < j or i > j.

        Values are ScalarValues, integer vectors, or (vector, torsion) pairs.

        """
        zero = group.zero()
        matrix = [[zero] * rank for _ in range(rank)]
        for (i, j), value in entries.items():
            if not (0 <= i < rank and 0 <= j < rank):
                raise PresentationError(f"pairing index ({i + 1},{j + 1}) out of range")
            if i == j:
                raise PresentationError(f"diagonal entry ({i + 1},{i + 1}) given")
            value = _as_value(group, value)
            matrix[i][j] = value
            matrix[j][i] = -value
        return cls(rank, group, tuple(tuple(row) for row in matrix))

    @classmethod
    def from_integer_matrix(cls, matrix):
        """
        Build a presentation over the scalar group Z from an integer matrix.

        """
        group = ScalarGroup(1, 0)
        rank = len(matrix)
        pairing = tuple(
            tuple(group.value((int(matrix[i][j]),)) for j in range(rank))
            for i in range(rank)
        )
        return cls(rank, group, pairing)

    @classmethod
    def trivial(cls, rank, group=None):
        group = group or ScalarGroup(1, 0)
        zero = group.zero()
        return cls(rank, group, tuple((zero,) * rank for _ in range(rank)))

    def free_matrix(self, k):
        return [[value.free_part[k] for value in row] for row in self.pairing]

    def torsion_matrix(self):
        return [[value.torsion_part for value in row] for row in self.pairing]

    def unit_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def __str__(self):
        group = self.group
        return (
            f"QTorusPresentation(rank={self.rank}, "
            f"d={group.free_rank}, m={group.torsion_modulus})"
        )


def _as_value(group, value):
    if isinstance(value, ScalarValue):
        return value
    if isinstance(value, int):
        return group.value((value,))
    value = tuple(value)
    if len(value) == 2 and isinstance(value[0], (tuple, list)):
        return group.value(value[0], value[1])
    return group.value(value)


def _check_vector(P, vector):
    vector = tuple(int(x) for x in vector)
    if len(vector) != P.rank:
        raise DimensionMismatch(
            f"expected a vector of length {P.rank}, got {len(vector)}"
        )
    return vector


def pairing_eval(P, a, b):
    """
    Return λ(a, b) = Σ a_i b_j pairing[i][j].

    """
    a = _check_vector(P, a)
    b = _check_vector(P, b)
    total = P.group.zero()
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj and i != j:
                total = total + (ai * bj) * P.pairing[i][j]
    return total


def _annihilator_system(P, vectors):
    """
    Return integer rows expressing λ(x, v) = 0 for v in vectors.

    The unknowns are x followed by one slack variable per torsion row.

    """
    n = P.rank
    m = P.group.torsion_modulus
    free_rows = []
    torsion_rows = []
    for v in vectors:
        values = [pairing_eval(P, P.unit_vector(i), v) for i in range(n)]
        for k in range(P.group.free_rank):
            free_rows.append([value.free_part[k] for value in values])
        if m:
            torsion_rows.append([value.torsion_part for value in values])
    width = n + len(torsion_rows)
    rows = [row + [0] * len(torsion_rows) for row in free_rows]
    for t, row in enumerate(torsion_rows):
        slack = [0] * len(torsion_rows)
        slack[t] = m
        rows.append(row + slack)
    return rows, width


def radical(P):
    """
    Return the sublattice {a : λ(a, b) = 0 for all b}.

    The central monomials of the algebra are exactly u^a for a in it.

    """
    n = P.rank
    rows, width = _annihilator_system(P, [P.unit_vector(j) for j in range(n)])
    kernel = integer_kernel(rows, width)
    return Sublattice.span([v[:n] for v in kernel], n)


def is_simple(P):
    return radical(P).rank == 0


@dataclass(frozen=True)
class ScalarSubgroup:
    """
    A subgroup of Z^d ⊕ Z/m, stored as a lattice of lifted coordinates
    containing m·e_torsion.

    """

    group: ScalarGroup
    lattice: Sublattice

    @property
    def invariant_factors(self):
        if not self.lattice.basis:
            return ()
        factors = invariant_factors(Matrix(self.lattice.basis), domain=ZZ)
        return tuple(int(f) for f in factors)

    def __contains__(self, value):
        return value.lift() in self.lattice

    def __str__(self):
        return str(self.lattice)


def derived_unit_subgroup(P):
    """
    Return the subgroup of the scalar group generated by the q_ij.

    """
    group = P.group
    width = group.coordinates()
    generators = [
        P.pairing[i][j].lift() for i in range(P.rank) for j in range(i + 1, P.rank)
    ]
    if group.torsion_modulus:
        generators.append((0,) * group.free_rank + (group.torsion_modulus,))
    return ScalarSubgroup(group, Sublattice.span(generators, width))


def is_isotropic(P, B):
    if B.ambient_rank != P.rank:
        raise DimensionMismatch("sublattice of a different lattice")
    return all(
        pairing_eval(P, b, c).is_zero()
        for b, c in itertools.combinations(B.basis, 2)
    )


def _candidate_vectors(n, coeff_bound):
    candidates = []
    for vector in itertools.product(range(-coeff_bound, coeff_bound + 1), repeat=n):
        if not any(vector):
            continue
        if next(x for x in vector if x) < 0:
            continue
        if math.gcd(*vector) != 1:
            continue
        candidates.append(vector)
    # Short vectors first; among equal norms, coordinate vectors e1, e2, ... first.
    candidates.sort(key=lambda v: (sum(abs(x) for x in v), tuple(-x for x in v)))
    return candidates


def isotropic_sublattices(P, target_rank, coeff_bound):
    """
    Yield the distinct isotropic sublattices of the target rank whose bases
    have entries bounded by coeff_bound, in search order.

    """
    n = P.rank
    if not 1 <= target_rank <= n:
        raise PreconditionFailed("target rank", f"target rank must be in [1, {n}]")
    candidates = _candidate_vectors(n, coeff_bound)
    logger.debug(
        "searching isotropic sublattices of rank %d among %d vectors",
        target_rank,
        len(candidates),
    )
    seen = set()

    def extend(chosen, start):
        if len(chosen) == target_rank:
            sublattice = Sublattice.span(chosen, n)
            if sublattice not in seen:
                seen.add(sublattice)
                yield sublattice
            return
        for index in range(start, len(candidates)):
            vector = candidates[index]
            if any(not pairing_eval(P, vector, w).is_zero() for w in chosen):
                continue
            rows = [dict(enumerate(w)) for w in chosen + [vector]]
            if rank(rows, n, QQ) < len(rows):
                continue
            yield from extend(chosen + [vector], index + 1)

    yield from extend([], 0)


def isotropic_search(P, target_rank, coeff_bound):
    """
    Return an isotropic sublattice of the target rank, or None.

    None does not prove that no such sublattice exists.

    """
    return next(isotropic_sublattices(P, target_rank, coeff_bound), None)


@dataclass(frozen=True)
class CommutingMonomials:
    """
    Monomials c_k in C such that the c_k + s·e_k pairwise commute.

    """

    s: int
    monomials: tuple
    coefficients: tuple
    extension: tuple

    def commuting_vectors(self):
        return tuple(
            tuple(c + self.s * e for c, e in zip(monomial, vector))
            for monomial, vector in zip(self.monomials, self.extension)
        )


def _solve_commuting(P, c_basis, ext, s_max):
    n = P.rank
    r = len(c_basis)
    K = len(ext)
    m = P.group.torsion_modulus
    pairs = list(itertools.combinations(range(K), 2))
    unknowns = K * r
    # Coefficients of each equation do not depend on s, only right-hand sides.
    free_rows, free_rhs = [], []
    torsion_rows, torsion_rhs = [], []
    for k, l in pairs:
        cross_kl = [pairing_eval(P, b, ext[l]) for b in c_basis]
        cross_lk = [pairing_eval(P, b, ext[k]) for b in c_basis]
        target = pairing_eval(P, ext[k], ext[l])
        for f in range(P.group.free_rank):
            row = [0] * unknowns
            for t in range(r):
                row[k * r + t] += cross_kl[t].free_part[f]
                row[l * r + t] -= cross_lk[t].free_part[f]
            free_rows.append(row)
            free_rhs.append(-target.free_part[f])
        if m:
            row = [0] * unknowns
            for t in range(r):
                row[k * r + t] += cross_kl[t].torsion_part
                row[l * r + t] -= cross_lk[t].torsion_part
            torsion_rows.append(row)
            torsion_rhs.append(target.torsion_part)

    for s in range(1, s_max + 1):
        logger.debug("solving for commuting monomials with s = %d", s)
        slack = len(torsion_rows)
        rows = [row + [0] * slack for row in free_rows]
        rhs = [s * b for b in free_rhs]
        for index, row in enumerate(torsion_rows):
            extra = [0] * slack
            extra[index] = m
            rows.append([s * x for x in row] + extra)
            rhs.append(-s * s * torsion_rhs[index])
        if rows:
            solution = solve_integer(rows, rhs, unknowns + slack)
        else:
            solution = (0,) * unknowns
        if solution is None:
            continue
        coefficients = tuple(
            tuple(solution[k * r + t] for t in range(r)) for k in range(K)
        )
        monomials = tuple(
            tuple(
                sum(coefficients[k][t] * c_basis[t][i] for t in range(r))
                for i in range(n)
            )
            for k in range(K)
        )
        result = CommutingMonomials(s, monomials, coefficients, tuple(ext))
        vectors = result.commuting_vectors()
        if not all(
            pairing_eval(P, a, b).is_zero()
            for a, b in itertools.combinations(vectors, 2)
        ):
            raise QTorusError("commuting monomials failed verification")
        return result
    return None


def commuting_monomials(P, C, ext, s_max):
    """
    Return the smallest s ≤ s_max and c_k in C with c_k + s·e_k pairwise
    isotropic, or None.

    """
    ext = [_check_vector(P, e) for e in ext]
    if not is_isotropic(P, C):
        raise PreconditionFailed("C not isotropic", "C must be isotropic")
    rows = [dict(enumerate(v)) for v in list(C.basis) + ext]
    if rank(rows, P.rank, QQ) < len(rows):
        raise PreconditionFailed(
            "dependent extension", "C's basis and the extension must be independent"
        )
    return _solve_commuting(P, list(C.basis), ext, s_max)


@dataclass(frozen=True)
class FourSubgroupWitness:
    B1: Sublattice
    B2: Sublattice
    B3: Sublattice
    B4: Sublattice

    def __post_init__(self):
        ranks = {b.ambient_rank for b in self.subgroups()}
        if len(ranks) != 1:
            raise DimensionMismatch("witness subgroups live in different lattices")

    def subgroups(self):
        return (self.B1, self.B2, self.B3, self.B4)


def _commute(P, X, Y):
    return all(pairing_eval(P, x, y).is_zero() for x in X.basis for y in Y.basis)


def four_subgroup_validate(P, w):
    n = P.rank
    if n % 2:
        raise DegenerateForm("four-subgroup witnesses need an even rank")
    if w.B1.ambient_rank != n:
        raise DimensionMismatch("witness subgroups of a different lattice")
    half = n // 2
    B1, B2, B3, B4 = w.subgroups()
    if any(b.rank == 0 for b in w.subgroups()):
        return False
    if not all(is_isotropic(P, b) for b in w.subgroups()):
        return False
    if not (_commute(P, B1, B2) and _commute(P, B2, B3) and _commute(P, B3, B4)):
        return False
    if B1.intersection(B2).rank or B3.intersection(B4).rank:
        return False
    if B1.join(B2).intersection(B3.join(B4)).rank:
        return False
    return B1.rank + B2.rank == B2.rank + B3.rank == B3.rank + B4.rank == half


@dataclass(frozen=True)
class TheoremBStep:
    """
    The change of variables w'_i = ν_i + s·w_i, u'_j = μ_j + s·u_j.

    """

    s: int
    B1_prime: Sublattice
    B4_prime: Sublattice
    u_prime: tuple
    w_prime: tuple
    mu: tuple
    nu: tuple


def theoremB_step(P, w, s_max):
    """
    Return the new bases of B1' and B4' with [B1'B3, B2B4'] = 1, or None.

    """
    if not four_subgroup_validate(P, w):
        raise InvalidWitness("four-subgroup witness fails validation")
    B1, B2, B3, B4 = w.subgroups()
    whole = B1.join(B2).join(B3).join(B4)
    if whole.rank < P.rank:
        raise PreconditionFailed(
            "infinite index", "the witness subgroups must have finite index"
        )
    c_basis = list(B2.basis) + list(B3.basis)
    ext = list(B4.basis) + list(B1.basis)
    result = _solve_commuting(P, c_basis, ext, s_max)
    if result is None:
        return None
    n = P.rank
    split = B2.rank

    def part(coefficients, basis):
        return tuple(
            sum(c * row[i] for c, row in zip(coefficients, basis)) for i in range(n)
        )

    nu, w_prime = [], []
    for i, w_i in enumerate(B4.basis):
        nu_i = part(result.coefficients[i][split:], B3.basis)
        nu.append(nu_i)
        w_prime.append(tuple(a + result.s * b for a, b in zip(nu_i, w_i)))
    mu, u_prime = [], []
    for j, u_j in enumerate(B1.basis):
        mu_j = part(result.coefficients[B4.rank + j][:split], B2.basis)
        mu.append(mu_j)
        u_prime.append(tuple(a + result.s * b for a, b in zip(mu_j, u_j)))
    left = u_prime + list(B3.basis)
    right = list(B2.basis) + w_prime
    if not all(pairing_eval(P, a, b).is_zero() for a in left for b in right):
        raise QTorusError("change of variables failed verification")
    logger.info("change of variables found with s = %d", result.s)
    return TheoremBStep(
        result.s,
        Sublattice.span(u_prime, n),
        Sublattice.span(w_prime, n),
        tuple(u_prime),
        tuple(w_prime),
        tuple(mu),
        tuple(nu),
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """
    A basis v_1, w_1, ..., v_m, w_m of a finite-index sublattice with
    λ(v_i, w_i) = divisors[i] and all other pairings zero.

    """

    sublattice: Sublattice
    blocks: tuple

    @property
    def basis(self):
        return tuple(vector for pair, _ in self.blocks for vector in pair)

    @property
    def divisors(self):
        return tuple(d for _, d in self.blocks)


def _integer_form(P):
    if (P.group.free_rank, P.group.torsion_modulus) != (1, 0):
        raise UnsupportedScalarGroup("block decomposition needs the scalar group Z")
    return P.free_matrix(0)


def _form(matrix, v, w):
    return sum(
        v[i] * matrix[i][j] * w[j]
        for i in range(len(v))
        for j in range(len(w))
        if v[i] and w[j]
    )


def _smallest_pair(matrix, vectors):
    best = None
    for i, j in itertools.combinations(range(len(vectors)), 2):
        value = abs(_form(matrix, vectors[i], vectors[j]))
        if value and (best is None or value < best[0]):
            best = (value, i, j)
    return best


def alternating_block_decomposition(P):
    """
    Return the symplectic normal form of a nondegenerate integer pairing.

    """
    matrix = _integer_form(P)
    n = P.rank
    if n % 2:
        raise DegenerateForm("alternating forms of odd rank are degenerate")
    if radical(P).rank:
        raise DegenerateForm("the pairing has a nontrivial radical")
    remaining = [list(P.unit_vector(i)) for i in range(n)]
    blocks = []
    while remaining:
        _, i, j = _smallest_pair(matrix, remaining)
        e, f = remaining[i], remaining[j]
        d = _form(matrix, e, f)
        if d < 0:
            e, f, d = f, e, -d
        others = [v for k, v in enumerate(remaining) if k not in (i, j)]
        for k, v in enumerate(others):
            a, b = _form(matrix, e, v), _form(matrix, f, v)
            if a % d:
                others[k] = [x - (a // d) * y for x, y in zip(v, f)]
                break
            if b % d:
                others[k] = [x + (b // d) * y for x, y in zip(v, e)]
                break
        else:
            cleared = []
            for v in others:
                a, b = _form(matrix, e, v), _form(matrix, f, v)
                cleared.append(
                    [x + (b // d) * y - (a // d) * z for x, y, z in zip(v, e, f)]
                )
            blocks.append(((tuple(e), tuple(f)), d))
            remaining = cleared
            continue
        remaining = [e, f] + others
    blocks.sort(key=lambda block: block[1])
    vectors = [vector for pair, _ in blocks for vector in pair]
    for x, y in itertools.combinations(range(n), 2):
        expected = blocks[x // 2][1] if (x % 2 == 0 and y == x + 1) else 0
        if _form(matrix, vectors[x], vectors[y]) != expected:
            raise QTorusError("block decomposition failed verification")
    logger.info("pairing splits into blocks with divisors %s", [d for _, d in blocks])
    return BlockDecomposition(Sublattice.span(vectors, n), tuple(blocks))


def pfaffian(P):
    """
    Return the Pfaffian of an integer pairing matrix.

    """
    _integer_form(P)
    if P.rank % 2:
        return 0
    if P.rank == 0:
        return 1
    try:
        decomposition = alternating_block_decomposition(P)
    except DegenerateForm:
        return 0
    # Pf(T^t A T) = det(T) Pf(A), and the block form has Pfaffian Π d_i.
    change = Matrix(decomposition.basis).T
    product = math.prod(decomposition.divisors)
    determinant = int(change.det())
    return product // determinant


def tensor_presentations(P1, P2):
    """
    Return the presentation of the tensor product: a block-diagonal pairing
    with trivial cross pairings.

    """
    if P1.group != P2.group:
        raise UnsupportedScalarGroup("tensor factors need the same scalar group")
    n = P1.rank + P2.rank
    zero = P1.group.zero()
    pairing = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < P1.rank and j < P1.rank:
                row.append(P1.pairing[i][j])
            elif i >= P1.rank and j >= P1.rank:
                row.append(P2.pairing[i - P1.rank][j - P1.rank])
            else:
                row.append(zero)
        pairing.append(tuple(row))
    return QTorusPresentation(n, P1.group, tuple(pairing))


def restrict_presentation(P, vectors):
    """
    Return the presentation of the subalgebra on the monomials u^v_i.

    """
    vectors = [_check_vector(P, v) for v in vectors]
    rows = [dict(enumerate(v)) for v in vectors]
    if vectors and rank(rows, P.rank, QQ) < len(vectors):
        raise PreconditionFailed("dependent vectors", "vectors must be independent")
    pairing = tuple(
        tuple(pairing_eval(P, a, b) for b in vectors) for a in vectors
    )
    return QTorusPresentation(len(vectors), P.group, pairing)


def ann_subgroup(B):
    """
    Return ann(B) = {φ : φ(b) = 0 for b in B} as a rational subspace.

    """
    n = B.ambient_rank
    rows = [dict(enumerate(b)) for b in B.basis]
    if not rows:
        return RationalSubspace.full(n)
    basis = nullspace(rows, n, QQ)
    return RationalSubspace.span(basis, n)


def ann_subspace(V):
    """
    Return the isolated sublattice {b : φ(b) = 0 for φ in V}.

    """
    n = V.ambient_dim
    rows = [primitive_vector(v) for v in V.basis]
    return Sublattice.span(integer_kernel(rows, n), n)
