"""
Integer lattices and rational subspaces in canonical form.

Sublattices of Z^n are stored by the rows of their Hermite normal form,
rational subspaces of Q^n by the primitive integer rows of their reduced
row echelon form. Both forms are unique, so equality is structural.

"""

import math
from dataclasses import dataclass

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.polys.domains import QQ, ZZ

from .exceptions import DimensionMismatch
from .linalg import row_reduce

__all__ = [
    "RationalSubspace",
    "Sublattice",
    "complete_basis",
    "hermite_rows",
    "integer_kernel",
    "primitive_vector",
    "solve_integer",
]


def _check_vector(vector, n):
    vector = tuple(int(x) for x in vector)
    if len(vector) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(vector)}")
    return vector


def _matrix(rows, ncols):
    return Matrix(len(rows), ncols, [int(x) for row in rows for x in row])


def hermite_rows(rows, ncols):
    """
    Return the Hermite normal form basis of the lattice spanned by rows.

    """
    rows = [tuple(int(x) for x in row) for row in rows]
    rows = [row for row in rows if any(row)]
    if not rows:
        return ()
    # sympy puts the column span in Hermite normal form.
    hnf = hermite_normal_form(_matrix(rows, ncols).T)
    return tuple(
        tuple(int(hnf[i, j]) for i in range(ncols)) for j in range(hnf.cols)
    )


def _smith(rows, ncols):
    diagonal, left, right = smith_normal_decomp(_matrix(rows, ncols), domain=ZZ)
    size = min(diagonal.shape)
    return [int(diagonal[i, i]) for i in range(size)], left, right


def integer_kernel(rows, ncols):
    """
    Return a Z-basis of {x in Z^ncols : row . x = 0 for every row}.

    """
    rows = [tuple(int(x) for x in row) for row in rows]
    rows = [row for row in rows if any(row)]
    if not rows:
        return [
            tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)
        ]
    diagonal, _, right = _smith(rows, ncols)
    return [
        tuple(int(right[i, j]) for i in range(ncols))
        for j in range(ncols)
        if j >= len(diagonal) or diagonal[j] == 0
    ]


def solve_integer(rows, rhs, ncols):
    """
    Return an integer solution x of rows . x = rhs, or None.

    """
    rows = [tuple(int(x) for x in row) for row in rows]
    rhs = [int(b) for b in rhs]
    if len(rhs) != len(rows):
        raise DimensionMismatch("right-hand side does not match the system")
    if not rows:
        return (0,) * ncols
    if ncols == 0:
        return () if not any(rhs) else None
    diagonal, left, right = _smith(rows, ncols)
    image = left * Matrix(rhs)
    y = [0] * ncols
    for i in range(len(rows)):
        d = diagonal[i] if i < len(diagonal) else 0
        b = int(image[i])
        if d == 0:
            if b != 0:
                return None
        elif b % d:
            return None
        else:
            y[i] = b // d
    x = right * Matrix(y)
    return tuple(int(v) for v in x)


def primitive_vector(vector):
    """
    Return the primitive integer vector on the ray of a rational vector.

    """
    vector = [QQ.convert(x) for x in vector]
    denominator = 1
    for x in vector:
        denominator = math.lcm(denominator, int(x.denominator))
    scaled = [int(x.numerator) * (denominator // int(x.denominator)) for x in vector]
    divisor = math.gcd(*scaled) if scaled else 0
    if divisor == 0:
        return tuple(scaled)
    return tuple(x // divisor for x in scaled)


def _rank(rows, ncols):
    if not rows:
        return 0
    reduced, _ = row_reduce([dict(enumerate(row)) for row in rows], ncols, QQ)
    return len(reduced)


@dataclass(frozen=True)
class Sublattice:
    """
    A subgroup of Z^n, given by its Hermite normal form basis.

    Build instances with span(); the constructor expects a canonical basis.

    """

    ambient_rank: int
    basis: tuple = ()

    def __post_init__(self):
        if self.ambient_rank < 0:
            raise ValueError("ambient rank must be nonnegative")
        for row in self.basis:
            if len(row) != self.ambient_rank:
                raise DimensionMismatch("basis rows must have the ambient rank")

    @classmethod
    def span(cls, vectors, ambient_rank):
        vectors = [_check_vector(v, ambient_rank) for v in vectors]
        return cls(ambient_rank, hermite_rows(vectors, ambient_rank))

    @classmethod
    def full(cls, ambient_rank):
        return cls.span(
            [
                tuple(1 if i == j else 0 for j in range(ambient_rank))
                for i in range(ambient_rank)
            ],
            ambient_rank,
        )

    @classmethod
    def zero(cls, ambient_rank):
        return cls(ambient_rank, ())

    @property
    def rank(self):
        return len(self.basis)

    def __contains__(self, vector):
        return self.membership_test()(vector)

    def membership_test(self):
        """
        Return a predicate deciding membership in the sublattice.

        The Smith decomposition is computed once, so the predicate is cheap.

        """
        n = self.ambient_rank
        if not self.basis:
            return lambda vector: not any(_check_vector(vector, n))
        system = [[row[i] for row in self.basis] for i in range(n)]
        diagonal, left, _ = _smith(system, self.rank)
        left = [[int(left[i, j]) for j in range(n)] for i in range(n)]
        divisors = [diagonal[i] if i < len(diagonal) else 0 for i in range(n)]

        def test(vector):
            vector = _check_vector(vector, n)
            for row, d in zip(left, divisors):
                value = sum(a * b for a, b in zip(row, vector))
                if d == 0:
                    if value:
                        return False
                elif value % d:
                    return False
            return True

        return test

    def is_subgroup_of(self, other):
        return all(row in other for row in self.basis)

    def join(self, other):
        self._check_ambient(other)
        return Sublattice.span(self.basis + other.basis, self.ambient_rank)

    def intersection(self, other):
        self._check_ambient(other)
        if not self.basis or not other.basis:
            return Sublattice.zero(self.ambient_rank)
        system = [
            [row[i] for row in self.basis] + [-row[i] for row in other.basis]
            for i in range(self.ambient_rank)
        ]
        points = []
        for z in integer_kernel(system, self.rank + other.rank):
            points.append(
                tuple(
                    sum(z[k] * row[i] for k, row in enumerate(self.basis))
                    for i in range(self.ambient_rank)
                )
            )
        return Sublattice.span(points, self.ambient_rank)

    def saturation(self):
        """
        Return the isolator of the sublattice: (Q B) ∩ Z^n.

        """
        if not self.basis:
            return self
        normals = integer_kernel(self.basis, self.ambient_rank)
        return Sublattice.span(
            integer_kernel(normals, self.ambient_rank), self.ambient_rank
        )

    def is_saturated(self):
        return self == self.saturation()

    def index_in(self, other):
        """
        Return [other : self], or None when the index is infinite.

        """
        if not self.is_subgroup_of(other):
            raise ValueError("not a subgroup")
        if self.rank != other.rank:
            return None
        if not self.basis:
            return 1
        coordinates = []
        for row in self.basis:
            system = [[b[i] for b in other.basis] for i in range(self.ambient_rank)]
            coordinates.append(solve_integer(system, row, other.rank))
        return abs(int(_matrix(coordinates, other.rank).det()))

    def _check_ambient(self, other):
        if self.ambient_rank != other.ambient_rank:
            raise DimensionMismatch("sublattices of different lattices")

    def __str__(self):
        rows = ",".join("(" + ",".join(str(x) for x in row) + ")" for row in self.basis)
        return f"<{rows}>"


def complete_basis(sublattice):
    """
    Return a basis of Z^n whose first rows are a basis of the sublattice.

    The sublattice must be saturated.

    """
    n = sublattice.ambient_rank
    if not sublattice.is_saturated():
        raise ValueError("only saturated sublattices have a complementary basis")
    if not sublattice.basis:
        return Sublattice.full(n).basis
    _, _, right = _smith(sublattice.basis, n)
    inverse = right.inv()
    complement = [
        tuple(int(inverse[i, j]) for j in range(n))
        for i in range(sublattice.rank, n)
    ]
    return tuple(sublattice.basis) + tuple(complement)


@dataclass(frozen=True)
class RationalSubspace:
    """
    A subspace of Q^n, given by primitive integer rows of its reduced
    row echelon basis.

    """

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors, ambient_dim):
        rows = []
        for vector in vectors:
            vector = [QQ.convert(x) for x in vector]
            if len(vector) != ambient_dim:
                raise DimensionMismatch(
                    f"expected a vector of length {ambient_dim}, got {len(vector)}"
                )
            if any(vector):
                rows.append(dict(enumerate(vector)))
        if not rows:
            return cls(ambient_dim, ())
        reduced, _ = row_reduce(rows, ambient_dim, QQ)
        basis = tuple(
            primitive_vector([row.get(j, QQ.zero) for j in range(ambient_dim)])
            for row in reduced
        )
        return cls(ambient_dim, basis)

    @classmethod
    def full(cls, ambient_dim):
        return cls.span(Sublattice.full(ambient_dim).basis, ambient_dim)

    @property
    def dim(self):
        return len(self.basis)

    def __contains__(self, vector):
        vector = tuple(QQ.convert(x) for x in vector)
        if not any(vector):
            return True
        rows = list(self.basis) + [vector]
        return _rank(rows, self.ambient_dim) == self.dim

    def __str__(self):
        rows = ",".join("(" + ",".join(str(x) for x in row) + ")" for row in self.basis)
        return f"span{{{rows}}}"
