"""
Rational polyhedral cones and fans in Q^n.

A cone is kept in both descriptions: extreme rays plus a lineality space,
and inequalities a.x >= 0 plus equalities e.x = 0. Conversions use a small
exact double description that enumerates tight subsets of constraints,
which is fine in the low dimensions used here.

"""

import itertools
import math
import re
from dataclasses import dataclass

from sympy.polys.domains import QQ

from .exceptions import DimensionMismatch, ParseError
from .fields import to_rational
from .lattice import RationalSubspace, primitive_vector
from .linalg import nullspace, rank

__all__ = ["EMPTY_DIMENSION", "RationalCone", "RationalFan", "fan_dimension"]

EMPTY_DIMENSION = -math.inf


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), QQ.zero)


def _rows(vectors):
    return [dict(enumerate(v)) for v in vectors]


def _clean(vectors, n):
    cleaned = []
    for vector in vectors:
        vector = tuple(vector)
        if len(vector) != n:
            raise DimensionMismatch(
                f"expected a vector of length {n}, got {len(vector)}"
            )
        vector = primitive_vector(vector)
        if any(vector) and vector not in cleaned:
            cleaned.append(vector)
    return cleaned


def _extreme_rays(n, inequalities, equalities):
    """
    Return (rays, lineality) of {x : a.x >= 0, e.x = 0}.

    """
    inequalities = _clean(inequalities, n)
    equalities = _clean(equalities, n)
    lineality = RationalSubspace.span(
        nullspace(_rows(inequalities + equalities), n, QQ), n
    ).basis
    # The pointed part lives in the orthogonal complement of the lineality.
    fixed = equalities + list(lineality)
    fixed_rank = rank(_rows(fixed), n, QQ)
    needed = n - 1 - fixed_rank
    rays = set()
    if needed >= 0:
        for subset in itertools.combinations(inequalities, needed):
            solutions = nullspace(_rows(fixed + list(subset)), n, QQ)
            if len(solutions) != 1:
                continue
            vector = primitive_vector(solutions[0])
            if all(_dot(a, vector) >= 0 for a in inequalities):
                rays.add(vector)
            elif all(_dot(a, vector) <= 0 for a in inequalities):
                rays.add(tuple(-x for x in vector))
    return tuple(sorted(rays)), tuple(lineality)


@dataclass(frozen=True)
class RationalCone:
    """
    A closed rational polyhedral cone, in both descriptions.

    """

    ambient_dim: int
    rays: tuple
    lineality: tuple
    inequalities: tuple
    equalities: tuple

    @classmethod
    def from_constraints(cls, n, inequalities=(), equalities=()):
        rays, lineality = _extreme_rays(n, inequalities, equalities)
        facets, hull = _extreme_rays(n, rays, lineality)
        return cls(n, rays, lineality, facets, hull)

    @classmethod
    def from_generators(cls, n, generators=(), lineality=()):
        generators = list(generators)
        facets, hull = _extreme_rays(n, generators, lineality)
        rays, lineality = _extreme_rays(n, facets, hull)
        return cls(n, rays, lineality, facets, hull)

    @classmethod
    def zero(cls, n):
        return cls.from_generators(n, ())

    @classmethod
    def whole(cls, n):
        return cls.from_constraints(n, (), ())

    @property
    def generators(self):
        """
        Return generators of the cone as a nonnegative span.

        """
        return (
            self.rays
            + self.lineality
            + tuple(tuple(-x for x in v) for v in self.lineality)
        )

    @property
    def dimension(self):
        return rank(_rows(self.rays + self.lineality), self.ambient_dim, QQ)

    def span(self):
        return RationalSubspace.span(self.rays + self.lineality, self.ambient_dim)

    def is_zero(self):
        return not self.rays and not self.lineality

    def __contains__(self, phi):
        phi = tuple(to_rational(x) for x in phi)
        if len(phi) != self.ambient_dim:
            raise DimensionMismatch("character of the wrong dimension")
        return all(_dot(a, phi) >= 0 for a in self.inequalities) and all(
            _dot(e, phi) == 0 for e in self.equalities
        )

    def interior_point(self):
        point = [QQ.zero] * self.ambient_dim
        for ray in self.rays:
            point = [p + r for p, r in zip(point, ray)]
        return tuple(point)

    def contains_cone(self, other):
        return all(v in self for v in other.generators)

    def intersection(self, other):
        self._check(other)
        return RationalCone.from_constraints(
            self.ambient_dim,
            self.inequalities + other.inequalities,
            self.equalities + other.equalities,
        )

    def lift(self, coordinates, n):
        """
        Return the cone {x in Q^n : x restricted to coordinates in self}.

        """
        def place(vector):
            full = [0] * n
            for c, value in zip(coordinates, vector):
                full[c] = value
            return tuple(full)

        return (
            [place(a) for a in self.inequalities],
            [place(e) for e in self.equalities],
        )

    def product(self, other):
        """
        Return self × other in Q^(n1 + n2).

        """
        n1, n2 = self.ambient_dim, other.ambient_dim
        first = self.lift(range(n1), n1 + n2)
        second = other.lift(range(n1, n1 + n2), n1 + n2)
        return RationalCone.from_constraints(
            n1 + n2, first[0] + second[0], first[1] + second[1]
        )

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("cones in different spaces")

    def sort_key(self):
        return (-self.dimension, self.rays, self.lineality)

    def dump(self):
        vectors = ";".join(
            "(" + ",".join(str(x) for x in v) + ")" for v in self.generators
        )
        return f"cone: gens=[{vectors}]"

    def __str__(self):
        return self.dump()


_CONE_LINE = re.compile(r"^cone:\s*gens=\[(.*)\]\s*$")


def _parse_vector(text, line):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"malformed vector {text!r}", line)
    try:
        return tuple(to_rational(x) for x in text[1:-1].split(","))
    except ValueError as exc:
        raise ParseError(str(exc), line)


@dataclass(frozen=True)
class RationalFan:
    """
    A finite union of rational cones, reduced so that no cone contains
    another.

    """

    ambient_dim: int
    cones: tuple = ()

    @classmethod
    def from_cones(cls, n, cones):
        unique = []
        for cone in cones:
            if cone.ambient_dim != n:
                raise DimensionMismatch("cone in the wrong space")
            if cone not in unique:
                unique.append(cone)
        reduced = [
            cone
            for cone in unique
            if not any(other != cone and other.contains_cone(cone) for other in unique)
        ]
        return cls(n, tuple(sorted(reduced, key=RationalCone.sort_key)))

    @classmethod
    def zero(cls, n):
        return cls(n, (RationalCone.zero(n),))

    @classmethod
    def whole(cls, n):
        return cls(n, (RationalCone.whole(n),))

    @classmethod
    def empty(cls, n):
        return cls(n, ())

    @property
    def dimension(self):
        return fan_dimension(self)

    def is_empty(self):
        return not self.cones

    def __contains__(self, phi):
        return any(phi in cone for cone in self.cones)

    def contains_fan(self, other):
        """
        Check that every cone of other lies in some cone of self.

        """
        return all(
            any(mine.contains_cone(cone) for mine in self.cones) for cone in other.cones
        )

    def union(self, other):
        self._check(other)
        return RationalFan.from_cones(self.ambient_dim, self.cones + other.cones)

    def intersection(self, other):
        self._check(other)
        return RationalFan.from_cones(
            self.ambient_dim,
            [a.intersection(b) for a in self.cones for b in other.cones],
        )

    def product(self, other):
        return RationalFan.from_cones(
            self.ambient_dim + other.ambient_dim,
            [a.product(b) for a in self.cones for b in other.cones],
        )

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("fans in different spaces")

    def dump(self):
        return "\n".join(cone.dump() for cone in self.cones)

    @classmethod
    def parse(cls, text, n=None):
        cones = []
        for number, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            match = _CONE_LINE.match(line)
            if match is None:
                raise ParseError(f"expected a cone line, got {line!r}", number)
            body = match.group(1).strip()
            vectors = (
                [_parse_vector(v, number) for v in body.split(";")] if body else []
            )
            if vectors:
                dims = {len(v) for v in vectors}
                if len(dims) != 1:
                    raise ParseError("vectors of different lengths", number)
                (dim,) = dims
                if n is None:
                    n = dim
                elif dim != n:
                    raise ParseError(f"expected vectors of length {n}", number)
            cones.append((vectors, number))
        if n is None:
            raise ParseError("cannot infer the dimension of an empty fan")
        return cls.from_cones(
            n, [RationalCone.from_generators(n, vectors) for vectors, _ in cones]
        )


def fan_dimension(F):
    """
    Return the largest dimension of a cone of F, or -inf for an empty fan.

    """
    if not F.cones:
        return EMPTY_DIMENSION
    return max(cone.dimension for cone in F.cones)
