"""
Coefficient fields and the embedding of commutator exponents into them.

"""

import functools
from fractions import Fraction

from sympy import Basic, Symbol, isprime, sstr
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ, ZZ

from .exceptions import ParseError, QTorusError, UnsupportedScalarGroup

__all__ = ["CoeffField", "ScalarEmbedding", "to_rational"]

TRANSFORMATIONS = standard_transformations + (convert_xor,)


def to_rational(value):
    """
    Return value as an exact rational.

    Accepts integers, fractions, "p/q" strings and sympy rationals; floats
    and irrational numbers are rejected.

    """
    if isinstance(value, float):
        raise QTorusError(f"{value!r} is a float, use an exact rational")
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except ValueError:
            raise ParseError(f"{value!r} is not a rational number")
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Basic):
        if not value.is_Rational:
            raise QTorusError(f"{value} is not rational")
        return QQ.from_sympy(value)
    return QQ.convert(value)


class CoeffField:
    """
    The field Q, or Q(t1, ..., td) as reduced fractions of integer
    polynomials.

    """

    def __init__(self, symbol_names=()):
        self.symbol_names = tuple(symbol_names)
        self.symbols = tuple(Symbol(name) for name in self.symbol_names)
        if self.symbols:
            self.domain = ZZ.frac_field(*self.symbols)
        else:
            self.domain = QQ

    @classmethod
    def rationals(cls):
        return cls()

    @classmethod
    def rational_functions(cls, count, prefix="t"):
        return cls([f"{prefix}{i + 1}" for i in range(count)])

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    @property
    def gens(self):
        return tuple(self.domain.gens) if self.symbols else ()

    def convert(self, value):
        if isinstance(value, str):
            return self.parse(value)
        return self.domain.convert(value)

    def parse(self, text):
        try:
            expr = parse_expr(
                text,
                local_dict=dict(zip(self.symbol_names, self.symbols)),
                transformations=TRANSFORMATIONS,
            )
        except (SyntaxError, TypeError, ValueError) as exc:
            raise ParseError(f"cannot parse coefficient {text!r}: {exc}")
        return self.from_sympy(expr)

    def from_sympy(self, expr):
        unknown = expr.free_symbols - set(self.symbols)
        if unknown:
            names = ", ".join(sorted(str(s) for s in unknown))
            raise ParseError(f"unknown symbols in coefficient: {names}")
        try:
            return self.domain.from_sympy(expr)
        except Exception as exc:
            raise ParseError(f"{expr} is not an element of {self}: {exc}")

    def to_sympy(self, value):
        return self.domain.to_sympy(value)

    def format(self, value):
        return sstr(self.to_sympy(value))

    def __eq__(self, other):
        return isinstance(other, CoeffField) and self.symbol_names == other.symbol_names

    def __hash__(self):
        return hash(("CoeffField", self.symbol_names))

    def __str__(self):
        if not self.symbols:
            return "QQ"
        return "QQ(" + ",".join(self.symbol_names) + ")"

    __repr__ = __str__


class ScalarEmbedding:
    """
    Images of the free generators of the scalar group in the coefficient
    field. A torsion part must have order 2 and maps to -1.

    """

    def __init__(self, group, field, images):
        if group.torsion_modulus not in (0, 2):
            raise UnsupportedScalarGroup(
                "only the roots of unity ±1 have concrete coefficients"
            )
        images = tuple(field.convert(image) for image in images)
        if len(images) != group.free_rank:
            raise UnsupportedScalarGroup(
                f"expected {group.free_rank} generator images, got {len(images)}"
            )
        if any(not image for image in images):
            raise UnsupportedScalarGroup("generator images must be nonzero")
        self.group = group
        self.field = field
        self.images = images

    @classmethod
    def primes(cls, group, primes):
        primes = [int(p) for p in primes]
        if any(not isprime(p) for p in primes):
            raise UnsupportedScalarGroup("generator images must be primes")
        if len(set(primes)) != len(primes):
            raise UnsupportedScalarGroup("generator primes must be distinct")
        return cls(group, CoeffField.rationals(), primes)

    @classmethod
    def symbolic(cls, group, prefix="t"):
        field = CoeffField.rational_functions(group.free_rank, prefix)
        return cls(group, field, field.gens)

    @property
    def kind(self):
        return "symbols" if self.field.symbols else "primes"

    def image(self, value):
        """
        Return the field element with exponent vector value.

        """
        return _image(self, value.free_part, value.torsion_part)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarEmbedding)
            and self.group == other.group
            and self.field == other.field
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.group, self.field, self.images))

    def __repr__(self):
        images = ", ".join(self.field.format(image) for image in self.images)
        return f"ScalarEmbedding({self.field}, [{images}])"


@functools.lru_cache(maxsize=4096)
def _image(embedding, free_part, torsion_part):
    result = embedding.field.one
    for image, exponent in zip(embedding.images, free_part):
        if exponent:
            result = result * image**exponent
    if torsion_part:
        result = -result
    return result
