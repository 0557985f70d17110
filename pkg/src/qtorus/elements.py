"""
Exact arithmetic in quantum tori.

Elements are finite sums of normal-ordered monomials u^m = u1^m1 ... un^mn
with coefficients in Q or Q(t1, ..., td). Products follow

    u^m u^m' = Π_{j>i} q_ji^(m_j m'_i) u^(m+m')

which fixes a concrete cocycle for the algebra.

"""

import logging
import random
from tokenize import TokenError

from sympy import Add, Integer, Symbol
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ

from . import conf
from .exceptions import AlgebraMismatch, DimensionMismatch, ParseError, QTorusError
from .fields import TRANSFORMATIONS, to_rational
from .pairing import pairing_eval, restrict_presentation, tensor_presentations

__all__ = [
    "QuantumTorus",
    "TorusElement",
    "cocycle_check",
    "embed_element",
    "initial_form",
    "is_unit",
    "monomial_commutator",
    "monomial_inverse",
    "multiply",
    "support",
    "tensor_algebra",
]

logger = logging.getLogger(__name__)


class QuantumTorus:
    """
    The algebra F*A of a presentation, with coefficients fixed by a scalar
    embedding.

    """

    def __init__(self, presentation, embedding, prefix="u"):
        if embedding.group != presentation.group:
            raise AlgebraMismatch("the embedding is for another scalar group")
        self.presentation = presentation
        self.embedding = embedding
        self.prefix = prefix
        self.field = embedding.field
        self.domain = embedding.field.domain
        n = presentation.rank
        self._lower = [
            (j, i, presentation.pairing[j][i])
            for i in range(n)
            for j in range(i + 1, n)
            if presentation.pairing[j][i]
        ]

    @property
    def rank(self):
        return self.presentation.rank

    def __eq__(self, other):
        return (
            isinstance(other, QuantumTorus)
            and self.presentation == other.presentation
            and self.embedding == other.embedding
        )

    def __hash__(self):
        return hash((self.presentation, self.embedding))

    def __repr__(self):
        return f"QuantumTorus({self.presentation}, {self.embedding})"

    def twist(self, m, m2):
        """
        Return τ(m, m'), the scalar with u^m u^m' = τ(m, m') u^(m+m').

        """
        total = self.presentation.group.zero()
        for j, i, value in self._lower:
            exponent = m[j] * m2[i]
            if exponent:
                total = total + exponent * value
        return self.embedding.image(total)

    def tensor(self, other):
        if self.embedding != other.embedding:
            raise AlgebraMismatch("tensor factors need the same scalar embedding")
        presentation = tensor_presentations(self.presentation, other.presentation)
        return QuantumTorus(presentation, self.embedding, self.prefix)

    def restrict(self, coordinates):
        """
        Return the subalgebra on the given coordinate generators.

        """
        presentation = restrict_presentation(
            self.presentation, [self.presentation.unit_vector(i) for i in coordinates]
        )
        return QuantumTorus(presentation, self.embedding, self.prefix)

    def zero(self):
        return TorusElement(self, {})

    def one(self):
        return self.monomial((0,) * self.rank)

    def monomial(self, exponent, coeff=1):
        exponent = self._exponent(exponent)
        return TorusElement(self, {exponent: self.field.convert(coeff)})

    def generator(self, i):
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.rank)))

    def element(self, terms):
        return TorusElement(
            self,
            {self._exponent(m): self.field.convert(c) for m, c in terms.items()},
        )

    def scalar(self, value):
        return self.monomial((0,) * self.rank, value)

    def _exponent(self, exponent):
        exponent = tuple(int(x) for x in exponent)
        if len(exponent) != self.rank:
            raise DimensionMismatch(
                f"expected an exponent of length {self.rank}, got {len(exponent)}"
            )
        return exponent

    def symbol_names(self):
        return [f"{self.prefix}{i + 1}" for i in range(self.rank)]

    def parse(self, text):
        """
        Parse a sum of normal-ordered terms such as 2*u1^2*u2^-1 - t1*u2.

        A product of variables is always read in normal order.

        """
        names = self.symbol_names()
        variables = [Symbol(name) for name in names]
        local_dict = dict(zip(names, variables))
        local_dict.update(zip(self.field.symbol_names, self.field.symbols))
        try:
            expr = parse_expr(
                text, local_dict=local_dict, transformations=TRANSFORMATIONS
            )
        except (SyntaxError, TypeError, ValueError, TokenError) as exc:
            raise ParseError(f"cannot parse element {text!r}: {exc}")
        position = {v: i for i, v in enumerate(variables)}
        terms = {}
        for term in Add.make_args(expr):
            if term.is_zero:
                continue
            coeff, monomial = term.as_independent(*variables, as_Add=False)
            exponent = [0] * self.rank
            for base, power in monomial.as_powers_dict().items():
                if base == 1:
                    continue
                if base not in position:
                    raise ParseError(
                        f"{term} is not a coefficient times a normal-ordered monomial"
                    )
                if not isinstance(power, Integer):
                    raise ParseError(f"exponent {power} of {base} is not an integer")
                exponent[position[base]] += int(power)
            value = self.field.from_sympy(coeff)
            key = tuple(exponent)
            terms[key] = terms.get(key, self.field.zero) + value
        return TorusElement(self, terms)

    def format_term(self, exponent, coeff):
        parts = []
        for i, e in enumerate(exponent):
            if e == 1:
                parts.append(f"{self.prefix}{i + 1}")
            elif e:
                parts.append(f"{self.prefix}{i + 1}^{e}")
        monomial = "*".join(parts)
        text = self.field.format(coeff)
        if self.field.symbols and not _is_atom(text):
            text = f"({text})"
        if not monomial:
            return text
        if text == "1":
            return monomial
        if text == "-1":
            return "-" + monomial
        return f"{text}*{monomial}"


def _is_atom(text):
    body = text[1:] if text.startswith("-") else text
    return all(c.isalnum() or c in "_^" for c in body)


class TorusElement:
    """
    An element of a quantum torus in normal form.

    Elements are immutable values.

    """

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    def _check(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        if other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")
        return other

    def _coerce(self, other):
        if isinstance(other, TorusElement):
            return self._check(other)
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, self.algebra.field.zero) + c
        return TorusElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return multiply(self, other)
        value = self.algebra.field.convert(other)
        return TorusElement(self.algebra, {m: c * value for m, c in self.terms.items()})

    def __rmul__(self, other):
        value = self.algebra.field.convert(other)
        return TorusElement(self.algebra, {m: value * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            if not self.terms:
                return other == 0
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def support(self):
        return frozenset(self.terms)

    def inverse(self):
        unit = is_unit(self)
        if unit is None:
            raise QTorusError(f"{self} is not a unit")
        coeff, exponent = unit
        return (1 / coeff) * monomial_inverse(self.algebra, exponent)

    def translate(self, exponent):
        """
        Return self·u^exponent.

        """
        return multiply(self, self.algebra.monomial(exponent))

    def __str__(self):
        if not self.terms:
            return "0"
        text = ""
        for m in sorted(self.terms):
            term = self.algebra.format_term(m, self.terms[m])
            if not text:
                text = term
            elif term.startswith("-"):
                text += " - " + term[1:]
            else:
                text += " + " + term
        return text

    def __repr__(self):
        return f"TorusElement({self})"


def multiply(x, y):
    """
    Return the product of two elements of the same algebra.

    """
    if x.algebra != y.algebra:
        raise AlgebraMismatch("elements of different algebras")
    algebra = x.algebra
    zero = algebra.field.zero
    terms = {}
    for m, c in x.terms.items():
        for m2, c2 in y.terms.items():
            key = tuple(a + b for a, b in zip(m, m2))
            terms[key] = terms.get(key, zero) + c * c2 * algebra.twist(m, m2)
    return TorusElement(algebra, terms)


def monomial_inverse(algebra, exponent):
    """
    Return (u^m)^-1 = μ(m) u^-m with μ(m) = Π_{j>i} q_ji^(m_j m_i).

    """
    exponent = algebra._exponent(exponent)
    mu = algebra.twist(exponent, exponent)
    return TorusElement(algebra, {tuple(-x for x in exponent): mu})


def is_unit(x):
    """
    Return (coefficient, exponent) when x is a unit, None otherwise.

    The units are exactly the nonzero scalar multiples of monomials.

    """
    if len(x.terms) != 1:
        return None
    ((exponent, coeff),) = x.terms.items()
    return coeff, exponent


def monomial_commutator(algebra, a, b):
    """
    Return the scalar u^a u^b (u^a)^-1 (u^b)^-1.

    """
    return algebra.embedding.image(pairing_eval(algebra.presentation, a, b))


def support(x):
    return x.support()


def _character(phi, n):
    phi = tuple(to_rational(v) for v in phi)
    if len(phi) != n:
        raise DimensionMismatch(f"expected a character of length {n}, got {len(phi)}")
    return phi


def evaluate_character(phi, exponent):
    return sum((p * e for p, e in zip(phi, exponent)), QQ.zero)


def initial_form(x, phi):
    """
    Return the sum of the terms of x on which phi is minimal.

    """
    if not x.terms:
        raise QTorusError("the zero element has no initial form")
    phi = _character(phi, x.algebra.rank)
    values = {m: evaluate_character(phi, m) for m in x.terms}
    lowest = min(values.values())
    return TorusElement(
        x.algebra, {m: c for m, c in x.terms.items() if values[m] == lowest}
    )


def cocycle_check(algebra, trials, *, seed=None, product=None):
    """
    Check τ(a1,a2) τ(a1+a2,a3) = τ(a2,a3) τ(a1,a2+a3) on random triples.

    product(a, b) returns τ(a, b); it defaults to the algebra's twist and
    may be replaced to test other multiplication tables.

    """
    if product is None:
        product = algebra.twist
    rng = random.Random(conf.get_seed(seed))
    n = algebra.rank

    def draw():
        return tuple(rng.randint(-4, 4) for _ in range(n))

    for _ in range(trials):
        a1, a2, a3 = draw(), draw(), draw()
        a12 = tuple(x + y for x, y in zip(a1, a2))
        a23 = tuple(x + y for x, y in zip(a2, a3))
        if product(a1, a2) * product(a12, a3) != product(a2, a3) * product(a1, a23):
            logger.warning("cocycle identity fails for %s, %s, %s", a1, a2, a3)
            return False
    return True


def tensor_algebra(P1, P2):
    """
    Return the presentation of F*A1 ⊗ F*A2 with block-diagonal pairing.

    """
    return tensor_presentations(P1, P2)


def embed_element(x, target, offset):
    """
    Return the image of x in target, with coordinates shifted by offset.

    The target must contain x's algebra as the block starting at offset.

    """
    n = x.algebra.rank
    if offset < 0 or offset + n > target.rank:
        raise DimensionMismatch("the block does not fit in the target algebra")
    if target.field != x.algebra.field:
        raise AlgebraMismatch("coefficient fields differ")
    before = (0,) * offset
    after = (0,) * (target.rank - offset - n)
    return TorusElement(target, {before + m + after: c for m, c in x.terms.items()})
