"""
Skew Laurent polynomials D[u, u^-1; σ] over a Laurent polynomial ring.

Localizing F*A at the nonzero elements of a commutative F*B, with B the
first n - 1 coordinates, gives a ring of this shape with u = u_n and
σ(b) = u b u^-1. Coefficients are kept in Q(x1, ..., xt); the Laurent
polynomials are the fractions whose denominator is a single term.

"""

import itertools
import logging
import random
from dataclasses import dataclass

from sympy import Symbol, sstr
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from . import conf
from .elements import QuantumTorus
from .exceptions import (
    AlgebraMismatch,
    NonUnitLeadingCoefficient,
    ParseError,
    PreconditionFailed,
    QTorusError,
    UnsupportedScalarGroup,
)
from .fields import TRANSFORMATIONS, ScalarEmbedding
from .linalg import reduce_vector, row_reduce
from .pairing import QTorusPresentation, ScalarGroup, is_simple, pairing_eval

__all__ = [
    "CompanionModule",
    "LaurentRing",
    "MonomialAutomorphism",
    "ProbeReport",
    "SkewLaurentPoly",
    "construct_simple_module",
    "degree_one_right_factor",
    "example_generator",
    "from_skew",
    "presentation_automorphism",
    "right_divide",
    "simplicity_probe",
    "skew_multiply",
    "skew_right_gcd",
    "skew_right_xgcd",
    "to_skew",
    "torsion_free_check",
    "unit_poly_check",
]

logger = logging.getLogger(__name__)


class LaurentRing:
    """
    Q[x1^±1, ..., xt^±1] inside the field Q(x1, ..., xt).

    """

    def __init__(self, t, prefix="x"):
        if t < 1:
            raise QTorusError("a Laurent ring needs at least one variable")
        self.t = t
        self.prefix = prefix
        self.symbol_names = tuple(f"{prefix}{i + 1}" for i in range(t))
        self.symbols = tuple(Symbol(name) for name in self.symbol_names)
        self.domain = ZZ.frac_field(*self.symbols)
        self.gens = tuple(self.domain.gens)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentRing) and self.symbol_names == other.symbol_names
        )

    def __hash__(self):
        return hash(("LaurentRing", self.symbol_names))

    def __repr__(self):
        return f"LaurentRing({self.t})"

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def rational(self, value):
        value = QQ.convert(value)
        return self.domain.convert(int(QQ.numer(value))) / self.domain.convert(
            int(QQ.denom(value))
        )

    def monomial(self, exponent, coeff=1):
        value = self.rational(coeff)
        for g, e in zip(self.gens, exponent):
            if e > 0:
                value = value * g**e
            elif e < 0:
                value = value / g ** (-e)
        return value

    def element(self, terms):
        return sum(
            (self.monomial(m, c) for m, c in terms.items()), self.domain.zero
        )

    def is_laurent(self, a):
        return len(a.denom) == 1

    def terms(self, a):
        """
        Return {exponent: rational coefficient} of a Laurent polynomial.

        """
        if not self.is_laurent(a):
            raise QTorusError(f"{self.format(a)} is not a Laurent polynomial")
        ((denominator, scale),) = a.denom.items()
        return {
            tuple(x - y for x, y in zip(m, denominator)): QQ(int(c), int(scale))
            for m, c in a.numer.items()
        }

    def is_unit(self, a):
        return bool(a) and len(a.numer) == 1 and len(a.denom) == 1

    def parse(self, text):
        try:
            expr = parse_expr(
                text,
                local_dict=dict(zip(self.symbol_names, self.symbols)),
                transformations=TRANSFORMATIONS,
            )
        except (SyntaxError, TypeError, ValueError) as exc:
            raise ParseError(f"cannot parse {text!r}: {exc}")
        unknown = expr.free_symbols - set(self.symbols)
        if unknown:
            names = ", ".join(sorted(str(s) for s in unknown))
            raise ParseError(f"unknown symbols: {names}")
        return self.domain.from_sympy(expr)

    def format(self, a):
        return sstr(self.domain.to_sympy(a))


class MonomialAutomorphism:
    """
    The automorphism σ(x_i) = λ_i x_i of a Laurent ring.

    """

    def __init__(self, ring, scalings):
        scalings = tuple(QQ.convert(s) for s in scalings)
        if len(scalings) != ring.t:
            raise QTorusError(f"expected {ring.t} scalings, got {len(scalings)}")
        if any(not s for s in scalings):
            raise QTorusError("scalings must be nonzero")
        self.ring = ring
        self.scalings = scalings

    @classmethod
    def identity(cls, ring):
        return cls(ring, (1,) * ring.t)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialAutomorphism)
            and self.ring == other.ring
            and self.scalings == other.scalings
        )

    def __hash__(self):
        return hash((self.ring, self.scalings))

    def __repr__(self):
        return f"MonomialAutomorphism({', '.join(str(s) for s in self.scalings)})"

    def power(self, k):
        if k >= 0:
            return MonomialAutomorphism(self.ring, [s**k for s in self.scalings])
        return MonomialAutomorphism(self.ring, [1 / s ** (-k) for s in self.scalings])

    def _apply_poly(self, p):
        ring = self.ring
        total = ring.zero
        for m, c in p.items():
            scale = QQ.one
            for s, e in zip(self.scalings, m):
                scale *= s**e
            total += ring.monomial(m, scale * int(c))
        return total

    def apply(self, a, k=1):
        """
        Return σ^k(a).

        """
        sigma = self if k == 1 else self.power(k)
        if all(s == 1 for s in sigma.scalings):
            return a
        return sigma._apply_poly(a.numer) / sigma._apply_poly(a.denom)


class SkewLaurentPoly:
    """
    A finite sum Σ a_i u^i with coefficients in the field of the Laurent
    ring, multiplied by the rule u a = σ(a) u.

    """

    __slots__ = ("ring", "sigma", "coeffs")

    def __init__(self, sigma, coeffs):
        self.sigma = sigma
        self.ring = sigma.ring
        domain = self.ring.domain
        self.coeffs = {
            int(i): domain.convert(c) for i, c in coeffs.items() if c
        }

    @classmethod
    def u(cls, sigma, power=1):
        return cls(sigma, {power: sigma.ring.one})

    @classmethod
    def constant(cls, sigma, value):
        return cls(sigma, {0: value})

    def _check(self, other):
        if not isinstance(other, SkewLaurentPoly):
            return SkewLaurentPoly.constant(self.sigma, other)
        if other.sigma != self.sigma:
            raise AlgebraMismatch("skew polynomials over different automorphisms")
        return other

    def __add__(self, other):
        other = self._check(other)
        coeffs = dict(self.coeffs)
        for i, c in other.coeffs.items():
            coeffs[i] = coeffs.get(i, self.ring.zero) + c
        return SkewLaurentPoly(self.sigma, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return SkewLaurentPoly(self.sigma, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        return skew_multiply(self, self._check(other))

    def __rmul__(self, other):
        return skew_multiply(self._check(other), self)

    def __eq__(self, other):
        if not isinstance(other, SkewLaurentPoly):
            return NotImplemented
        return self.sigma == other.sigma and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.sigma, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def low(self):
        return min(self.coeffs)

    @property
    def high(self):
        return max(self.coeffs)

    @property
    def degree(self):
        """
        The width high - low of the support, or -1 for zero.

        """
        if not self.coeffs:
            return -1
        return self.high - self.low

    @property
    def leading(self):
        return self.coeffs[self.high]

    @property
    def trailing(self):
        return self.coeffs[self.low]

    def shift(self, k):
        """
        Return u^k·self.

        """
        return SkewLaurentPoly(
            self.sigma, {i + k: self.sigma.apply(c, k) for i, c in self.coeffs.items()}
        )

    def left_scale(self, a):
        return SkewLaurentPoly(self.sigma, {i: a * c for i, c in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs, reverse=True):
            coeff = self.ring.format(self.coeffs[i])
            if i == 0:
                parts.append(coeff)
                continue
            power = "u" if i == 1 else f"u^{i}"
            if coeff == "1":
                parts.append(power)
            elif coeff == "-1":
                parts.append("-" + power)
            else:
                parts.append(f"({coeff})*{power}")
        text = parts[0]
        for part in parts[1:]:
            text += " - " + part[1:] if part.startswith("-") else " + " + part
        return text

    def __repr__(self):
        return f"SkewLaurentPoly({self})"


def skew_multiply(f, g):
    """
    Return f·g using (a u^i)(b u^j) = a σ^i(b) u^(i+j).

    """
    if f.sigma != g.sigma:
        raise AlgebraMismatch("skew polynomials over different automorphisms")
    coeffs = {}
    zero = f.ring.zero
    for i, a in f.coeffs.items():
        for j, b in g.coeffs.items():
            coeffs[i + j] = coeffs.get(i + j, zero) + a * f.sigma.apply(b, i)
    return SkewLaurentPoly(f.sigma, coeffs)


def unit_poly_check(gamma):
    """
    Check that both extreme coefficients of gamma are Laurent monomials.

    """
    if gamma.is_zero():
        raise QTorusError("the zero polynomial has no extreme coefficients")
    ring = gamma.ring
    return ring.is_unit(gamma.leading) and ring.is_unit(gamma.trailing)


def _divide(f, g):
    """
    Return (q, r) with f = q·g + r, inverting only g's leading coefficient.

    """
    if g.is_zero():
        raise QTorusError("division by zero")
    sigma = f.sigma
    g0 = g.shift(-g.low)
    d = g0.high
    lead = g0.leading
    offset = min(f.low, 0) if f else 0
    remainder = f.shift(-offset)
    quotient = {}
    while remainder and remainder.high >= d:
        k = remainder.high - d
        c = remainder.leading / sigma.apply(lead, k)
        quotient[k] = c
        remainder = remainder - SkewLaurentPoly(sigma, {k: c}) * g0
    q = SkewLaurentPoly(sigma, quotient)
    # f = u^offset q0 u^-low g + u^offset r0
    q = (SkewLaurentPoly.u(sigma, offset) * q) * SkewLaurentPoly.u(sigma, -g.low)
    return q, remainder.shift(offset)


def right_divide(f, g):
    """
    Return (q, r) with f = q·g + r and deg r < deg g.

    g must have a unit leading coefficient, so q and r stay Laurent.

    """
    if f.sigma != g.sigma:
        raise AlgebraMismatch("skew polynomials over different automorphisms")
    if g.is_zero():
        raise QTorusError("division by zero")
    if not g.ring.is_unit(g.leading):
        raise NonUnitLeadingCoefficient(
            f"leading coefficient {g.ring.format(g.leading)} is not a unit"
        )
    return _divide(f, g)


def _normalize(d):
    """
    Return the unit N with N·d monic and of lowest index 0.

    """
    shifted = d.shift(-d.low)
    inverse = d.ring.one / shifted.leading
    return SkewLaurentPoly(d.sigma, {0: inverse}) * SkewLaurentPoly.u(d.sigma, -d.low)


def skew_right_xgcd(f, g):
    """
    Return (d, a, b) with a·f + b·g = d, d the monic greatest common
    right divisor.

    """
    if f.sigma != g.sigma:
        raise AlgebraMismatch("skew polynomials over different automorphisms")
    if f.is_zero() and g.is_zero():
        raise QTorusError("the gcd of two zero polynomials is undefined")
    sigma = f.sigma
    one = SkewLaurentPoly.constant(sigma, sigma.ring.one)
    zero = SkewLaurentPoly(sigma, {})
    r0, a0, b0 = f, one, zero
    r1, a1, b1 = g, zero, one
    steps = 0
    while r1:
        q, r = _divide(r0, r1)
        r0, a0, b0, r1, a1, b1 = r1, a1, b1, r, a0 - q * a1, b0 - q * b1
        steps += 1
    logger.debug("Euclid finished after %d divisions", steps)
    unit = _normalize(r0)
    return unit * r0, unit * a0, unit * b0


def skew_right_gcd(f, g):
    return skew_right_xgcd(f, g)[0]


_DEFAULT_SCALARS = (1, -1, 2, -2, QQ(1, 2), QQ(-1, 2), 3, -3, QQ(1, 3), QQ(-1, 3))


def degree_one_right_factor(
    r, candidates=None, scalars=_DEFAULT_SCALARS, exponent_bound=2
):
    """
    Return a right factor u - c of r, or None.

    c runs over the candidate Laurent monomials (by default the monomials
    with exponents in [-exponent_bound, exponent_bound]) times the scalars.

    """
    if r.degree < 2:
        raise PreconditionFailed("degree", "only polynomials of degree >= 2 are probed")
    ring = r.ring
    if candidates is None:
        candidates = [
            ring.monomial(m)
            for m in itertools.product(
                range(-exponent_bound, exponent_bound + 1), repeat=ring.t
            )
        ]
    u = SkewLaurentPoly.u(r.sigma)
    for candidate in candidates:
        for scalar in scalars:
            factor = u - ring.rational(scalar) * candidate
            if right_divide(r, factor)[1].is_zero():
                return factor
    return None


def presentation_automorphism(P, embedding, prefix="x"):
    """
    Return σ(x_i) = u_n x_i u_n^-1 on the Laurent ring of the first n - 1
    coordinates.

    """
    n = P.rank
    if n < 2:
        raise PreconditionFailed("rank", "need a rank of at least 2")
    for i, j in itertools.combinations(range(n - 1), 2):
        if P.pairing[i][j]:
            raise PreconditionFailed("non-isotropic B", "F*B is not commutative")
    if embedding.kind != "primes":
        raise UnsupportedScalarGroup("skew Laurent rings need rational commutators")
    ring = LaurentRing(n - 1, prefix)
    scalings = [
        embedding.image(pairing_eval(P, P.unit_vector(n - 1), P.unit_vector(i)))
        for i in range(n - 1)
    ]
    return MonomialAutomorphism(ring, scalings)


def to_skew(x, sigma=None):
    """
    Return x as a skew Laurent polynomial in u = u_n.

    """
    algebra = x.algebra
    if sigma is None:
        sigma = presentation_automorphism(algebra.presentation, algebra.embedding)
    ring = sigma.ring
    coeffs = {}
    for m, c in x.terms.items():
        coeffs[m[-1]] = coeffs.get(m[-1], ring.zero) + ring.monomial(m[:-1], c)
    return SkewLaurentPoly(sigma, coeffs)


def from_skew(f, algebra):
    """
    Return the element of algebra represented by the skew polynomial f.

    """
    terms = {}
    for i, a in f.coeffs.items():
        for m, c in f.ring.terms(a).items():
            terms[m + (i,)] = c
    return algebra.element(terms)


def _matrix(ring, rows):
    k = len(rows)
    return DomainMatrix([list(row) for row in rows], (k, k), ring.domain)


class CompanionModule:
    """
    A free module of rank k over the Laurent ring with a right action of
    u and u^-1, on the basis e_j = u^j + J.

    u acts by v ↦ U·σ^-1(v) and x acts coordinatewise.

    """

    def __init__(self, sigma, matrix, gamma=None):
        self.sigma = sigma
        self.ring = sigma.ring
        self.rank = len(matrix)
        if self.rank < 1 or any(len(row) != self.rank for row in matrix):
            raise QTorusError("the action of u needs a square matrix")
        domain = self.ring.domain
        self.matrix = tuple(tuple(domain.convert(c) for c in row) for row in matrix)
        self.gamma = gamma
        self._inverse = None

    @classmethod
    def from_gamma(cls, gamma):
        """
        Return the module F*A/γF*A on the cosets of 1, u, ..., u^(k-1).

        Both extreme coefficients of γ must be units.

        """
        if not unit_poly_check(gamma):
            raise PreconditionFailed("non-unit extremes")
        sigma = gamma.sigma
        ring = gamma.ring
        normalized = SkewLaurentPoly(
            sigma, {i - gamma.low: c for i, c in gamma.coeffs.items()}
        )
        k = normalized.high
        if k < 1:
            raise PreconditionFailed("degree", "γ must have degree at least 1")
        # γ = Σ u^i β'_i with β'_i = σ^-i(β_i)
        right = {
            i: sigma.apply(normalized.coeffs.get(i, ring.zero), -i)
            for i in range(k + 1)
        }
        matrix = [[ring.zero] * k for _ in range(k)]
        for j in range(k - 1):
            matrix[j + 1][j] = ring.one
        for i in range(k):
            matrix[i][k - 1] = -right[i] / right[k]
        return cls(sigma, matrix, normalized)

    @property
    def inverse(self):
        if self._inverse is None:
            inverse = _matrix(self.ring, self.matrix).inv().to_list()
            self._inverse = tuple(tuple(row) for row in inverse)
        return self._inverse

    def determinant(self):
        return _matrix(self.ring, self.matrix).det()

    def basis_vector(self, j):
        return tuple(
            self.ring.one if i == j else self.ring.zero for i in range(self.rank)
        )

    def _apply(self, matrix, vector):
        return tuple(
            sum((a * b for a, b in zip(row, vector)), self.ring.zero) for row in matrix
        )

    def act_u(self, vector):
        return self._apply(self.matrix, [self.sigma.apply(c, -1) for c in vector])

    def act_u_inverse(self, vector):
        return tuple(self.sigma.apply(c) for c in self._apply(self.inverse, vector))

    def act_x(self, vector, a):
        return tuple(c * a for c in vector)

    def act_u_power(self, vector, k):
        step = self.act_u if k >= 0 else self.act_u_inverse
        for _ in range(abs(k)):
            vector = step(vector)
        return vector

    def act(self, vector, element):
        """
        Return vector·element for a skew Laurent polynomial element.

        """
        if element.sigma != self.sigma:
            raise AlgebraMismatch("element over another automorphism")
        total = [self.ring.zero] * self.rank
        for i, a in element.coeffs.items():
            image = self.act_u_power(self.act_x(vector, a), i)
            total = [x + y for x, y in zip(total, image)]
        return tuple(total)

    def dump(self):
        rows = ", ".join(
            "[" + ", ".join(self.ring.format(c) for c in row) + "]"
            for row in self.matrix
        )
        return f"rank {self.rank}\nU = [{rows}]"


def torsion_free_check(module):
    """
    Check that U is invertible over the Laurent ring.

    A free module on which u acts invertibly is torsion-free over F*B.

    """
    ring = module.ring
    determinant = module.determinant()
    if not ring.is_unit(determinant):
        return False
    for row in module.matrix + module.inverse:
        if not all(ring.is_laurent(c) for c in row):
            return False
    product = (_matrix(ring, module.matrix) * _matrix(ring, module.inverse)).to_list()
    return all(
        product[i][j] == (ring.one if i == j else ring.zero)
        for i in range(module.rank)
        for j in range(module.rank)
    )


def _verify(module):
    if not torsion_free_check(module):
        raise QTorusError(
            "the companion matrix is not invertible over the Laurent ring"
        )
    e0 = module.basis_vector(0)
    vector = e0
    for j in range(1, module.rank):
        vector = module.act_u(vector)
        if vector != module.basis_vector(j):
            raise QTorusError("the generator is not cyclic")
    if any(module.act(e0, module.gamma)):
        raise QTorusError("γ does not annihilate the generator")
    logger.debug("companion module of rank %d verified", module.rank)


def construct_simple_module(gamma, algebra):
    """
    Return the module F*A/γF*A as a free module over F*B, B the first
    n - 1 coordinates.

    """
    P = algebra.presentation
    if not is_simple(P):
        raise PreconditionFailed("non-simple algebra", "the center is larger than F")
    sigma = presentation_automorphism(P, algebra.embedding)
    if not isinstance(gamma, SkewLaurentPoly):
        if gamma.algebra != algebra:
            raise AlgebraMismatch("γ is from another algebra")
        gamma = to_skew(gamma, sigma)
    elif gamma.sigma != sigma:
        raise AlgebraMismatch("γ is over another automorphism")
    if gamma.is_zero() or not unit_poly_check(gamma):
        raise PreconditionFailed(
            "non-unit extremes", "the extreme coefficients of γ are not units"
        )
    module = CompanionModule.from_gamma(gamma)
    _verify(module)
    return module


@dataclass(frozen=True)
class ProbeReport:
    results: tuple
    status: str

    @property
    def passed(self):
        return all(ok for _, ok in self.results)


def _coordinates(module, vector):
    coordinates = {}
    for j, entry in enumerate(vector):
        for m, c in module.ring.terms(entry).items():
            coordinates[(j, m)] = c
    return coordinates


def _generates(module, vector, degree_bound):
    ring = module.ring
    rows = []
    for i in range(-degree_bound, degree_bound + 1):
        shifted = module.act_u_power(vector, i)
        window = range(-degree_bound, degree_bound + 1)
        for m in itertools.product(window, repeat=ring.t):
            rows.append(_coordinates(module, module.act_x(shifted, ring.monomial(m))))
    targets = [
        _coordinates(module, module.basis_vector(j)) for j in range(module.rank)
    ]
    columns = sorted({key for row in rows + targets for key in row})
    index = {key: k for k, key in enumerate(columns)}
    reduced, pivots = row_reduce(
        [{index[key]: c for key, c in row.items()} for row in rows], len(columns), QQ
    )
    return all(
        not reduce_vector(
            reduced, pivots, {index[key]: c for key, c in target.items()}, QQ
        )
        for target in targets
    )


def simplicity_probe(module, betas, degree_bound):
    """
    Check F*A = βF*A + J for each sampled β in the window.

    """
    results = []
    for beta in betas:
        if not beta:
            raise QTorusError("probe elements must be nonzero")
        vector = module.act_x(module.basis_vector(0), beta)
        ok = _generates(module, vector, degree_bound)
        logger.debug("probe %s: %s", module.ring.format(beta), ok)
        results.append((beta, ok))
    status = "simple (degree one)" if module.rank == 1 else "irreducibility assumed"
    return ProbeReport(tuple(results), status)


def example_generator(t, primes, k, seed=None):
    """
    Return (presentation, γ) with σ(x_i) = p_i x_i and
    γ = u^k + f_1 u^(k-1) + ... + f_(k-1) u + g, g a monomial.

    """
    if t < 1:
        raise PreconditionFailed("t", "t must be at least 1")
    if k < 1:
        raise PreconditionFailed("k", "k must be at least 1")
    primes = [int(p) for p in primes]
    if len(primes) != t:
        raise PreconditionFailed("primes", f"expected {t} primes, got {len(primes)}")
    if len(set(primes)) != len(primes):
        raise PreconditionFailed("repeated primes")
    rng = random.Random(conf.get_seed(seed))
    group = ScalarGroup(t, 0)
    n = t + 1
    entries = {
        (n - 1, i): tuple(1 if j == i else 0 for j in range(t)) for i in range(t)
    }
    P = QTorusPresentation.from_entries(n, group, entries)
    algebra = QuantumTorus(P, ScalarEmbedding.primes(group, primes))

    def exponent(low, high):
        return tuple(rng.randint(low, high) for _ in range(t))

    def coefficient():
        return rng.choice([1, -1, 2, -2, 3, -3])

    terms = {(0,) * t + (k,): 1}
    for i in range(1, k):
        for _ in range(rng.randint(1, 2)):
            terms[exponent(-1, 2) + (k - i,)] = coefficient()
    terms[exponent(0, 3) + (0,)] = coefficient()
    gamma = algebra.element(terms)
    logger.debug("example γ = %s", gamma)
    return P, gamma
