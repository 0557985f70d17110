import random
import unittest

from sympy.polys.domains import QQ

from qtorus import (
    CompanionModule,
    LaurentRing,
    MonomialAutomorphism,
    SkewLaurentPoly,
    construct_simple_module,
    degree_one_right_factor,
    example_generator,
    gk_dimension,
    presentation_automorphism,
    right_divide,
    simplicity_probe,
    skew_right_gcd,
    skew_right_xgcd,
    torsion_free_check,
    unit_poly_check,
)
from qtorus.conf import SearchBounds
from qtorus.exceptions import (
    NonUnitLeadingCoefficient,
    PreconditionFailed,
    QTorusError,
    UnsupportedScalarGroup,
)
from qtorus.modules import CyclicModulePresentation
from qtorus.skew import from_skew, to_skew

from .utils import plane, prime_algebra, symbolic_algebra


class SkewTestsMixin:
    def setUp(self):
        self.ring = LaurentRing(1)
        (self.x,) = self.ring.gens
        self.sigma = MonomialAutomorphism(self.ring, [2])
        self.u = SkewLaurentPoly.u(self.sigma)

    def poly(self, coeffs):
        return SkewLaurentPoly(self.sigma, coeffs)


class LaurentRingTests(unittest.TestCase):
    def setUp(self):
        self.ring = LaurentRing(2)
        self.x1, self.x2 = self.ring.gens

    def test_terms(self):
        a = self.x1**2 / self.x2 - 3
        self.assertEqual(self.ring.terms(a), {(2, -1): 1, (0, 0): -3})

    def test_laurent_and_units(self):
        self.assertTrue(self.ring.is_laurent(self.x1 / self.x2**3))
        self.assertFalse(self.ring.is_laurent(1 / (self.x1 + 1)))
        self.assertTrue(self.ring.is_unit(2 * self.x1 / self.x2))
        self.assertFalse(self.ring.is_unit(self.x1 + 1))
        self.assertFalse(self.ring.is_unit(self.ring.zero))

    def test_terms_rejects_fractions(self):
        with self.assertRaises(QTorusError):
            self.ring.terms(1 / (self.x1 + 1))

    def test_monomial(self):
        self.assertEqual(
            self.ring.monomial((1, -2), QQ(1, 2)), self.x1 / (2 * self.x2**2)
        )

    def test_parse_and_format(self):
        a = self.ring.parse("x1^2 - x2^-1")
        self.assertEqual(a, self.x1**2 - 1 / self.x2)
        self.assertEqual(self.ring.parse(self.ring.format(a)), a)
        with self.assertRaises(QTorusError):
            self.ring.parse("y + 1")


class AutomorphismTests(SkewTestsMixin, unittest.TestCase):
    def test_apply(self):
        self.assertEqual(self.sigma.apply(self.x), 2 * self.x)
        self.assertEqual(self.sigma.apply(self.x**2 + 1), 4 * self.x**2 + 1)
        self.assertEqual(self.sigma.apply(self.x, -1), self.x / 2)
        self.assertEqual(self.sigma.apply(1 / self.x, 3), 1 / (8 * self.x))

    def test_power(self):
        self.assertEqual(self.sigma.power(0), MonomialAutomorphism.identity(self.ring))
        self.assertEqual(self.sigma.power(-2).scalings, (QQ(1, 4),))


class SkewArithmeticTests(SkewTestsMixin, unittest.TestCase):
    def test_commutation_rule(self):
        x = SkewLaurentPoly.constant(self.sigma, self.x)
        self.assertEqual(self.u * x, self.poly({1: 2 * self.x}))
        self.assertEqual(x * self.u, self.poly({1: self.x}))

    def test_product(self):
        u, x = self.u, self.x
        self.assertEqual((u - x) * (u + x), self.poly({2: 1, 1: x, 0: -(x**2)}))
        self.assertEqual(
            (u - 2 * x) * (u - x), self.poly({2: 1, 1: -4 * x, 0: 2 * x**2})
        )

    def test_inverse_powers(self):
        self.assertEqual(self.u * SkewLaurentPoly.u(self.sigma, -1), self.poly({0: 1}))
        x = SkewLaurentPoly.constant(self.sigma, self.x)
        self.assertEqual(
            SkewLaurentPoly.u(self.sigma, -1) * x, self.poly({-1: self.x / 2})
        )

    def test_degree(self):
        f = self.poly({-1: self.x, 2: 1})
        self.assertEqual((f.low, f.high, f.degree), (-1, 2, 3))
        self.assertEqual(self.poly({}).degree, -1)

    def test_str(self):
        f = self.poly({2: 1, 1: -self.x, 0: self.x**3})
        self.assertEqual(str(f), "u^2 + (-x1)*u + x1**3")
        self.assertEqual(str(self.poly({})), "0")

    def test_unit_poly_check(self):
        u, x = self.u, self.x
        self.assertTrue(unit_poly_check(u - x))
        self.assertFalse(unit_poly_check(u - (x + 1)))
        self.assertTrue(unit_poly_check(SkewLaurentPoly.u(self.sigma, 3)))
        with self.assertRaises(QTorusError):
            unit_poly_check(self.poly({}))


class DivisionTests(SkewTestsMixin, unittest.TestCase):
    def test_divide(self):
        q, r = right_divide(self.u * self.u, self.u - self.x)
        self.assertEqual(q, self.u + 2 * self.x)
        self.assertEqual(r, self.poly({0: 2 * self.x**2}))

    def test_divide_by_itself(self):
        g = self.u - self.x
        self.assertEqual(right_divide(g, g), (self.poly({0: 1}), self.poly({})))

    def test_smaller_degree(self):
        f = self.poly({0: self.x})
        self.assertEqual(right_divide(f, self.u - self.x), (self.poly({}), f))

    def test_non_unit_leading_coefficient(self):
        with self.assertRaises(NonUnitLeadingCoefficient):
            right_divide(self.u, self.poly({1: self.x + 1, 0: -1}))

    def test_division_identity(self):
        rng = random.Random(0)
        x = self.x

        def draw(low, high):
            coeffs = {}
            for i in range(low, high + 1):
                scale = rng.choice([1, -1, 2])
                coeffs[i] = scale * x ** rng.randint(-2, 2) + rng.randint(-1, 1)
            return self.poly(coeffs)

        for _ in range(5):
            f = draw(-1, 3)
            g = draw(0, 1) + self.poly({2: x ** rng.randint(-1, 1)})
            q, r = right_divide(f, g)
            self.assertEqual(q * g + r, f)
            self.assertLess(r.degree, g.degree)

    def test_gcd_of_multiples(self):
        u, x = self.u, self.x
        g = u - x
        f1 = (u + 1) * g
        f2 = (u + x) * g
        self.assertEqual(skew_right_gcd(f1, f2), g)

    def test_gcd_with_zero(self):
        f = 2 * self.u - 2 * self.x
        self.assertEqual(skew_right_gcd(f, self.poly({})), self.u - self.x)

    def test_xgcd_identity(self):
        u, x = self.u, self.x
        f = u * u - x
        g = u + 1
        d, a, b = skew_right_xgcd(f, g)
        self.assertEqual(a * f + b * g, d)
        self.assertEqual(d, self.poly({0: 1}))

    def test_degree_one_right_factor(self):
        u, x = self.u, self.x
        r = (u - 2 * x) * (u - x)
        factor = degree_one_right_factor(r)
        self.assertEqual(factor.degree, 1)
        self.assertTrue(right_divide(r, factor)[1].is_zero())

    def test_no_degree_one_right_factor(self):
        # u^2 - x = q·(u - c) + σ(c)c - x, and σ(c)c = x has no monomial root.
        self.assertIsNone(degree_one_right_factor(self.u * self.u - self.x))

    def test_degree_one_input(self):
        with self.assertRaises(PreconditionFailed):
            degree_one_right_factor(self.u - self.x)


class ConversionTests(unittest.TestCase):
    def setUp(self):
        self.A = plane()

    def test_presentation_automorphism(self):
        sigma = presentation_automorphism(self.A.presentation, self.A.embedding)
        self.assertEqual(sigma.scalings, (2,))

    def test_round_trip(self):
        x = self.A.parse("u1 + 3*u1^-1*u2^2 - u2^-1")
        f = to_skew(x)
        self.assertEqual(f.low, -1)
        self.assertEqual(f.high, 2)
        self.assertEqual(from_skew(f, self.A), x)

    def test_symbolic_embedding(self):
        A = symbolic_algebra(2, {(1, 0): 1})
        with self.assertRaises(UnsupportedScalarGroup):
            presentation_automorphism(A.presentation, A.embedding)

    def test_non_commutative_base(self):
        A = prime_algebra(3, {(1, 0): 1, (2, 0): 1})
        with self.assertRaises(PreconditionFailed):
            presentation_automorphism(A.presentation, A.embedding)


class SimpleModuleTests(unittest.TestCase):
    def setUp(self):
        self.A = plane()

    def test_degree_one(self):
        module = construct_simple_module(self.A.parse("u2 - u1"), self.A)
        ring = module.ring
        (x,) = ring.gens
        self.assertEqual(module.rank, 1)
        self.assertEqual(module.matrix, ((x,),))
        self.assertEqual(module.act_u(module.basis_vector(0)), (x,))
        self.assertTrue(torsion_free_check(module))
        report = simplicity_probe(module, [x - 1, x + 1], 2)
        self.assertTrue(report.passed)
        self.assertEqual(report.status, "simple (degree one)")

    def test_degree_two(self):
        gamma = self.A.parse("u2^2 + u2 + u1*u2 + u1^3")
        module = construct_simple_module(gamma, self.A)
        self.assertEqual(module.rank, 2)
        self.assertTrue(torsion_free_check(module))
        e0 = module.basis_vector(0)
        self.assertEqual(module.act_u(e0), module.basis_vector(1))
        self.assertFalse(any(module.act(e0, module.gamma)))

    def test_u_inverse(self):
        gamma = self.A.parse("u2^2 + u2 + u1*u2 + u1^3")
        module = construct_simple_module(gamma, self.A)
        (x,) = module.ring.gens
        v = (x + 1, x**-2)
        self.assertEqual(module.act_u_inverse(module.act_u(v)), v)
        self.assertEqual(module.act_u(module.act_u_inverse(v)), v)

    def test_non_unit_extremes(self):
        with self.assertRaises(PreconditionFailed) as context:
            construct_simple_module(self.A.parse("u2 - u1 - 1"), self.A)
        self.assertEqual(context.exception.reason, "non-unit extremes")

    def test_non_simple_algebra(self):
        A = prime_algebra(2)
        with self.assertRaises(PreconditionFailed) as context:
            construct_simple_module(A.parse("u2 - u1"), A)
        self.assertEqual(context.exception.reason, "non-simple algebra")

    def test_reducible_module_fails_the_probe(self):
        ring = LaurentRing(1)
        (x,) = ring.gens
        sigma = MonomialAutomorphism.identity(ring)
        u = SkewLaurentPoly.u(sigma)
        module = CompanionModule.from_gamma((u - x) * (u - 1))
        self.assertTrue(torsion_free_check(module))
        report = simplicity_probe(module, [x - 1], 2)
        self.assertFalse(report.passed)
        self.assertEqual(report.status, "irreducibility assumed")

    def test_non_invertible_matrix(self):
        ring = LaurentRing(1)
        (x,) = ring.gens
        module = CompanionModule(MonomialAutomorphism.identity(ring), [[x + 1]])
        self.assertFalse(torsion_free_check(module))

    def test_dump(self):
        module = construct_simple_module(self.A.parse("u2 - u1"), self.A)
        self.assertEqual(module.dump(), "rank 1\nU = [[x1]]")


class ExampleGeneratorTests(unittest.TestCase):
    def test_degree_one(self):
        P, gamma = example_generator(1, [2], 1, seed=0)
        self.assertEqual(P.rank, 2)
        f = to_skew(gamma)
        self.assertEqual((f.low, f.high), (0, 1))
        self.assertTrue(unit_poly_check(f))

    def test_two_variables(self):
        P, gamma = example_generator(2, [2, 3], 2, seed=1)
        self.assertEqual(P.rank, 3)
        module = construct_simple_module(gamma, gamma.algebra)
        self.assertEqual(module.rank, 2)
        self.assertTrue(torsion_free_check(module))
        M = CyclicModulePresentation(gamma.algebra, [gamma])
        self.assertEqual(gk_dimension(M, SearchBounds(degree_bound=1)).value, 2)

    def test_reproducible(self):
        self.assertEqual(
            str(example_generator(1, [2], 3, seed=5)[1]),
            str(example_generator(1, [2], 3, seed=5)[1]),
        )

    def test_preconditions(self):
        for args in [(0, [], 1), (1, [2], 0), (2, [2], 1), (2, [2, 2], 1)]:
            with self.subTest(args=args):
                with self.assertRaises(PreconditionFailed):
                    example_generator(*args)
