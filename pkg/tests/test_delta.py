import itertools
import random
import unittest

from sympy import Matrix

from qtorus import (
    CyclicModulePresentation,
    DeltaApprox,
    RationalCone,
    RationalFan,
    SearchBounds,
    Sublattice,
    carrier_spaces,
    delta_module,
    delta_principal,
    delta_tensor,
    direct_sum,
    exclude_certificate,
    fan_dimension,
    strongly_holonomic_check,
    tensor_module,
)
from qtorus.exceptions import PreconditionFailed, PresentationError
from qtorus.modules import box

from .utils import module, plane, prime_algebra

BOUNDS = SearchBounds(degree_bound=2, max_sublattices=4)


def rays(*vectors):
    n = len(vectors[0])
    return RationalFan.from_cones(
        n, [RationalCone.from_generators(n, [v]) for v in vectors]
    )


def line(n, direction):
    return RationalFan.from_cones(
        n, [RationalCone.from_generators(n, [], [direction])]
    )


def minimizers(alpha, phi):
    levels = {m: sum(p * e for p, e in zip(phi, m)) for m in alpha.terms}
    lowest = min(levels.values())
    return frozenset(m for m, level in levels.items() if level == lowest)


def tropical_dimension(alpha, radius):
    """
    Return the dimension of the tropical hypersurface of alpha, from the
    characters in a box grouped by the terms they minimize.

    """
    cells = {}
    for phi in box(alpha.algebra.rank, radius):
        terms = minimizers(alpha, phi)
        if len(terms) > 1:
            cells.setdefault(terms, []).append(phi)
    return max(Matrix(points).rank() for points in cells.values())


def principal_relations():
    A, B = plane(), prime_algebra(3, {(1, 0): 1, (2, 1): 1})
    return [
        module(prime_algebra(1), "1 + u1"),
        module(A, "1 + u1 + u2"),
        module(A, "u1 + u2"),
        module(A, "1 + u1 + u2 + u1*u2"),
        module(A, "u1^2 + 3*u2 - u1*u2^-1"),
        module(B, "1 + u1 + u2 + u3"),
        module(B, "u1 + u2"),
        module(B, "u1*u2 - u3^2 + 1"),
    ]


class DeltaPrincipalTests(unittest.TestCase):
    def setUp(self):
        self.A = plane()

    def test_dimension_matches_tropical_oracle(self):
        for M in principal_relations():
            (alpha,) = M.relations
            with self.subTest(relation=str(alpha)):
                dimension = fan_dimension(delta_principal(M).outer)
                self.assertEqual(dimension, tropical_dimension(alpha, 3))
                self.assertEqual(dimension, M.algebra.rank - 1)

    def test_shifted_relation(self):
        for M in principal_relations():
            (alpha,) = M.relations
            shift = (1,) * M.algebra.rank
            shifted = CyclicModulePresentation(M.algebra, [alpha.translate(shift)])
            self.assertEqual(delta_principal(shifted), delta_principal(M))

    def test_tropical_line(self):
        delta = delta_principal(module(self.A, "1 + u1 + u2"))
        self.assertTrue(delta.exact)
        self.assertEqual(delta.outer, rays((1, 0), (0, 1), (-1, -1)))
        self.assertEqual(fan_dimension(delta.outer), 1)

    def test_binomial(self):
        delta = delta_principal(module(self.A, "u1 + u2"))
        self.assertEqual(delta.outer, line(2, (1, 1)))
        self.assertIn((3, 3), delta.outer)
        self.assertNotIn((1, 2), delta.outer)

    def test_monomial(self):
        delta = delta_principal(module(self.A, "2*u1*u2"))
        self.assertTrue(delta.zero_module)
        self.assertEqual(delta.outer, RationalFan.zero(2))

    def test_coefficients_do_not_matter(self):
        self.assertEqual(
            delta_principal(module(self.A, "1 + u1 + u2")),
            delta_principal(module(self.A, "3 - 2*u1 + 5*u2")),
        )

    def test_translation_invariance(self):
        M = module(self.A, "1 + u1 + u2")
        self.assertEqual(delta_principal(M), delta_principal(M.translate((-1, 2))))

    def test_square(self):
        # The Newton polygon of a square has four edges.
        delta = delta_principal(module(self.A, "1 + u1 + u2 + u1*u2"))
        self.assertEqual(delta.outer, rays((1, 0), (0, 1), (-1, 0), (0, -1)))

    def test_needs_one_relation(self):
        with self.assertRaises(PresentationError):
            delta_principal(module(self.A, "u1 - 1", "u2 - 1"))


class DeltaApproxTests(unittest.TestCase):
    def test_membership(self):
        approximation = DeltaApprox(
            RationalFan.zero(2), line(2, (1, 0)), False
        )
        self.assertIs((0, 0) in approximation, True)
        self.assertIsNone(approximation.__contains__((1, 0)))
        self.assertIs((0, 1) in approximation, False)

    def test_inner_must_be_inside_outer(self):
        with self.assertRaises(ValueError):
            DeltaApprox(line(2, (1, 0)), line(2, (0, 1)), False)

    def test_exact_needs_equal_fans(self):
        with self.assertRaises(ValueError):
            DeltaApprox(RationalFan.zero(2), RationalFan.whole(2), True)


class DeltaModuleTests(unittest.TestCase):
    def setUp(self):
        self.A = plane()
        self.tropical = module(self.A, "1 + u1 + u2")

    def test_free(self):
        delta = delta_module(CyclicModulePresentation(self.A), BOUNDS)
        self.assertEqual(delta.outer, RationalFan.whole(2))
        self.assertTrue(delta.exact)

    def test_zero_module(self):
        delta = delta_module(module(self.A, "u1 - 1", "u2 - 1"), BOUNDS)
        self.assertTrue(delta.zero_module)
        self.assertEqual(delta.outer, RationalFan.zero(2))

    def test_principal(self):
        self.assertEqual(
            delta_module(self.tropical, BOUNDS), delta_principal(self.tropical)
        )

    def test_tensor_product(self):
        M = tensor_module(self.tropical, self.tropical)
        delta = delta_module(M, SearchBounds(degree_bound=1))
        expected = delta_tensor(
            delta_principal(self.tropical), delta_principal(self.tropical)
        )
        self.assertTrue(delta.exact)
        self.assertEqual(delta.outer, expected.outer)
        self.assertEqual(fan_dimension(delta.outer), 2)

    def test_direct_sum(self):
        binomial = module(self.A, "u1 + u2")
        delta = delta_module(direct_sum(self.tropical, binomial), BOUNDS)
        self.assertTrue(delta.exact)
        self.assertEqual(
            delta.outer,
            delta_principal(self.tropical).outer.union(delta_principal(binomial).outer),
        )

    def test_bracket(self):
        A = prime_algebra(2)
        M = module(A, "u1 + u2 - 1", "u1 - u2")
        delta = delta_module(M, BOUNDS)
        self.assertFalse(delta.exact)
        self.assertEqual(delta.inner, RationalFan.zero(2))
        self.assertEqual(
            delta.outer,
            rays((1, 0), (0, 1), (-1, -1)).intersection(line(2, (1, 1))),
        )


class DeltaTensorTests(unittest.TestCase):
    def test_membership_matches_certificates(self):
        A = plane()
        M1, M2 = module(A, "1 + u1 + u2"), module(A, "u1 + u2")
        D1, D2 = delta_principal(M1), delta_principal(M2)
        product = delta_tensor(D1, D2)
        T = tensor_module(M1, M2)
        first = [(0, 0), (1, 0), (0, 2), (-1, -1), (1, 2), (-1, 0), (2, -1)]
        second = [(0, 0), (1, 1), (-2, -2), (1, 0), (0, -1), (2, 1)]
        for phi1, phi2 in itertools.product(first, second):
            phi = phi1 + phi2
            expected = phi1 in D1.outer and phi2 in D2.outer
            with self.subTest(phi=phi):
                self.assertEqual(phi in product.outer, expected)
                self.assertEqual(exclude_certificate(T, phi, 0) is None, expected)

    def test_line_times_point(self):
        D1 = DeltaApprox.exactly(line(2, (1, 1)))
        D2 = DeltaApprox.exactly(RationalFan.zero(1))
        product = delta_tensor(D1, D2)
        self.assertEqual(product.outer, line(3, (1, 1, 0)))
        self.assertIn((2, 2, 0), product.outer)
        self.assertNotIn((1, 1, 1), product.outer)

    def test_two_tropical_lines(self):
        D = delta_principal(module(plane(), "1 + u1 + u2"))
        product = delta_tensor(D, D)
        self.assertEqual(len(product.outer.cones), 9)
        self.assertEqual(fan_dimension(product.outer), 2)

    def test_zero_factor(self):
        D = DeltaApprox.exactly(RationalFan.zero(2), zero_module=True)
        product = delta_tensor(D, DeltaApprox.exactly(line(2, (1, 1))))
        self.assertTrue(product.zero_module)


class ExcludeCertificateTests(unittest.TestCase):
    def setUp(self):
        self.A = plane()

    def test_soundness_on_sampled_rays(self):
        rng = random.Random(0)
        samples = 0
        for M in principal_relations():
            n = M.algebra.rank
            (alpha,) = M.relations
            outer = delta_principal(M).outer
            if n < 3:
                degree, characters = 4, list(box(n, 3))
            else:
                degree, characters = 1, rng.sample(list(box(n, 2)), 25)
            for phi in characters:
                inside = len(minimizers(alpha, phi)) > 1
                with self.subTest(relation=str(alpha), phi=phi):
                    self.assertEqual(phi in outer, inside)
                    witness = exclude_certificate(M, phi, degree)
                    self.assertEqual(witness is None, inside)
                samples += 1
        self.assertGreaterEqual(samples, 200)

    def test_binomial(self):
        M = module(self.A, "u1 + u2")
        self.assertEqual(exclude_certificate(M, (1, 2), 0), M.relations[0])
        self.assertIsNone(exclude_certificate(M, (1, 1), 2))

    def test_certificates_agree_with_the_fan(self):
        M = module(self.A, "1 + u1 + u2")
        delta = delta_principal(M)
        for phi in [(1, 2), (-1, 0), (2, -1)]:
            self.assertNotIn(phi, delta.outer)
            self.assertIsNotNone(exclude_certificate(M, phi, 0))
        for phi in [(0, 1), (1, 0), (-1, -1)]:
            self.assertIn(phi, delta.outer)
            self.assertIsNone(exclude_certificate(M, phi, 2))

    def test_certificate_has_unique_minimum(self):
        M = module(self.A, "u1 - 1", "u2 + u1")
        witness = exclude_certificate(M, ("1/2", 3), 1)
        values = sorted(m[0] / 2 + 3 * m[1] for m in witness.terms)
        self.assertTrue(len(values) == 1 or values[0] < values[1])

    def test_free(self):
        self.assertIsNone(
            exclude_certificate(CyclicModulePresentation(self.A), (1, 0), 2)
        )

    def test_wrong_length(self):
        with self.assertRaises(PresentationError):
            exclude_certificate(module(self.A, "u1 + u2"), (1, 0, 0), 1)


class CarrierSpaceTests(unittest.TestCase):
    def test_tropical_line(self):
        data = carrier_spaces(rays((1, 0), (0, 1), (-1, -1)), 1)
        self.assertEqual(len(data.spaces), 3)
        self.assertEqual(
            set(data.subgroups),
            {
                Sublattice.span([(0, 1)], 2),
                Sublattice.span([(1, 0)], 2),
                Sublattice.span([(1, -1)], 2),
            },
        )

    def test_dimension_mismatch(self):
        with self.assertRaises(PreconditionFailed):
            carrier_spaces(rays((1, 0)), 2)


class HolonomyTests(unittest.TestCase):
    def setUp(self):
        self.A = plane()

    def test_torsion_over_a_coordinate(self):
        verdict = strongly_holonomic_check(module(self.A, "u1 - 1"), BOUNDS)
        self.assertTrue(verdict.failed)
        sublattice, witness = verdict.witness
        self.assertEqual(sublattice, Sublattice.span([(1, 0)], 2))
        for m in witness.terms:
            self.assertIn(m, sublattice)

    def test_wrong_dimension(self):
        verdict = strongly_holonomic_check(module(self.A, "3"), BOUNDS)
        self.assertEqual(verdict.verdict, "certified-failure")
        self.assertEqual(verdict.gk.value, 0)
        self.assertIsNone(verdict.witness)

    def test_consistent(self):
        verdict = strongly_holonomic_check(module(self.A, "1 + u1 + u2"), BOUNDS)
        self.assertEqual(verdict.verdict, "consistent-up-to-bounds")
        self.assertFalse(verdict.failed)
        self.assertEqual(verdict.gk.value, 1)

    def test_non_simple_algebra(self):
        with self.assertRaises(PreconditionFailed):
            strongly_holonomic_check(module(prime_algebra(2), "u1 - 1"), BOUNDS)

    def test_odd_rank(self):
        A = prime_algebra(3, {(1, 0): 1, (2, 0): 1, (2, 1): 1})
        with self.assertRaises(PreconditionFailed):
            strongly_holonomic_check(module(A, "u1 - 1"), BOUNDS)
