import unittest

from qtorus import (
    CyclicModulePresentation,
    FGModulePresentation,
    GKResult,
    SearchBounds,
    Sublattice,
    delta_principal,
    dim_exactness_check,
    direct_sum,
    filtration_verify,
    gk_dimension,
    in_right_ideal,
    tensor_module,
    torsion_witness,
)
from qtorus.exceptions import NotExact, PresentationError, QTorusError
from qtorus.modules import box, split_blocks

from .utils import module, plane, prime_algebra

BOUNDS = SearchBounds(degree_bound=2, max_sublattices=4)


class ModuleTestsMixin:
    def setUp(self):
        self.A = plane()
        self.tropical = module(self.A, "1 + u1 + u2")
        self.shift = module(self.A, "u1 - 1")
        self.free = CyclicModulePresentation(self.A)


class PresentationTests(ModuleTestsMixin, unittest.TestCase):
    def test_box(self):
        self.assertEqual(list(box(1, 1)), [(-1,), (0,), (1,)])
        self.assertEqual(len(list(box(2, 2))), 25)

    def test_rejects_zero_relations(self):
        with self.assertRaises(PresentationError):
            CyclicModulePresentation(self.A, [self.A.zero()])

    def test_translate(self):
        translated = self.shift.translate((0, 1))
        (relation,) = translated.relations
        self.assertEqual(relation, self.shift.relations[0] * self.A.generator(1))

    def test_direct_sum(self):
        M = direct_sum(self.shift, self.tropical)
        self.assertEqual(M.generators, 2)
        self.assertTrue(M.is_diagonal())
        self.assertEqual(M.summands(), [self.shift, self.tropical])

    def test_non_diagonal(self):
        u1, u2 = self.A.generator(0), self.A.generator(1)
        M = FGModulePresentation(self.A, 2, [(u1, u2)])
        self.assertFalse(M.is_diagonal())
        with self.assertRaises(PresentationError):
            M.summands()

    def test_tensor_module(self):
        M = tensor_module(self.tropical, self.shift)
        self.assertEqual(M.algebra.rank, 4)
        self.assertEqual(
            [str(r) for r in M.relations], ["1 + u2 + u1", "-1 + u3"]
        )

    def test_tensor_module_needs_cyclic(self):
        with self.assertRaises(PresentationError):
            tensor_module(direct_sum(self.shift, self.shift), self.shift)

    def test_split_blocks(self):
        M = tensor_module(self.tropical, self.tropical)
        self.assertEqual(split_blocks(M), [[0, 1], [2, 3]])
        self.assertEqual(split_blocks(self.tropical), [[0, 1]])


class IdealTests(ModuleTestsMixin, unittest.TestCase):
    def test_in_right_ideal(self):
        (alpha,) = self.shift.relations
        self.assertTrue(in_right_ideal(self.shift, alpha * self.A.generator(1), 1))
        self.assertTrue(in_right_ideal(self.shift, self.A.zero(), 0))
        self.assertFalse(in_right_ideal(self.shift, self.A.one(), 2))
        self.assertFalse(in_right_ideal(self.free, self.A.one(), 2))

    def test_torsion_witness(self):
        B = Sublattice.span([(1, 0)], 2)
        witness = torsion_witness(self.shift, B, 1)
        self.assertIsNotNone(witness)
        for m in witness.terms:
            self.assertIn(m, B)
        self.assertTrue(in_right_ideal(self.shift, witness, 1))

    def test_no_torsion_witness(self):
        # The Newton polygon of 1 + u1 + u2 is a triangle, which is never a
        # Minkowski summand of a segment.
        B = Sublattice.span([(1, 0)], 2)
        self.assertIsNone(torsion_witness(self.tropical, B, 2))
        self.assertIsNone(torsion_witness(self.tropical, Sublattice.zero(2), 2))
        self.assertIsNone(torsion_witness(self.free, B, 2))


class GKDimensionTests(ModuleTestsMixin, unittest.TestCase):
    def test_free(self):
        result = gk_dimension(self.free, BOUNDS)
        self.assertEqual(result.value, 2)
        self.assertEqual(result.tag, "free")

    def test_principal(self):
        for M in [self.shift, self.tropical]:
            result = gk_dimension(M, BOUNDS)
            self.assertEqual(result.value, 1)
            self.assertEqual(result.tag, "principal")
        self.assertEqual(str(gk_dimension(self.shift, BOUNDS)), "exact 1 (principal)")

    def test_unit_relation(self):
        result = gk_dimension(module(self.A, "3*u1"), BOUNDS)
        self.assertEqual(result.value, 0)
        self.assertEqual(result.tag, "zero-module")

    def test_noncommuting_shifts_kill_the_module(self):
        # (u1 - 1) and (u2 - 1) force (q - 1)·1 into the ideal.
        result = gk_dimension(module(self.A, "u1 - 1", "u2 - 1"), BOUNDS)
        self.assertEqual(result.value, 0)
        self.assertEqual(result.tag, "zero-module")

    def test_commuting_shifts_split(self):
        A = prime_algebra(2)
        result = gk_dimension(module(A, "u1 - 1", "u2 - 1"), BOUNDS)
        self.assertEqual(result.value, 0)
        self.assertEqual(result.tag, "tensor")

    def test_tensor_product(self):
        M = tensor_module(self.tropical, self.tropical)
        result = gk_dimension(M, SearchBounds(degree_bound=1))
        self.assertEqual(result.value, 2)
        self.assertEqual(result.tag, "tensor")

    def test_translation_invariance(self):
        translated = self.tropical.translate((2, -1))
        self.assertEqual(
            gk_dimension(translated, BOUNDS), gk_dimension(self.tropical, BOUNDS)
        )

    def test_bracket(self):
        A = prime_algebra(2)
        result = gk_dimension(module(A, "u1 + u2 - 1", "u1 - u2"), BOUNDS)
        self.assertFalse(result.exact)
        self.assertEqual(result.tag, "bracket")
        self.assertEqual(result.upper, 1)
        self.assertLessEqual(result.lower, result.upper)
        self.assertTrue(str(result).startswith("bracket ["))
        with self.assertRaises(NotExact):
            result.value

    def test_direct_sum(self):
        M = direct_sum(self.shift, module(self.A, "3"))
        result = gk_dimension(M, BOUNDS)
        self.assertEqual(result.value, 1)
        self.assertEqual(result.tag, "direct-sum")

    def test_single_generator(self):
        M = FGModulePresentation.from_cyclic(self.shift)
        self.assertEqual(gk_dimension(M, BOUNDS).value, 1)

    def test_non_diagonal(self):
        u1, u2 = self.A.generator(0), self.A.generator(1)
        M = FGModulePresentation(self.A, 2, [(u1, u2)])
        result = gk_dimension(M, BOUNDS)
        self.assertEqual((result.lower, result.upper, result.exact), (0, 2, False))

    def test_dim_exactness(self):
        self.assertTrue(dim_exactness_check(self.shift, self.tropical, BOUNDS))
        self.assertTrue(dim_exactness_check(self.shift, module(self.A, "3"), BOUNDS))
        self.assertTrue(dim_exactness_check(self.free, self.shift, BOUNDS))

    def test_dim_exactness_needs_exact_inputs(self):
        A = prime_algebra(2)
        bracket = module(A, "u1 + u2 - 1", "u1 - u2")
        with self.assertRaises(NotExact):
            dim_exactness_check(bracket, module(A, "u1 - 1"), BOUNDS)

    def test_result_validation(self):
        with self.assertRaises(ValueError):
            GKResult(2, 1, False, "bracket")
        with self.assertRaises(ValueError):
            GKResult(0, 1, True, "principal")


class FiltrationTests(ModuleTestsMixin, unittest.TestCase):
    def test_free_module(self):
        A = prime_algebra(1)
        self.assertTrue(filtration_verify(CyclicModulePresentation(A), (1,)))
        self.assertTrue(filtration_verify(self.free, (1, 2)))

    def test_shift_is_not_proper(self):
        self.assertFalse(filtration_verify(self.shift, (1, 0)))

    def test_trivial_character(self):
        self.assertTrue(filtration_verify(self.shift, (0, 0)))

    def test_weights(self):
        self.assertTrue(filtration_verify(self.free, (1, 0), weights=["1/2"]))
        with self.assertRaises(QTorusError):
            filtration_verify(self.free, (1, 0), weights=[0, 0])

    def test_irrational_character(self):
        with self.assertRaises(QTorusError):
            filtration_verify(self.shift, (1.5, 0))

    def test_tropical_line_sectors(self):
        for phi in [(1, 0), (0, 1), (-1, -1), (-2, -2)]:
            with self.subTest(phi=phi):
                self.assertTrue(filtration_verify(self.tropical, phi))
        for phi in [(1, 2), (-1, 0), (0, -1), (-2, -1), (2, -1)]:
            with self.subTest(phi=phi):
                self.assertFalse(filtration_verify(self.tropical, phi))

    def test_agrees_with_delta(self):
        outer = delta_principal(self.tropical).outer
        for phi in box(2, 2):
            with self.subTest(phi=phi):
                self.assertEqual(filtration_verify(self.tropical, phi), phi in outer)

    def test_smallest_window(self):
        self.assertFalse(filtration_verify(self.tropical, (-2, -1), window=1))
        self.assertTrue(filtration_verify(self.tropical, (-1, -1), window=1))

    def test_direct_sum(self):
        M = direct_sum(self.tropical, self.shift)
        self.assertTrue(filtration_verify(M, (1, 0)))
        self.assertTrue(filtration_verify(M, (0, -1)))
        self.assertFalse(filtration_verify(M, (1, 2)))

    def test_shifted_weights(self):
        M = direct_sum(self.shift, self.shift)
        self.assertFalse(filtration_verify(M, (1, 0), weights=[0, "1/3"]))
        self.assertTrue(filtration_verify(M, (0, 1), weights=[0, "1/3"]))
