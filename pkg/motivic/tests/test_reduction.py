import random
from fractions import Fraction
from functools import cmp_to_key

from django.test import SimpleTestCase

from motivic.characters import enumerate_characters
from motivic.cyclotomic import CyclotomicNumber, compare_real
from motivic.evaluation import complete_point, eval_expfun, grid_points
from motivic.exceptions import DepthExceededError, SmallCharacteristicError
from motivic.lang import linear_combination, parse_spec
from motivic.localfield import from_rational, make_field, one, parse_element, uniformizer
from motivic.reduction import (
    gram_tilde, is_psd, peak_cross_check, polar_coordinates, polar_decompose, polar_group, tilde_H, witness_psi1,
)

from .utils import fixture

EQ5 = make_field('eq', 5, 1, 8)
MIXED5 = make_field('mixed', 5, 1, 8)


def zeta(k):
    return CyclotomicNumber.root_of_unity(5, k)


def at_t(spec, field=EQ5):
    return complete_point(spec, field, {'x': uniformizer(field)})


class PolarDecompositionTests(SimpleTestCase):

    def test_single_class(self):
        spec = fixture('single_polar')
        d = polar_decompose(spec, EQ5, at_t(spec))
        self.assertEqual(d.count, 1)
        self.assertEqual(d.depth, 1)
        entry = d.entries[0]
        self.assertEqual(entry.g, one(EQ5) / uniformizer(EQ5))
        self.assertEqual(entry.h, (8,))
        self.assertEqual(entry.size, 1)

    def test_merged_class_uses_mean(self):
        spec = fixture('merged')
        x = at_t(spec)
        d = polar_decompose(spec, EQ5, x)
        self.assertEqual(d.count, 1)
        self.assertEqual(d.entries[0].size, 2)
        self.assertEqual(d.entries[0].g, parse_element(EQ5, '1*t^-1 + 3*t^0'))
        self.assertEqual(d.entries[0].h, (zeta(2) + zeta(3),))

    def test_reconstruction(self):
        for name in ('single_polar', 'merged', 'multi_polar', 'two_entry', 'cases_polar'):
            spec = fixture(name)
            for field in (EQ5, MIXED5):
                for x in grid_points(spec, field):
                    d = polar_decompose(spec, field, x)
                    for psi in enumerate_characters(field, d.depth):
                        with self.subTest(spec=name, field=str(field), x=str(x), psi=psi.index):
                            self.assertEqual(d.reconstruct(psi), eval_expfun(spec, field, psi, x))

    def test_inexact_polar_value(self):
        spec = fixture('single_polar')
        x = complete_point(spec, MIXED5, {'x': from_rational(MIXED5, 10)})
        d = polar_decompose(spec, MIXED5, x)
        self.assertEqual(d.count, 1)
        self.assertFalse(d.entries[0].g.is_exact)
        self.assertEqual(d.entries[0].h, (8,))
        for psi in enumerate_characters(MIXED5, 1):
            self.assertEqual(d.reconstruct(psi), eval_expfun(spec, MIXED5, psi, x))

    def test_value_known_at_two_precisions(self):
        spec = parse_spec("vars { x : VF  w : VF }\nset X : ord(x) = 1 and x * w = 1\n"
                          "summand { g : w }\nsummand { g : w + (x * w - 1) * w * w }\n"
                          "domain { x : VF [1, 1]  w := 1 / x }")
        x = complete_point(spec, MIXED5, {'x': from_rational(MIXED5, 10)})
        d = polar_decompose(spec, MIXED5, x)
        self.assertEqual(d.count, 1)
        self.assertEqual(d.entries[0].size, 1)
        self.assertEqual(d.entries[0].h, (2,))
        for psi in enumerate_characters(MIXED5, 1):
            self.assertEqual(d.reconstruct(psi), eval_expfun(spec, MIXED5, psi, x))

    def test_classes_are_distinct(self):
        spec = fixture('multi_polar')
        d = polar_decompose(spec, EQ5, at_t(spec))
        self.assertEqual(d.count, 3)
        self.assertEqual(d.depth, 2)
        keys = {polar_coordinates(entry.g, EQ5, d.depth) for entry in d.entries}
        self.assertEqual(keys, {(0, 0), (0, 1), (1, 0)})

    def test_depth_too_small(self):
        spec = fixture('single_polar')
        with self.assertRaises(DepthExceededError) as cm:
            polar_decompose(spec, EQ5, at_t(spec), depth=0)
        self.assertEqual(cm.exception.required_depth, 1)

    def test_small_characteristic(self):
        spec = parse_spec("vars { x : VF  w : VF }\nset X : ord(x) = 1 and x * w = 1\n"
                          "summand { g : w }\nsummand { g : w + 1 }\nsummand { g : w + 2 }\n"
                          "domain { x : VF [1, 1]  w := 1 / x }")
        field = make_field('eq', 3, 1, 6)
        with self.assertRaises(SmallCharacteristicError):
            polar_decompose(spec, field, at_t(spec, field))
        self.assertEqual(polar_decompose(spec, EQ5, at_t(spec)).count, 1)


class SandwichTests(SimpleTestCase):

    def test_ce_function(self):
        spec = fixture('orthogonality')
        tilde = tilde_H(spec, EQ5, grid_points(spec, EQ5))
        self.assertEqual(tilde.n_prime, 1)
        self.assertEqual(tilde.n, 1)
        self.assertTrue(all(v == 1 for v in tilde.values))

    def test_two_entries(self):
        spec = fixture('two_entry')
        witness = witness_psi1(spec, EQ5, at_t(spec))
        self.assertEqual(witness.psi.index, 0)
        self.assertEqual(witness.abs2, 4)
        self.assertEqual(witness.tilde, 4)
        self.assertEqual(witness.n, 4)
        self.assertTrue(witness.holds)

    def test_three_classes(self):
        spec = fixture('multi_polar')
        for field in (EQ5, MIXED5):
            points = grid_points(spec, field)
            tilde = tilde_H(spec, field, points)
            self.assertEqual(tilde.n, 9)
            psis = enumerate_characters(field, 2)
            for x, value in zip(points, tilde.values):
                self.assertEqual(value, 9)
                for psi in psis:
                    self.assertLessEqual(compare_real(eval_expfun(spec, field, psi, x).abs2(), value), 0)
                witness = witness_psi1(spec, field, x, tilde=value, n=tilde.n)
                self.assertTrue(witness.holds)

    def test_peak_cross_check(self):
        for name in ('two_entry', 'multi_polar', 'merged'):
            spec = fixture(name)
            for field in (EQ5, MIXED5):
                x = at_t(spec, field)
                d = polar_decompose(spec, field, x)
                witness = witness_psi1(spec, field, x)
                with self.subTest(spec=name, field=str(field)):
                    self.assertEqual(peak_cross_check(d, field), witness.abs2)


class GramTests(SimpleTestCase):

    def test_quadratic_form_matches_combination(self):
        specs = [fixture('single_polar'), fixture('two_entry')]
        points = grid_points(specs[0], EQ5)
        gram = gram_tilde(specs, EQ5, points)
        self.assertEqual(gram.n_prime, 2)
        combined = tilde_H(linear_combination(specs, [1, 1]), EQ5, points)
        for index in range(len(points)):
            self.assertEqual(gram.quadratic_form(index, [1, 1]), combined.values[index])
            self.assertTrue(is_psd(gram.matrices[index]))
        self.assertEqual(gram.quadratic_form(0, [1, 1]), 164)

    def test_sandwich_for_combinations(self):
        specs = [fixture('single_polar'), fixture('two_entry')]
        points = grid_points(specs[0], MIXED5)
        gram = gram_tilde(specs, MIXED5, points)
        c = [Fraction(1, 2), Fraction(-3)]
        combo = linear_combination(specs, c)
        for index, x in enumerate(points):
            bound = gram.quadratic_form(index, c)
            for psi in enumerate_characters(MIXED5, 1):
                self.assertLessEqual(compare_real(eval_expfun(combo, MIXED5, psi, x).abs2(), bound), 0)

    def test_is_psd(self):
        self.assertTrue(is_psd([[2, 1], [1, 2]]))
        self.assertFalse(is_psd([[1, 2], [2, 1]]))
        self.assertFalse(is_psd([[0, 0], [0, -1]]))


class PolarGroupTests(SimpleTestCase):

    def test_shapes(self):
        self.assertEqual(polar_group(EQ5, 2).factors, (5, 5))
        self.assertEqual(polar_group(MIXED5, 2).factors, (25,))
        self.assertEqual(polar_group(make_field('eq', 3, 2, 4), 1).factors, (3, 3))
        self.assertEqual(polar_group(EQ5, 0).order, 1)

    def test_coordinates(self):
        self.assertEqual(polar_coordinates(from_rational(MIXED5, Fraction(11, 25)), MIXED5, 2), (11,))
        self.assertEqual(polar_coordinates(parse_element(EQ5, '1*t^-2 + 3*t^-1 + 4*t^0'), EQ5, 2), (1, 3))
        with self.assertRaises(DepthExceededError):
            polar_coordinates(parse_element(EQ5, '1*t^-3'), EQ5, 2)


class ReductionSweepTests(SimpleTestCase):
    PRIMES = (5, 7, 11, 13)
    FIXTURES = ('orthogonality', 'gauss', 'single_polar', 'merged', 'multi_polar', 'two_entry', 'cases_polar',
                'gauss_polar', 'weighted_polar', 'two_classes')
    POINTS = 2

    def test_sandwich_across_primes(self):
        rng = random.Random(13)
        specs = {name: fixture(name) for name in self.FIXTURES}
        for p in self.PRIMES:
            for kind in ('eq', 'mixed'):
                field = make_field(kind, p, 1, 6)
                for name, spec in specs.items():
                    points = grid_points(spec, field)
                    sample = rng.sample(points, min(self.POINTS, len(points)))
                    tilde = tilde_H(spec, field, sample)
                    for x, value in zip(sample, tilde.values):
                        witness = witness_psi1(spec, field, x, tilde=value, n=tilde.n)
                        with self.subTest(spec=name, field=str(field), x=str(x)):
                            self.assertTrue(witness.holds)
                            self.assertLessEqual(compare_real(witness.abs2, value), 0)
                            if spec.is_ce:
                                self.assertEqual(tilde.n, 1)
                                self.assertEqual(witness.abs2, value)

    def test_gram_for_seeded_coefficients(self):
        rng = random.Random(20)
        groups = [('single_polar', 'two_entry'), ('single_polar', 'two_classes', 'merged')]
        for names in groups:
            specs = [fixture(name) for name in names]
            for field in (EQ5, MIXED5):
                points = rng.sample(grid_points(specs[0], field), 2)
                gram = gram_tilde(specs, field, points)
                psis = enumerate_characters(field, max(d.depth for d in gram.decompositions))
                for index, x in enumerate(points):
                    self.assertTrue(is_psd(gram.matrices[index]))
                    for _ in range(20):
                        c = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in specs]
                        bound = gram.quadratic_form(index, c)
                        combo = linear_combination(specs, c)
                        squares = [eval_expfun(combo, field, psi, x).abs2() for psi in psis]
                        with self.subTest(specs=names, field=str(field), c=c):
                            for square in squares:
                                self.assertLessEqual(compare_real(square, bound), 0)
                            largest = max(squares, key=cmp_to_key(compare_real))
                            self.assertLessEqual(compare_real(bound, largest * gram.n), 0)
