from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic.characters import enumerate_characters, standard_psi
from motivic.cyclotomic import CyclotomicNumber
from motivic.evaluation import (
    CaseError, EvalDomain, basic_inequality, check_pushforward, complete_point, enum_set, eval_expfun, eval_motfun,
    grid_points, integrate_fiber, polar_depth,
)
from motivic.exceptions import DivergenceError, EvaluationError, FieldMismatchError
from motivic.lang import parse_spec
from motivic.localfield import from_rational, make_field, one, uniformizer

from .utils import fixture

EQ5 = make_field('eq', 5, 1, 8)
MIXED5 = make_field('mixed', 5, 1, 8)
PRIMES = [5, 7, 11, 13, 17, 19, 23]


class MotivicFunctionTests(SimpleTestCase):

    def test_motfun_value(self):
        spec = fixture('motfun')
        self.assertEqual(eval_motfun(spec, MIXED5, complete_point(spec, MIXED5, {'x': from_rational(MIXED5, 20)})), 10)
        self.assertEqual(eval_motfun(spec, MIXED5, complete_point(spec, MIXED5, {'x': from_rational(MIXED5, 10)})), 0)

    def test_integer_variables(self):
        spec = fixture('rfzz')
        self.assertEqual(eval_motfun(spec, EQ5, complete_point(spec, EQ5, {'z': 3})), 500)
        self.assertEqual(eval_motfun(spec, MIXED5, complete_point(spec, MIXED5, {'z': 0})), 1)

    def test_cube_roots(self):
        spec = fixture('cube_roots')
        for p, expected in ((5, 1), (7, 3), (13, 3), (11, 1)):
            field = make_field('mixed', p, 1, 4)
            self.assertEqual(eval_motfun(spec, field, complete_point(spec, field, {})), expected)

    def test_term_factors(self):
        spec = parse_spec("term { coef : 3/2  beta : 2  geom : 1 }")
        self.assertEqual(eval_motfun(spec, EQ5, {}), Fraction(3, 2) * 2 / (1 - 5))

    def test_values_are_rational(self):
        spec = fixture('qord')
        for x in grid_points(spec, EQ5):
            self.assertEqual(eval_expfun(spec, EQ5, None, x), 5 ** x['x'].valuation)


class ExponentialFunctionTests(SimpleTestCase):

    def test_orthogonality(self):
        spec = fixture('orthogonality')
        for field in (EQ5, MIXED5, make_field('eq', 3, 2, 4)):
            x = grid_points(spec, field)[0]
            self.assertEqual(eval_expfun(spec, field, None, x), -1)

    @given(st.sampled_from(PRIMES), st.sampled_from(['eq', 'mixed']))
    @settings(max_examples=14, deadline=None)
    def test_gauss_sum_modulus(self, p, kind):
        spec = fixture('gauss')
        field = make_field(kind, p, 1, 4)
        x = grid_points(spec, field)[0]
        self.assertEqual(eval_expfun(spec, field, None, x).abs2(), p)

    def test_ce_value_does_not_depend_on_character(self):
        spec = fixture('gauss')
        x = grid_points(spec, EQ5)[0]
        values = {eval_expfun(spec, EQ5, psi, x) for psi in enumerate_characters(EQ5, 2)}
        self.assertEqual(len(values), 1)

    def test_single_polar_value(self):
        spec = fixture('single_polar')
        x = complete_point(spec, EQ5, {'x': uniformizer(EQ5)})
        self.assertEqual(x['w'], one(EQ5) / uniformizer(EQ5))
        psis = enumerate_characters(EQ5, 1)
        self.assertEqual(eval_expfun(spec, EQ5, psis[2], x), CyclotomicNumber.root_of_unity(5, 2) * 8)

    def test_cases(self):
        spec = fixture('cases_polar')
        psi = enumerate_characters(EQ5, 1)[1]
        x1 = complete_point(spec, EQ5, {'x': uniformizer(EQ5)})
        x2 = complete_point(spec, EQ5, {'x': uniformizer(EQ5) * 2})
        self.assertEqual(eval_expfun(spec, EQ5, psi, x1), CyclotomicNumber.root_of_unity(5, 1))
        self.assertEqual(eval_expfun(spec, EQ5, psi, x2), 1)

    def test_missing_case(self):
        spec = parse_spec("vars { x : VF }\nterm { alpha : cases { when ord(x) = 0 => 1 } }")
        with self.assertRaises(CaseError):
            eval_motfun(spec, EQ5, {'x': uniformizer(EQ5)})

    def test_field_mismatch(self):
        spec = fixture('orthogonality')
        x = grid_points(spec, EQ5)[0]
        with self.assertRaises(FieldMismatchError):
            eval_expfun(spec, EQ5, standard_psi(MIXED5), x)

    def test_polar_depth(self):
        spec = fixture('multi_polar')
        self.assertEqual(polar_depth(spec, EQ5, grid_points(spec, EQ5)), 2)
        self.assertEqual(polar_depth(fixture('motfun'), EQ5, []), 0)


class PointTests(SimpleTestCase):

    def test_grid_sizes(self):
        self.assertEqual(len(grid_points(fixture('motfun'), EQ5)), 12)
        self.assertEqual(len(grid_points(fixture('factor'), EQ5)), 20)
        self.assertEqual(len(grid_points(fixture('rfzz'), EQ5)), 4)
        self.assertEqual(len(grid_points(fixture('cube_roots'), EQ5)), 1)

    def test_grid_override(self):
        domain = EvalDomain(vf={'x': EvalDomain.from_decls(fixture('factor').domain).vf['x']})
        self.assertEqual(len(grid_points(fixture('motfun'), EQ5, domain)), 20)

    def test_solved_keys_match_across_fields(self):
        spec = fixture('single_polar')
        eq = grid_points(spec, EQ5)
        mixed = grid_points(spec, MIXED5)
        self.assertEqual(len(eq), 4)
        self.assertEqual([x.key for x in eq], [x.key for x in mixed])
        self.assertEqual([name for name, _ in eq[0].key], ['x'])

    def test_complete_point_errors(self):
        spec = fixture('single_polar')
        with self.assertRaises(EvaluationError):
            complete_point(spec, EQ5, {'x': one(EQ5)})
        with self.assertRaises(EvaluationError):
            complete_point(spec, EQ5, {})
        with self.assertRaises(EvaluationError):
            complete_point(spec, EQ5, {'x': from_rational(EQ5, 0)})

    def test_enum_set(self):
        spec = fixture('motfun')
        term = spec.terms[0]
        x = complete_point(spec, EQ5, {'x': from_rational(EQ5, 4)})
        ys = enum_set(term.count, EQ5, x, term.count_vars)
        self.assertEqual([y[0].index for y in ys], [2, 3])


INDICATOR = "vars { y : VF }\nterm { coef : 1 }"
ABSOLUTE_VALUE = "vars { y : VF }\nterm { alpha : -ord(y) }"


class IntegrationTests(SimpleTestCase):

    def test_measure_of_valuation_ring(self):
        result = integrate_fiber(parse_spec(INDICATOR), EQ5, None, {})
        self.assertEqual(result.exact, 1)
        self.assertTrue(result.converged)
        self.assertTrue(result.tail_included)

    def test_absolute_value(self):
        spec = parse_spec(ABSOLUTE_VALUE)
        for field in (EQ5, make_field('mixed', 7, 1, 8), make_field('eq', 3, 2, 8)):
            q = field.q
            result = integrate_fiber(spec, field, None, {})
            self.assertAlmostEqual(result.value.real, q / (q + 1), delta=1e-9)
            self.assertTrue(result.converged)
            self.assertFalse(result.tail_included)

    def test_counting_measure(self):
        spec = parse_spec("vars { n : ZZ }\nterm { coef : 1 }")
        result = integrate_fiber(spec, EQ5, None, {}, EvalDomain(zz={'n': (0, 10)}))
        self.assertEqual(result.exact, 11)
        self.assertFalse(result.converged)

    def test_divergence(self):
        spec = parse_spec("vars { y : VF }\nterm { alpha : 2*ord(y) }")
        self.assertFalse(integrate_fiber(spec, EQ5, None, {}).converged)
        with self.assertRaises(DivergenceError):
            integrate_fiber(spec, EQ5, None, {}, strict=True)

    def test_pushforward(self):
        check = check_pushforward(parse_spec(ABSOLUTE_VALUE), parse_spec("term { coef : 5/6 }"), EQ5, None, {})
        self.assertTrue(check.agrees)
        self.assertEqual(check.expected, Fraction(5, 6))
        wrong = check_pushforward(parse_spec(ABSOLUTE_VALUE), parse_spec("term { coef : 4/5 }"), EQ5, None, {})
        self.assertFalse(wrong.agrees)


class BasicInequalityTests(SimpleTestCase):

    def test_integers(self):
        result = basic_inequality([3, 4])
        self.assertEqual((result.sum_of_squares, result.square_of_sum, result.n_sum_of_squares), (25.0, 49.0, 50.0))
        self.assertTrue(result.holds)

    @given(st.lists(st.tuples(st.sampled_from([3, 5, 7]), st.integers(min_value=0, max_value=6)), min_size=1,
                    max_size=6))
    @settings(max_examples=40, deadline=None)
    def test_roots_of_unity(self, exponents):
        values = [CyclotomicNumber.root_of_unity(m, k) * (i + 1) for i, (m, k) in enumerate(exponents)]
        self.assertTrue(basic_inequality(values).holds)
