import random

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic.characters import (
    additive_character_sum, character_at, e_residue, enumerate_characters, eval_char, standard_psi,
)
from motivic.cyclotomic import CyclotomicNumber
from motivic.exceptions import CapacityError, DepthExceededError, PrecisionError, WorkbenchError
from motivic.localfield import from_digits, from_rational, lift, make_field, one, uniformizer, zero

EQ5 = make_field('eq', 5, 1, 8)
MIXED5 = make_field('mixed', 5, 1, 8)
EQ9 = make_field('eq', 3, 2, 6)


def zeta(m, k=1):
    return CyclotomicNumber.root_of_unity(m, k)


class FamilyTests(SimpleTestCase):

    def test_family_sizes(self):
        self.assertEqual(len(enumerate_characters(MIXED5, 0)), 1)
        self.assertEqual(len(enumerate_characters(MIXED5, 2)), 25)
        self.assertEqual(len(enumerate_characters(EQ9, 1)), 9)

    def test_standard_member_first(self):
        psi = enumerate_characters(EQ5, 1)[0]
        self.assertEqual(psi.index, 0)
        self.assertEqual(psi.twist, one(EQ5))

    def test_value_orders(self):
        self.assertEqual(character_at(MIXED5, 2, 0).value_order, 125)
        self.assertEqual(character_at(EQ9, 1, 0).value_order, 3)

    def test_index_out_of_range(self):
        with self.assertRaises(WorkbenchError):
            character_at(EQ5, 1, 5)

    def test_depth_needs_precision(self):
        with self.assertRaises(PrecisionError):
            character_at(make_field('eq', 5, 1, 2), 2, 0)

    @override_settings(WORKBENCH_MAX_CHARACTERS=24)
    def test_family_limit(self):
        with self.assertRaises(CapacityError):
            enumerate_characters(EQ5, 2)

    def test_members_are_distinct_on_polar_classes(self):
        for field in (EQ5, MIXED5, EQ9):
            psis = enumerate_characters(field, 1)
            w = one(field) / uniformizer(field)
            k = field.residue_field
            tables = set()
            for psi in psis:
                tables.add(tuple(eval_char(psi, w * lift(field, c)) for c in k.elements))
            self.assertEqual(len(tables), field.q)


class StandardCharacterTests(SimpleTestCase):

    def test_residue_restriction(self):
        psi = standard_psi(EQ5)
        self.assertEqual(eval_char(psi, from_rational(EQ5, 3)), zeta(5, 3))
        self.assertEqual(eval_char(psi, uniformizer(EQ5)), 1)
        self.assertEqual(eval_char(standard_psi(MIXED5), from_rational(MIXED5, 2)), zeta(5, 2))
        self.assertEqual(eval_char(standard_psi(MIXED5), from_rational(MIXED5, 5)), 1)

    def test_lifting_convention(self):
        psi = standard_psi(EQ5)
        k = EQ5.residue_field
        self.assertEqual(eval_char(psi, uniformizer(EQ5), k.from_int(2)), zeta(5, 2))
        self.assertEqual(psi(zero(EQ5), k.from_int(4)), e_residue(k.from_int(4)))

    def test_depth_exceeded(self):
        with self.assertRaises(DepthExceededError) as cm:
            eval_char(standard_psi(EQ5), one(EQ5) / uniformizer(EQ5))
        self.assertEqual(cm.exception.required_depth, 1)

    def test_polar_values(self):
        w = one(EQ5) / uniformizer(EQ5)
        values = [eval_char(psi, w) for psi in enumerate_characters(EQ5, 1)]
        self.assertEqual(values, [zeta(5, i) for i in range(5)])

    def test_mixed_polar_value(self):
        psi = character_at(MIXED5, 1, 0)
        self.assertEqual(eval_char(psi, from_rational(MIXED5, '1/5')), zeta(25, 1))
        self.assertEqual(eval_char(psi, from_rational(MIXED5, '5/5')), zeta(5, 1))

    def test_character_sums(self):
        for field in (EQ5, EQ9):
            k = field.residue_field
            self.assertEqual(additive_character_sum(k, 0), field.q)
            self.assertEqual(additive_character_sum(k, 1), 0)

    @given(st.integers(min_value=0, max_value=24), st.integers(min_value=0, max_value=24))
    @settings(max_examples=50, deadline=None)
    def test_additive(self, m, n):
        psi = character_at(MIXED5, 1, 3)
        a = from_rational(MIXED5, f'{m}/5')
        b = from_rational(MIXED5, f'{n}/5')
        self.assertEqual(eval_char(psi, a + b), eval_char(psi, a) * eval_char(psi, b))


SHAPES = [(p, f) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23) for f in (1, 2, 3, 4) if p ** f <= 27]


def random_element(rng, field, valuation, length=4):
    k = field.residue_field
    return from_digits(field, valuation, [k.from_index(rng.randrange(field.q)) for _ in range(length)])


@override_settings(WORKBENCH_MAX_CYCLOTOMIC_ORDER=20000)
class CharacterSuiteTests(SimpleTestCase):
    """Every residue field with q <= 27, both characteristics, depths 0 to 2"""

    def fields(self):
        for p, f in SHAPES:
            for kind in ('eq', 'mixed'):
                yield make_field(kind, p, f, 6)

    def test_family_counts(self):
        for field in self.fields():
            for depth in range(3):
                psis = enumerate_characters(field, depth)
                with self.subTest(field=str(field), depth=depth):
                    self.assertEqual(len(psis), field.q ** depth)
                    self.assertEqual(len({psi.twist for psi in psis}), field.q ** depth)

    def test_orthogonality(self):
        for p, f in SHAPES:
            k = make_field('eq', p, f, 2).residue_field
            for c in k.elements:
                with self.subTest(q=k.q, c=str(c)):
                    self.assertEqual(additive_character_sum(k, c), 0 if c else k.q)

    def test_additivity(self):
        rng = random.Random(3)
        for field in self.fields():
            for depth in range(3):
                for index in rng.sample(range(field.q ** depth), min(3, field.q ** depth)):
                    psi = character_at(field, depth, index)
                    for _ in range(3):
                        a = random_element(rng, field, -depth)
                        b = random_element(rng, field, -depth)
                        with self.subTest(field=str(field), psi=psi.label()):
                            self.assertEqual(eval_char(psi, a + b), eval_char(psi, a) * eval_char(psi, b))

    def test_lift_independence(self):
        rng = random.Random(4)
        for field in self.fields():
            k = field.residue_field
            for depth in range(3):
                psi = character_at(field, depth, rng.randrange(field.q ** depth))
                for _ in range(3):
                    a = random_element(rng, field, -depth)
                    v = k.from_index(rng.randrange(field.q))
                    other_lift = lift(field, v) + uniformizer(field) * random_element(rng, field, 0)
                    with self.subTest(field=str(field), psi=psi.label(), v=str(v)):
                        self.assertEqual(eval_char(psi, a, v), eval_char(psi, a + other_lift))
                        self.assertEqual(eval_char(psi, a, v), eval_char(psi, a) * e_residue(v))
