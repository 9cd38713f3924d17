""" Polyrecurrence

Copyright 2026 The Polyrecurrence Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
from fractions import Fraction
import random
from unittest import TestCase

import mpmath

from polyrecurrence.exceptions import TorusError
from polyrecurrence.lattice import AffineLattice
from polyrecurrence.poly_parser import parse_poly
from polyrecurrence.polynomial import RationalVectorPoly
from polyrecurrence.torus import (Irrational, SubtorusCoset, TorusPoint, TorusSequence, closure_with_zero,
                                  component_closure, contains_zero, normalize_form, numeric_value, sum_closures)

ALPHA = Irrational('alpha', 'sqrt2')


def poly(text, variables=('n',)):
    return parse_poly(text, variables)


def vector(*texts):
    return RationalVectorPoly([poly(text) for text in texts])


def random_component(rng):
    coefficients = [rng.randint(-2, 2) for _ in range(3)]
    return f'({coefficients[0]})*n^2+({coefficients[1]})*n+({coefficients[2]})'


class TestTorusPoint(TestCase):

    def test_zero_coefficients_are_dropped(self):
        point = TorusPoint([0, '1/2'], {'alpha': [0, 0], 'beta': [1, 0]})
        self.assertEqual(point.labels, ['beta'])
        self.assertEqual(point, TorusPoint([0, Fraction(1, 2)], {'beta': [1, 0]}))

    def test_arithmetic(self):
        left = TorusPoint([1], {'alpha': [2]})
        right = TorusPoint(['1/3'], {'alpha': [-2]})
        self.assertEqual(left + right, TorusPoint(['4/3']))
        self.assertEqual(left - left, TorusPoint.zero(1))
        self.assertEqual(right.scaled(3), TorusPoint([1], {'alpha': [-6]}))

    def test_numeric(self):
        point = TorusPoint(['1/2'], {'alpha': [1]})
        with mpmath.workdps(30):
            value = point.numeric({'alpha': numeric_value('sqrt2', 30)})[0]
        self.assertAlmostEqual(float(value), (0.5 + 2 ** 0.5) % 1, places=12)
        with self.assertRaisesRegex(TorusError, 'No numeric value'):
            point.numeric({})

    def test_dimension_checks(self):
        with self.assertRaisesRegex(TorusError, 'has dimension'):
            TorusPoint([0, 0], {'alpha': [1]})
        with self.assertRaisesRegex(TorusError, 'Dimension mismatch'):
            TorusPoint([0]) + TorusPoint([0, 0])

    def test_dict_round_trip(self):
        point = TorusPoint(['1/3', 2], {'alpha': ['1/2', 0]})
        self.assertEqual(TorusPoint.from_dict(point.to_dict()), point)


class TestNumericValue(TestCase):

    def test_values(self):
        self.assertAlmostEqual(float(numeric_value('golden')), (5 ** 0.5 - 1) / 2, places=14)
        self.assertAlmostEqual(float(numeric_value('sqrt(2)-1')), 2 ** 0.5 - 1, places=14)
        self.assertAlmostEqual(float(numeric_value('0.25')), 0.25)

    def test_invalid(self):
        with self.assertRaisesRegex(TorusError, 'is not a real number'):
            numeric_value('x')
        with self.assertRaisesRegex(TorusError, 'Cannot read'):
            numeric_value('sqrt(')


class TestNormalizeForm(TestCase):

    def test_single_irrational(self):
        sequence = normalize_form([poly('n')], [TorusPoint([0], {'alpha': [1]})], [ALPHA])
        self.assertEqual(sequence.modulus, 1)
        self.assertEqual(sequence.rational, vector('0'))
        self.assertEqual(sequence.labels, ['alpha'])
        self.assertEqual(sequence.parts[0][1], vector('n'))

    def test_rational_only(self):
        sequence = normalize_form([poly('n')], [TorusPoint(['1/3'])], [])
        self.assertEqual(sequence.modulus, 3)
        self.assertEqual(sequence.rational, vector('n'))
        self.assertEqual(sequence.parts, [])

    def test_two_polynomials(self):
        vectors = [TorusPoint([0, '1/2'], {'alpha': [1, 0]}), TorusPoint([0, 0], {'alpha': [0, 1]})]
        sequence = normalize_form([poly('2*n+1'), poly('n^2')], vectors, [ALPHA])
        self.assertEqual(sequence.modulus, 2)
        self.assertEqual(sequence.rational, vector('0', '2*n+1'))
        self.assertEqual(sequence.parts[0][1], vector('2*n+1', 'n^2'))
        self.assertEqual(sequence.point([1]), TorusPoint([0, '3/2'], {'alpha': [3, 1]}))

    def test_fractional_irrational_coefficient_rescales_label(self):
        vectors = [TorusPoint([0], {'alpha': ['1/2']}), TorusPoint([0], {'alpha': ['1/3']})]
        sequence = normalize_form([poly('n'), poly('n^2')], vectors, [ALPHA])
        irrational, b = sequence.parts[0]
        self.assertEqual(irrational, Irrational('alpha/6', '(sqrt(2))/6'))
        self.assertEqual(b, vector('3*n + 2*n^2'))
        self.assertEqual(sequence.point([2]), TorusPoint([0], {'alpha/6': [14]}))
        self.assertAlmostEqual(float(irrational.numeric(30)), 2 ** 0.5 / 6, places=14)
        closure = closure_with_zero(sequence, search_bound=20)
        self.assertEqual(closure.coset.labels, ('alpha/6',))
        self.assertEqual(closure.coset.rank, 1)

    def test_input_errors(self):
        with self.assertRaisesRegex(TorusError, 'one vector per polynomial'):
            normalize_form([poly('n')], [], [])
        with self.assertRaisesRegex(TorusError, 'Undeclared irrational labels'):
            normalize_form([poly('n')], [TorusPoint([0], {'beta': [1]})], [ALPHA])
        with self.assertRaisesRegex(TorusError, 'not integer-valued'):
            normalize_form([poly('n/2')], [TorusPoint([1])], [])

    def test_sequence_checks(self):
        with self.assertRaisesRegex(TorusError, 'Invalid denominator'):
            TorusSequence(0, vector('n'))
        with self.assertRaisesRegex(TorusError, 'not integer-valued'):
            TorusSequence(1, vector('n/2'))
        with self.assertRaisesRegex(TorusError, 'must be distinct'):
            TorusSequence(1, vector('0'), [(ALPHA, vector('n')), (ALPHA, vector('n^2'))])

    def test_dict_round_trip(self):
        vectors = [TorusPoint([0, '1/2'], {'alpha': [1, 0]}), TorusPoint([0, 0], {'alpha': [0, 1]})]
        sequence = normalize_form([poly('2*n+1'), poly('n^2')], vectors, [ALPHA])
        restored = TorusSequence.from_dict(sequence.to_dict())
        self.assertEqual(restored.modulus, 2)
        self.assertEqual(restored.source, sequence.source)
        self.assertEqual(restored.point([5]), sequence.point([5]))


class TestClosures(TestCase):

    def test_full_circle(self):
        closure = component_closure(vector('2*n+1'))
        self.assertEqual(closure.rank, 1)
        self.assertTrue(closure.contains(TorusPoint.zero(1)))

    def test_diagonal_line(self):
        closure = component_closure(vector('n', 'n+1'))
        self.assertEqual(closure.basis, [(Fraction(1), Fraction(1))])
        self.assertEqual(closure.offset, TorusPoint([0, 0], {'alpha': [0, 1]}))
        self.assertFalse(closure.contains(TorusPoint.zero(2)))
        self.assertTrue(closure.contains(TorusPoint([5, 5], {'alpha': [7, 8]})))

    def test_zero_sequence(self):
        closure = component_closure(vector('0', '0'))
        self.assertEqual(closure.rank, 0)
        self.assertEqual(closure, SubtorusCoset.zero(2))

    def test_closure_on_sublattice(self):
        closure = component_closure(vector('n', 'n^2'), AffineLattice.scaled(2, [1]))
        self.assertEqual(closure.rank, 2)
        self.assertEqual(closure.offset, TorusPoint.zero(2))

    def test_sum_closures(self):
        first = component_closure(vector('n', '0'), label='a1')
        second = component_closure(vector('0', 'n'), label='a2')
        total = sum_closures([first, second])
        self.assertEqual(total.rank, 2)
        self.assertEqual(total.labels, ('a1', 'a2'))
        self.assertEqual(sum_closures([SubtorusCoset.zero(2), first]), first)

    def test_sum_closures_errors(self):
        first = component_closure(vector('n', '0'), label='a1')
        with self.assertRaisesRegex(TorusError, 'occurs twice'):
            sum_closures([first, first])
        with self.assertRaisesRegex(TorusError, 'Nothing to sum'):
            sum_closures([])
        with self.assertRaisesRegex(TorusError, 'Cannot add'):
            sum_closures([first, SubtorusCoset.zero(1)])

    def test_contains_zero(self):
        self.assertFalse(contains_zero(vector('n', 'n+1')))
        self.assertTrue(contains_zero(vector('2*n+1')))
        self.assertTrue(contains_zero(vector('n^2-1', 'n-1')))
        self.assertFalse(contains_zero(vector('3')))
        self.assertTrue(contains_zero(vector('0')))

    def test_contains_zero_agrees_with_closure_membership(self):
        rng = random.Random(7)
        for instance in range(200):
            dimension = rng.randint(1, 3)
            texts = [random_component(rng) for _ in range(dimension)]
            q = vector(*texts)
            expected = component_closure(q).contains(TorusPoint.zero(dimension))
            with self.subTest(instance=instance, q=texts):
                self.assertEqual(contains_zero(q), expected)

    def test_planted_constant_relation_excludes_zero(self):
        rng = random.Random(11)
        for instance in range(50):
            first = random_component(rng)
            factor = rng.choice([-2, -1, 1, 3])
            constant = rng.choice([-3, -1, 1, 2])
            texts = [first, f'({factor})*({first})+({constant})']
            with self.subTest(instance=instance, q=texts):
                self.assertFalse(contains_zero(vector(*texts)))
                self.assertFalse(component_closure(vector(*texts)).contains(TorusPoint.zero(2)))

    def test_membership_witness(self):
        coset = SubtorusCoset(2, [[1, 1]], TorusPoint([0, '1/2']))
        point = TorusPoint([3, '7/2'], {'alpha': [2, 2]})
        witness = coset.membership_witness(point)
        self.assertIsNotNone(witness)
        self.assertTrue(coset.check_witness(point, witness))
        self.assertIsNone(coset.membership_witness(TorusPoint([0, '1/3'])))

    def test_subtorus_dict_round_trip(self):
        coset = SubtorusCoset(2, [[2, 4]], TorusPoint(['1/2', 0], {'alpha': [0, 1]}), ['alpha'])
        self.assertEqual(SubtorusCoset.from_dict(coset.to_dict()), coset)


class TestClosureWithZero(TestCase):

    def test_rational_sequence(self):
        sequence = normalize_form([poly('n')], [TorusPoint(['1/3'])], [])
        result = closure_with_zero(sequence, search_bound=20)
        self.assertEqual(result.lattice, AffineLattice.scaled(3, [0]))
        self.assertEqual(result.coset.rank, 0)
        self.assertIsNotNone(result.proof)

    def test_odd_sequence_is_rejected(self):
        sequence = normalize_form([poly('2*n+1')], [TorusPoint([0], {'alpha': [1]})], [ALPHA])
        with self.assertRaisesRegex(TorusError, 'no common root modulo 2'):
            closure_with_zero(sequence, search_bound=20)

    def test_full_circle(self):
        vectors = [TorusPoint([0], {'alpha': [1]}), TorusPoint([0], {'alpha': [1]})]
        sequence = normalize_form([poly('n^2'), poly('n^2+n')], vectors, [ALPHA])
        result = closure_with_zero(sequence, search_bound=20)
        self.assertEqual(result.lattice, AffineLattice.full(1))
        self.assertEqual(result.coset.rank, 1)
        self.assertIsNone(result.proof)
        self.assertEqual(result.to_dict()['sublattice_proof'], None)

    def test_mixed_sequence(self):
        vectors = [TorusPoint(['1/2', 0], {'alpha': [0, 1]}), TorusPoint([0, 0], {'beta': [1, 0]})]
        sequence = normalize_form([poly('n^2-n'), poly('n')], vectors, [ALPHA, Irrational('beta')])
        result = closure_with_zero(sequence, search_bound=20)
        self.assertTrue(all(result.lattice.member(point) for point in ([0], [4])))
        self.assertEqual(result.coset.rank, 2)
        self.assertTrue(result.coset.contains(TorusPoint.zero(2)))

    def test_missing_source(self):
        with self.assertRaisesRegex(TorusError, 'does not record'):
            closure_with_zero(TorusSequence(1, vector('n')))
