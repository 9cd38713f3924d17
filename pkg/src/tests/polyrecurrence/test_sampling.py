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
import random
from unittest import TestCase

from polyrecurrence.exceptions import TorusError
from polyrecurrence.lattice import AffineLattice
from polyrecurrence.poly_parser import parse_poly
from polyrecurrence.polynomial import RationalVectorPoly
from polyrecurrence.sampling import sample_verify
from polyrecurrence.torus import (Irrational, SubtorusCoset, TorusPoint, closure_with_zero, component_closure,
                                  normalize_form, sum_closures)

SQRT2 = Irrational('alpha', 'sqrt2')
LABELS = [SQRT2, Irrational('beta', 'sqrt3')]
MONOMIALS = ['1', 'n', 'n^2', 'n^3']


def poly(text, variables=('n',)):
    return parse_poly(text, variables)


class TestSampleVerify(TestCase):

    def test_rotation_fills_the_circle(self):
        sequence = normalize_form([poly('n')], [TorusPoint([0], {'alpha': [1]})], [SQRT2])
        coset = component_closure(sequence.parts[0][1])
        report = sample_verify(sequence, coset, 2000)
        self.assertEqual(report.samples, 4001)
        self.assertLess(report.max_membership_residual, 1e-9)
        self.assertEqual(report.empirical_dimension, 1)
        self.assertTrue(report.consistent)
        self.assertLess(report.covering_statistic, 0.01)

    def test_diagonal_misses_zero(self):
        vectors = [TorusPoint([0, 0], {'alpha': [1, 1]}), TorusPoint([0, 0], {'alpha': [0, 1]})]
        sequence = normalize_form([poly('n'), poly('1')], vectors, [SQRT2])
        self.assertEqual(sequence.parts[0][1], RationalVectorPoly([poly('n'), poly('n+1')]))
        coset = component_closure(sequence.parts[0][1])
        report = sample_verify(sequence, coset, 1000)
        self.assertLess(report.max_membership_residual, 1e-9)
        self.assertEqual(report.empirical_dimension, 1)
        self.assertAlmostEqual(report.zero_residual, 2 ** 0.5 - 1, places=9)
        self.assertGreater(report.min_distance_to_zero, 0.0)

    def test_zero_sequence(self):
        sequence = normalize_form([poly('0')], [TorusPoint([0])], [])
        report = sample_verify(sequence, SubtorusCoset.zero(1), 50)
        self.assertEqual(report.max_membership_residual, 0.0)
        self.assertEqual(report.min_distance_to_zero, 0.0)
        self.assertEqual(report.empirical_dimension, 0)

    def test_wrong_prediction_is_detected(self):
        sequence = normalize_form([poly('n')], [TorusPoint([0], {'alpha': [1]})], [SQRT2])
        report = sample_verify(sequence, SubtorusCoset.zero(1), 100, tolerance=1e-9)
        self.assertFalse(report.consistent)

    def test_closure_on_sublattice(self):
        vectors = [TorusPoint(['1/2'], {'alpha': [1]})]
        sequence = normalize_form([poly('n^2-n')], vectors, [SQRT2])
        result = closure_with_zero(sequence, search_bound=20)
        report = sample_verify(sequence, result.coset, 500, lattice=result.lattice)
        self.assertTrue(report.consistent)
        self.assertLess(report.zero_residual, 1e-9)

    def test_sample_cap(self):
        sequence = normalize_form([poly('n')], [TorusPoint([0], {'alpha': [1]})], [SQRT2])
        coset = component_closure(sequence.parts[0][1])
        report = sample_verify(sequence, coset, 10 ** 6, max_samples=300)
        self.assertEqual(report.samples, 300)

    def test_errors(self):
        sequence = normalize_form([poly('n')], [TorusPoint([0], {'alpha': [1]})], [Irrational('alpha')])
        with self.assertRaisesRegex(TorusError, 'No numeric value given'):
            sample_verify(sequence, SubtorusCoset(1, [[1]]), 10)
        with self.assertRaisesRegex(TorusError, 'Coset of dimension'):
            sample_verify(sequence, SubtorusCoset.zero(2), 10)
        with self.assertRaisesRegex(TorusError, 'No point of'):
            sample_verify(normalize_form([poly('n')], [TorusPoint([0])], []), SubtorusCoset.zero(1), 1,
                          lattice=AffineLattice.scaled(5, [3]))


class TestRandomClosures(TestCase):

    @staticmethod
    def random_sequence(rng):
        dimension = rng.randint(1, 3)
        labels = LABELS[:rng.randint(1, 2)]
        vectors = []
        for index, _ in enumerate(MONOMIALS):
            irrational = {}
            for label in labels:
                coefficients = [rng.randint(-2, 2) for _ in range(dimension)]
                if index == 1 and label is labels[0]:
                    coefficients[0] = 1
                irrational[label.label] = coefficients
            vectors.append(TorusPoint([0] * dimension, irrational))
        return normalize_form([poly(text) for text in MONOMIALS], vectors, labels)

    def test_samples_stay_in_the_predicted_closure(self):
        rng = random.Random(2026)
        for instance in range(50):
            sequence = self.random_sequence(rng)
            predicted = sum_closures([component_closure(b, label=irrational.label)
                                      for irrational, b in sequence.parts])
            report = sample_verify(sequence, predicted, 10)
            with self.subTest(instance=instance):
                self.assertEqual(report.samples, 21)
                self.assertLess(report.max_membership_residual, 1e-9)
                self.assertEqual(predicted.contains(TorusPoint.zero(sequence.dimension)),
                                 report.zero_residual < 1e-6)
