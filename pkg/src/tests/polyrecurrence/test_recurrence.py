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
import math
from unittest import TestCase

from polyrecurrence.exceptions import RecurrenceError
from polyrecurrence.poly_parser import parse_poly
from polyrecurrence.recurrence import (WindowSet, configuration_count, cyclic_average, good_set_scan,
                                       intersection_density, multi_set_scan, obstruction_demo, partition_scan)


def poly(text, variables=('n',)):
    return parse_poly(text, variables)


class TestWindowSet(TestCase):

    def test_residues(self):
        subset = WindowSet.residues(0, 10, 3, [1, 4])
        self.assertEqual(subset.elements(), [1, 4, 7])
        self.assertEqual(subset.to_dict()['residues'], [1])
        self.assertEqual(subset.density(), Fraction(3, 10))
        self.assertIn(4, subset)
        self.assertNotIn(10, subset)

    def test_bohr(self):
        subset = WindowSet.bohr(0, 50, 'sqrt3', (0.0, 0.2))
        expected = [a for a in range(50) if (a * math.sqrt(3)) % 1 < 0.2]
        self.assertEqual(subset.elements(), expected)
        self.assertEqual(subset.to_dict()['kind'], 'bohr')

    def test_explicit_ignores_outside_elements(self):
        with self.assertLogs('polyrecurrence.recurrence', level='WARNING'):
            subset = WindowSet.explicit(0, 10, [0, 2, 2, 11, -1])
        self.assertEqual(subset.elements(), [0, 2])
        self.assertEqual(subset.to_dict()['elements'], [0, 2])

    def test_from_dict(self):
        subset = WindowSet.from_dict({'window': [5, 15], 'kind': 'residues', 'modulus': 2, 'residues': [0]})
        self.assertEqual(subset.window, (5, 15))
        self.assertEqual(subset.elements(), [6, 8, 10, 12, 14])
        again = WindowSet.from_dict(subset.to_dict())
        self.assertEqual(again.elements(), subset.elements())

    def test_from_dict_errors(self):
        with self.assertRaisesRegex(RecurrenceError, 'Unknown window set kind'):
            WindowSet.from_dict({'window': [0, 10], 'kind': 'cantor'})
        with self.assertRaisesRegex(RecurrenceError, 'Invalid window set data'):
            WindowSet.from_dict({'window': [0, 10], 'kind': 'residues'})
        with self.assertRaisesRegex(RecurrenceError, 'Invalid window'):
            WindowSet.residues(10, 10, 2, [0])
        with self.assertRaisesRegex(RecurrenceError, 'Invalid interval'):
            WindowSet.bohr(0, 10, 'sqrt2', (0.5, 0.2))

    def test_translated_and_subsets(self):
        subset = WindowSet.residues(0, 12, 4, [0])
        self.assertEqual(subset.translated(5).elements(), [5, 9, 13])
        self.assertTrue(subset.is_subset_of(WindowSet.residues(0, 12, 2, [0])))
        self.assertFalse(WindowSet.residues(0, 12, 2, [0]).is_subset_of(subset))
        self.assertFalse(subset.is_subset_of(WindowSet.residues(0, 16, 2, [0])))


class TestIntersectionDensity(TestCase):

    def test_configuration_count(self):
        subset = WindowSet.explicit(0, 10, [0, 1, 2, 5])
        self.assertEqual(configuration_count(subset, [-1]), 2)
        self.assertEqual(configuration_count(subset, [3]), 1)
        self.assertEqual(configuration_count(subset, [0]), 4)
        self.assertEqual(configuration_count(subset, [10]), 0)

    def test_no_configurations_in_a_residue_class(self):
        subset = WindowSet.residues(0, 30000, 3, [0])
        self.assertEqual(intersection_density(subset, [poly('n^2+1')], [1]), 0)

    def test_even_numbers_with_even_shift(self):
        subset = WindowSet.residues(0, 10 ** 4, 2, [0])
        self.assertEqual(intersection_density(subset, [poly('n^2-n')], [3]), Fraction(4997, 10 ** 4))

    def test_shift_outside_window(self):
        subset = WindowSet.residues(0, 10, 1, [0])
        with self.assertLogs('polyrecurrence.recurrence', level='WARNING'):
            self.assertEqual(intersection_density(subset, [poly('n^2')], [4]), 0)

    def test_non_integral_shift(self):
        subset = WindowSet.residues(0, 10, 1, [0])
        with self.assertRaisesRegex(RecurrenceError, 'not integer-valued'):
            intersection_density(subset, [poly('n/2')], [1])


class TestGoodSetScan(TestCase):

    def test_failing_family_has_no_good_shifts(self):
        report = good_set_scan(WindowSet.residues(0, 1000, 2, [0]), [poly('2*n+1')], 10)
        self.assertEqual(report.good, [])
        self.assertIsNone(report.max_gap)
        self.assertEqual(report.epsilon, 0)

    def test_zero_shift_is_the_density(self):
        report = good_set_scan(WindowSet.residues(0, 300, 3, [0]), [poly('n^2')], 3)
        self.assertEqual(report.density_of((0,)), Fraction(1, 3))
        self.assertEqual(len(report.points), 7)

    def test_bohr_set_has_good_shifts(self):
        subset = WindowSet.bohr(0, 2000, 'sqrt3', (0.0, 0.2))
        report = good_set_scan(subset, [poly('n^2-1'), poly('2*n^2-2')], 30)
        self.assertEqual(report.density_of((1,)), subset.density())
        self.assertIn((1,), report.good)
        self.assertIn((-1,), report.good)
        self.assertIsNotNone(report.max_gap)

    def test_explicit_threshold(self):
        report = good_set_scan(WindowSet.residues(0, 300, 3, [0]), [poly('n^2')], 3, Fraction(1, 4))
        self.assertEqual(report.good, [(-3,), (0,), (3,)])
        self.assertEqual(report.max_gap, 3)
        with self.assertRaisesRegex(RecurrenceError, 'Invalid threshold'):
            good_set_scan(WindowSet.residues(0, 300, 3, [0]), [poly('n^2')], 3, -1)

    def test_csv(self):
        report = good_set_scan(WindowSet.residues(0, 300, 3, [0]), [poly('n^2')], 1)
        lines = report.to_csv().splitlines()
        self.assertEqual(lines[0], 'n0,c_n,c_n_exact')
        self.assertEqual(lines[1], '-1,0,0')
        self.assertEqual(lines[2], '0,0.333333333333,1/3')
        self.assertEqual(len(lines), 4)

    def test_two_variables(self):
        report = good_set_scan(WindowSet.residues(0, 200, 2, [0]), [poly('n+m', ('n', 'm'))], 2)
        self.assertEqual(len(report.points), 25)
        self.assertIn((1, 1), report.good)
        self.assertNotIn((1, 0), report.good)
        self.assertEqual(report.max_gap, 1)


class TestPartitionScan(TestCase):

    def setUp(self):
        self.cells = [WindowSet.residues(0, 1000, 2, [0]), WindowSet.residues(0, 1000, 2, [1])]

    def test_every_cell_has_a_run(self):
        reports = partition_scan(self.cells, [poly('n^2-n')], 20)
        self.assertEqual(len(reports), 2)
        self.assertEqual(reports[0].longest_run, (0, 20))
        self.assertEqual(reports[1].longest_run, (1, 19))
        self.assertEqual(reports[0].gap_bound, 8)
        self.assertIn('convention', reports[0].to_dict())

    def test_failing_family(self):
        reports = partition_scan(self.cells, [poly('2*n+1')], 20)
        self.assertTrue(all(not cell.report.good for cell in reports))
        self.assertTrue(all(cell.longest_run is None for cell in reports))

    def test_trivial_partition_matches_good_set_scan(self):
        whole = WindowSet.residues(0, 1000, 1, [0])
        family = [poly('n^2+n')]
        cell_report = partition_scan([whole], family, 10)[0].report
        scan = good_set_scan(whole, family, 10)
        for n in range(11):
            with self.subTest(n=n):
                self.assertEqual(cell_report.density_of((n,)), scan.density_of((n,)))

    def test_errors(self):
        with self.assertRaisesRegex(RecurrenceError, 'do not partition'):
            partition_scan([self.cells[0], WindowSet.residues(0, 1000, 3, [0])], [poly('n')], 5)
        with self.assertRaisesRegex(RecurrenceError, 'share their window'):
            partition_scan([self.cells[0], WindowSet.residues(0, 500, 2, [1])], [poly('n')], 5)
        with self.assertRaisesRegex(RecurrenceError, 'one variable'):
            partition_scan(self.cells, [poly('n+m', ('n', 'm'))], 5)


class TestMultiSetScan(TestCase):

    def test_common_good_shifts(self):
        sets = [WindowSet.residues(0, 600, 2, [0]), WindowSet.residues(0, 600, 3, [0])]
        report = multi_set_scan(sets, [poly('n^2-n')], 10)
        self.assertEqual(len(report.reports), 2)
        self.assertEqual(len(report.common), 14)
        self.assertTrue(all(n * (n - 1) % 3 == 0 for (n,) in report.common))
        self.assertIn((0,), report.common)

    def test_no_sets(self):
        with self.assertRaisesRegex(RecurrenceError, 'No sets given'):
            multi_set_scan([], [poly('n')], 3)


class TestObstruction(TestCase):

    def test_odd_shift_modulo_two(self):
        report = obstruction_demo([poly('2*n+1')], 2, window=(0, 1000), radius=10)
        self.assertTrue(report.confirmed)
        self.assertEqual(report.configurations, [0, 0])

    def test_quadratic_modulo_three(self):
        report = obstruction_demo([poly('n^2+1')], 3, window=(0, 3000), radius=30)
        self.assertTrue(report.confirmed)
        self.assertEqual(report.to_dict()['configurations'], [0, 0, 0])

    def test_precondition(self):
        with self.assertRaisesRegex(RecurrenceError, 'Precondition violated'):
            obstruction_demo([poly('n')], 2, window=(0, 100), radius=5)


class TestCyclicAverage(TestCase):

    def test_unsolvable_family_averages_zero(self):
        result = cyclic_average([poly('n^2+1')], 3, 10)
        self.assertEqual(result.average, 0)
        self.assertFalse(result.solvable)
        self.assertTrue(result.period_covered)

    def test_solvable_family(self):
        result = cyclic_average([poly('n')], 5, 10)
        self.assertEqual(result.average, Fraction(1, 21))
        self.assertTrue(result.solvable)

    def test_invalid_modulus(self):
        with self.assertRaisesRegex(ValueError, 'Invalid modulus'):
            cyclic_average([poly('n')], 0, 10)
