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

from polyrecurrence.certificate import (CertificateKind, JOINTLY_INTERSECTIVE, NOT_JOINTLY_INTERSECTIVE,
                                        verify_certificate)
from polyrecurrence.exceptions import BudgetExceededError, IntersectivityError
from polyrecurrence.intersectivity import (Counterexample, SolvableAllModuli, Verdict, combination_sweep,
                                           ideal_element_check, intersective_decide_1var, jointly_intersective_up_to,
                                           multidim_bounded_check, non_intersective_shift, reduce_joint_to_gcd,
                                           shift_sweep)
from polyrecurrence.lattice import AffineLattice
from polyrecurrence.modular import prime_powers_up_to, solvable_mod
from polyrecurrence.poly_parser import parse_poly
from polyrecurrence.polynomial import IntPoly, RationalVectorPoly

FLAGSHIP = '(n^2-5)*(n^2-41)*(n^2-205)'
JOINT_PAIR = ('n*(n+1)*(2*n+1)', '(n^3+n^2+2)*(2*n+1)')


def poly(text, variables=('n',)):
    return parse_poly(text, variables)


def random_poly(generator, degree):
    n = IntPoly.variable('n', ['n'])
    result = IntPoly.constant(0, ['n'])
    for power in range(degree + 1):
        result = result + generator.randint(-6, 6) * n ** power
    return result


class TestJointlyIntersectiveUpTo(TestCase):

    def test_odd_numbers_fail_modulo_two(self):
        verdict = jointly_intersective_up_to([poly('2*n+1')], 10)
        self.assertIsInstance(verdict, Counterexample)
        self.assertEqual(verdict.modulus, 2)
        self.assertEqual(verdict.certificate.kind, CertificateKind.COUNTEREXAMPLE_MODULUS)
        self.assertTrue(verify_certificate(verdict.certificate))

    def test_integer_root(self):
        verdict = jointly_intersective_up_to([poly('n-3')], 100)
        self.assertIsInstance(verdict, SolvableAllModuli)
        self.assertEqual(sorted(verdict.witnesses), [power for power, _, _ in prime_powers_up_to(100)])
        self.assertEqual(verdict.witnesses[7], (3,))

    def test_joint_pair(self):
        verdict = jointly_intersective_up_to([poly(text) for text in JOINT_PAIR], 10 ** 4)
        self.assertIsInstance(verdict, Counterexample)
        self.assertEqual(verdict.modulus, 4)
        self.assertTrue(verify_certificate(verdict.certificate.to_json()))

    def test_invalid_bound(self):
        with self.assertRaisesRegex(ValueError, 'Invalid modulus bound'):
            jointly_intersective_up_to([poly('n')], 1)

    def test_budget_reports_verified_bound(self):
        with self.assertRaises(BudgetExceededError) as context:
            jointly_intersective_up_to([poly('n-3')], 1000, budget=50)
        self.assertEqual(context.exception.last_verified_bound, 12)
        self.assertIn('verified all prime powers up to 12', str(context.exception))

    def test_random_families_with_common_root(self):
        generator = random.Random(20260101)
        n = IntPoly.variable('n', ['n'])
        for _ in range(200):
            root = generator.randint(-20, 20)
            base = (n - root) * random_poly(generator, generator.randint(0, 2))
            if base.is_zero():
                continue
            family = [base * random_poly(generator, generator.randint(0, 2)) for _ in range(generator.randint(1, 3))]
            family = [p for p in family if not p.is_zero()] or [base]
            with self.subTest(family=[p.render() for p in family]):
                self.assertIsInstance(jointly_intersective_up_to(family, 200), SolvableAllModuli)

    def test_random_families_failing_at_prime(self):
        generator = random.Random(20260102)
        n = IntPoly.variable('n', ['n'])
        primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        for _ in range(200):
            prime = generator.choice(primes)
            non_residue = generator.choice([a for a in range(1, prime) if pow(a, (prime - 1) // 2, prime) != 1])
            base = n ** 2 - (non_residue + prime * generator.randint(-3, 3))
            other = random_poly(generator, generator.randint(0, 2))
            family = [base] if other.is_zero() else [base, base * other]
            with self.subTest(family=[p.render() for p in family]):
                verdict = jointly_intersective_up_to(family, 50)
                self.assertIsInstance(verdict, Counterexample)
                self.assertLessEqual(verdict.modulus, prime)
                self.assertFalse(solvable_mod(family, verdict.modulus).solvable)


class TestIntersectiveDecide(TestCase):

    def test_quadratic_residue_pattern(self):
        decision, certificate = intersective_decide_1var(poly(FLAGSHIP), modulus_bound=100)
        self.assertEqual(decision.verdict, Verdict.INTERSECTIVE)
        self.assertEqual(certificate.kind, CertificateKind.QUAD_RESIDUE_PROOF)
        self.assertEqual((certificate.payload['a1'], certificate.payload['a2']), ('5', '41'))
        self.assertEqual(certificate.payload['sqrt_a1_mod_a2'], '13')
        self.assertEqual([entry['prime'] for entry in certificate.payload['hensel']], ['2', '5', '41'])
        self.assertTrue(verify_certificate(certificate))

    def test_sum_of_square_and_one(self):
        decision, certificate = intersective_decide_1var(poly('n^2+1'))
        self.assertEqual(decision.verdict, Verdict.NOT_INTERSECTIVE)
        self.assertEqual(decision.modulus, 3)
        self.assertEqual(certificate.modulus, 3)
        self.assertTrue(verify_certificate(certificate))

    def test_integer_root(self):
        decision, certificate = intersective_decide_1var(poly('n-7'))
        self.assertEqual(decision.verdict, Verdict.INTERSECTIVE)
        self.assertEqual(certificate.kind, CertificateKind.WITNESS_TABLE)
        self.assertEqual(certificate.payload['root'], ['7'])

    def test_smallest_integer_root(self):
        _, certificate = intersective_decide_1var(poly('(n-5)*(n+2)*(n-2)'))
        self.assertEqual(certificate.payload['root'], ['-2'])

    def test_hensel_sweep_finds_failing_power(self):
        decision, certificate = intersective_decide_1var(poly('n^2+1'), modulus_bound=2)
        self.assertEqual(decision.verdict, Verdict.NOT_INTERSECTIVE)
        self.assertEqual(decision.modulus, 4)
        self.assertIn('2-adic', decision.reason)
        self.assertTrue(verify_certificate(certificate))

    def test_intersective_quintic_is_bounded_only(self):
        decision, certificate = intersective_decide_1var(poly('(n^3-19)*(n^2+n+1)'), prime_bound=50,
                                                         modulus_bound=200)
        self.assertEqual(decision.verdict, Verdict.UNKNOWN)
        self.assertEqual(certificate.kind, CertificateKind.BOUNDED_ONLY)
        self.assertTrue(verify_certificate(certificate))

    def test_invalid_input(self):
        with self.assertRaisesRegex(IntersectivityError, 'zero polynomial'):
            intersective_decide_1var(poly('0'))
        with self.assertRaisesRegex(IntersectivityError, 'one variable'):
            intersective_decide_1var(poly('n*m', ['n', 'm']))
        with self.assertRaisesRegex(IntersectivityError, 'not integer-valued'):
            intersective_decide_1var(poly('n/2'))


class TestReduceJointToGcd(TestCase):

    def test_joint_pair(self):
        reduction = reduce_joint_to_gcd([poly(text) for text in JOINT_PAIR], modulus_bound=100)
        self.assertEqual(reduction.gcd, poly('n + 1/2'))
        self.assertEqual(reduction.decision.verdict, Verdict.NOT_INTERSECTIVE)
        self.assertEqual(reduction.decision.modulus, 2)
        self.assertEqual(reduction.certificate.claim, NOT_JOINTLY_INTERSECTIVE)
        self.assertEqual(reduction.family_modulus, 4)
        self.assertTrue(verify_certificate(reduction.certificate.to_json()))

    def test_common_square(self):
        reduction = reduce_joint_to_gcd([poly('n^2'), poly('n^3'), poly('n^2+n^3')])
        self.assertEqual(reduction.gcd, poly('n^2'))
        self.assertEqual(reduction.certificate.claim, JOINTLY_INTERSECTIVE)
        self.assertIsInstance(reduction.direct, SolvableAllModuli)
        self.assertTrue(verify_certificate(reduction.certificate))

    def test_coprime_pair(self):
        reduction = reduce_joint_to_gcd([poly('n'), poly('n-1')], modulus_bound=100)
        self.assertEqual(reduction.gcd, poly('1'))
        self.assertEqual(reduction.certificate.claim, NOT_JOINTLY_INTERSECTIVE)
        self.assertEqual(reduction.family_modulus, 2)
        self.assertTrue(verify_certificate(reduction.certificate))

    def test_singleton(self):
        reduction = reduce_joint_to_gcd([poly('2*n-6')])
        self.assertEqual(reduction.gcd, poly('n-3'))
        self.assertEqual(reduction.quotients, [poly('2')])
        self.assertEqual(reduction.certificate.claim, JOINTLY_INTERSECTIVE)


class TestMultidim(TestCase):

    def test_coordinate_maps(self):
        maps = [RationalVectorPoly([poly('n'), poly('0')]), RationalVectorPoly([poly('0'), poly('n')])]
        report = multidim_bounded_check(maps, 6)
        self.assertTrue(report.success)
        self.assertTrue(all(verdict.witness == (0,) for verdict in report.verdicts))

    def test_odd_first_coordinate(self):
        report = multidim_bounded_check([RationalVectorPoly([poly('2*n+1'), poly('n')])], 2)
        self.assertFalse(report.success)
        self.assertEqual(report.first_failure, AffineLattice([[2, 0], [0, 1]]))
        self.assertEqual(len(report.verdicts), 4)

    def test_witnesses_lie_in_subgroups(self):
        vector = RationalVectorPoly([poly('n^2'), poly('n^2+n')])
        report = multidim_bounded_check([vector], 8)
        for verdict in report.verdicts:
            if verdict.witness is not None:
                value = [int(x) for x in vector.evaluate(verdict.witness)]
                self.assertTrue(verdict.subgroup.member(value))

    def test_mismatched_maps(self):
        with self.assertRaisesRegex(IntersectivityError, 'share their variables'):
            multidim_bounded_check([RationalVectorPoly([poly('n')]), RationalVectorPoly([poly('n'), poly('n')])], 2)
        with self.assertRaisesRegex(IntersectivityError, 'No maps'):
            multidim_bounded_check([], 2)


class TestShifts(TestCase):

    def test_square_shift(self):
        obstruction = non_intersective_shift(poly('n^2'))
        self.assertEqual((obstruction.start, obstruction.modulus, obstruction.shift), (1, 3, 2))
        self.assertFalse(solvable_mod([poly('n^2-2')], 3).solvable)

    def test_even_numbers(self):
        obstruction = non_intersective_shift(poly('2*n'))
        self.assertEqual((obstruction.start, obstruction.modulus, obstruction.shift), (0, 2, 1))

    def test_linear_and_constant(self):
        with self.assertRaisesRegex(IntersectivityError, 'Every shift'):
            non_intersective_shift(poly('-n+5'))
        with self.assertRaisesRegex(IntersectivityError, 'Constant'):
            non_intersective_shift(poly('4'))

    def test_combination_sweep(self):
        first, second = (poly(text) for text in JOINT_PAIR)
        report = combination_sweep(first, second, coefficient_bound=2, modulus_bound=200)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.checked), 24)

    def test_shift_sweep_of_four_squares(self):
        variables = ['a', 'b', 'c', 'd']
        p = poly('a^2+b^2+c^2+d^2', variables)
        report = shift_sweep(p, range(-5, 6), 20)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.checked), 11)

    def test_shift_sweep_reports_failures(self):
        report = shift_sweep(poly('n^2'), [0, -2], 10)
        self.assertFalse(report.passed)
        self.assertEqual(report.failures, {'shift -2': 3})

    def test_ideal_element_check(self):
        family = [poly('n^2'), poly('n^3')]
        report = ideal_element_check(family, [[poly('1'), poly('n')], [poly('n+1'), poly('2')]], 50)
        self.assertTrue(report.passed)
        with self.assertRaisesRegex(IntersectivityError, 'not jointly solvable'):
            ideal_element_check([poly('2*n+1')], [[poly('1')]], 10)
        with self.assertRaisesRegex(IntersectivityError, 'entries'):
            ideal_element_check(family, [[poly('1')]], 10)
