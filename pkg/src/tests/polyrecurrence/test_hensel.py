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
from unittest import TestCase

import sympy

from polyrecurrence.exceptions import PolynomialError
from polyrecurrence.hensel import CertifiedRoot, Inconclusive, NoRootUpTo, check_hensel_condition, hensel_root
from polyrecurrence.poly_parser import parse_poly


def poly(text, variables=('n',)):
    return parse_poly(text, variables)


class TestHenselRoot(TestCase):

    def test_simple_root(self):
        self.assertEqual(hensel_root(poly('n^2-5'), 11, 10), CertifiedRoot(11, 4, 0))
        self.assertEqual(hensel_root(poly('n^2-2'), 7, 10), CertifiedRoot(7, 3, 0))

    def test_no_root(self):
        self.assertEqual(hensel_root(poly('n^2-5'), 3, 10), NoRootUpTo(3, 1))
        self.assertEqual(hensel_root(poly('n^2-2'), 3, 10), NoRootUpTo(3, 1))

    def test_no_root_after_lifting(self):
        self.assertEqual(hensel_root(poly('n^2-2'), 2, 10), NoRootUpTo(2, 2))

    def test_linear(self):
        for prime in (2, 3, 5, 7, 97):
            with self.subTest(prime=prime):
                self.assertEqual(hensel_root(poly('n-7'), prime, 4), CertifiedRoot(prime, 7 % prime, 0))

    def test_ramified_root_needs_precision(self):
        result = hensel_root(poly('n^2-17'), 2, 10)
        self.assertEqual(result, CertifiedRoot(2, 1, 1))
        self.assertTrue(check_hensel_condition(poly('n^2-17'), 2, 1, 1))

    def test_inconclusive(self):
        self.assertEqual(hensel_root(poly('n^2'), 2, 3), Inconclusive(2, 3, 2))

    def test_denominators_are_cleared(self):
        self.assertEqual(hensel_root(poly('n^2/2 - 5/2'), 11, 5), CertifiedRoot(11, 4, 0))

    def test_invalid_arguments(self):
        with self.assertRaisesRegex(ValueError, 'is not a prime'):
            hensel_root(poly('n'), 4, 3)
        with self.assertRaisesRegex(ValueError, 'Invalid precision'):
            hensel_root(poly('n'), 3, 0)
        with self.assertRaisesRegex(PolynomialError, 'zero polynomial'):
            hensel_root(poly('0'), 3, 3)
        with self.assertRaisesRegex(PolynomialError, 'one variable'):
            hensel_root(poly('n*m', ['n', 'm']), 3, 3)

    def test_intersective_quintic_has_roots_everywhere(self):
        p = poly('(n^3-19)*(n^2+n+1)')
        for prime in sympy.primerange(2, 501):
            with self.subTest(prime=prime):
                self.assertNotIsInstance(hensel_root(p, prime, 10), NoRootUpTo)


class TestHenselCondition(TestCase):

    def test_condition(self):
        self.assertTrue(check_hensel_condition(poly('n^2-5'), 11, 4, 0))
        self.assertFalse(check_hensel_condition(poly('n^2-5'), 11, 3, 0))
        self.assertFalse(check_hensel_condition(poly('n^2-17'), 2, 1, 0))
        self.assertFalse(check_hensel_condition(poly('n^2-5'), 11, 4, -1))

    def test_dict_round_trip(self):
        root = CertifiedRoot(41, 13, 0)
        self.assertEqual(CertifiedRoot.from_dict(root.to_dict()), root)
