# Polyrecurrence
#
# Copyright 2026 The Polyrecurrence Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Module hensel
=============

Certified q-adic roots of one-variable integer polynomials.

If :math:`P(a) \\equiv 0 \\pmod{q^{2t+1}}` and :math:`v_q(P'(a)) \\le t`, Hensel's lemma lifts
:math:`a` to a root of :math:`P` in the q-adic integers, so :math:`P(n) \\equiv 0 \\pmod{q^e}` is
solvable for every e. :func:`hensel_root` walks the tree of roots modulo :math:`q, q^2, \\ldots`
until such a root shows up, the tree dies out, or the precision cap is reached.

.. autoclass:: CertifiedRoot
.. autoclass:: NoRootUpTo
.. autoclass:: Inconclusive
.. autofunction:: hensel_root
.. autofunction:: check_hensel_condition
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import List, Sequence, Union

import sympy

from polyrecurrence.exceptions import PolynomialError
from polyrecurrence.polynomial import IntPoly

logger = logging.getLogger(__name__)

DEFAULT_TREE_LIMIT = 100_000


@dataclass(frozen=True)
class CertifiedRoot:
    """ A residue a mod q^(2t+1) whose q-adic lift is guaranteed by Hensel's lemma. """
    prime: int
    root: int
    precision: int

    def to_dict(self) -> dict:
        return {'prime': str(self.prime), 'root': str(self.root), 'precision': str(self.precision)}

    @classmethod
    def from_dict(cls, data: dict) -> CertifiedRoot:
        return cls(int(data['prime']), int(data['root']), int(data['precision']))


@dataclass(frozen=True)
class NoRootUpTo:
    """ No root exists modulo q^exponent; exhaustive over the lifting tree. """
    prime: int
    exponent: int


@dataclass(frozen=True)
class Inconclusive:
    """ Roots survive modulo q^exponent but none satisfies the Hensel condition yet. """
    prime: int
    exponent: int
    surviving: int


HenselResult = Union[CertifiedRoot, NoRootUpTo, Inconclusive]


def _coefficients(p: IntPoly) -> List[int]:
    if p.num_vars != 1:
        raise PolynomialError(f'Hensel lifting needs a polynomial in one variable, got {list(p.variables)}')
    if p.is_zero():
        raise PolynomialError('Hensel lifting of the zero polynomial')
    scale = p.denominator()
    return [int(c * scale) for c in p.univariate_coefficients()]


def _evaluate(coefficients: Sequence[int], point: int) -> int:
    value = 0
    for coefficient in reversed(coefficients):
        value = value * point + coefficient
    return value


def _derivative(coefficients: Sequence[int]) -> List[int]:
    return [power * c for power, c in enumerate(coefficients)][1:] or [0]


def _valuation_below(value: int, prime: int, cap: int) -> int:
    """ min(v_q(value), cap). """
    count = 0
    while count < cap and value % prime == 0:
        value //= prime
        count += 1
    return count


def check_hensel_condition(p: IntPoly, prime: int, root: int, precision: int) -> bool:
    """ Exact check of P(a) = 0 mod q^(2t+1) and v_q(P'(a)) <= t for the integer form P of p. """
    if precision < 0:
        return False
    coefficients = _coefficients(p)
    if _evaluate(coefficients, root) % prime ** (2 * precision + 1):
        return False
    return _evaluate(_derivative(coefficients), root) % prime ** (precision + 1) != 0


def hensel_root(p: IntPoly, prime: int, max_precision: int, tree_limit: int = DEFAULT_TREE_LIMIT) -> HenselResult:
    """ Look for a certified q-adic root of p.

    Denominators are cleared first; the q-adic roots of p and of its integer form coincide.

    :param p: nonzero one-variable polynomial.
    :param prime: the prime q.
    :param max_precision: largest exponent e of the moduli q^e explored.
    :param tree_limit: cap on the number of residues kept per level of the lifting tree.

    :raises ValueError: when q is not prime or the precision is not positive.
    :return: CertifiedRoot, NoRootUpTo or Inconclusive.
    """
    if not sympy.isprime(prime):
        raise ValueError(f'{prime} is not a prime')
    if max_precision < 1:
        raise ValueError(f'Invalid precision {max_precision}')
    coefficients = _coefficients(p)
    derivative = _derivative(coefficients)

    modulus = prime
    roots = [a for a in range(prime) if _evaluate(coefficients, a) % prime == 0]
    exponent = 1
    while True:
        if not roots:
            return NoRootUpTo(prime, exponent)
        for root in roots:
            slope = _valuation_below(_evaluate(derivative, root), prime, exponent)
            if 2 * slope + 1 <= exponent:
                certified = root % prime ** (2 * slope + 1)
                logger.debug('certified root %d of precision %d modulo %d', certified, slope, prime)
                return CertifiedRoot(prime, certified, slope)
        if exponent >= max_precision:
            return Inconclusive(prime, exponent, len(roots))
        next_modulus = modulus * prime
        lifted = [root + step * modulus for root in roots for step in range(prime)
                  if _evaluate(coefficients, root + step * modulus) % next_modulus == 0]
        if len(lifted) > tree_limit:
            logger.warning('lifting tree modulo %d^%d exceeds %d residues', prime, exponent + 1, tree_limit)
            return Inconclusive(prime, exponent + 1, len(lifted))
        roots, modulus, exponent = sorted(lifted), next_modulus, exponent + 1
