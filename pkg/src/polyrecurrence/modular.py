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
Module modular
==============

Solvability of integral polynomial families modulo k.

A polynomial :math:`p` with denominator scale :math:`d` (so :math:`P = dp` has integer coefficients)
satisfies :math:`p(n) \\equiv 0 \\pmod{q^e}` exactly when :math:`P(n) \\equiv 0 \\pmod{q^{e + v_q(d)}}`,
and :math:`P \\bmod M` only depends on :math:`n \\bmod M`. A prime power is therefore decided by an
exhaustive search over :math:`[0, q^{e+v})^m`; witnesses for the prime powers of k are glued by the
Chinese remainder theorem. The search is vectorized with :mod:`numpy` and scans residues in
lexicographic order, so the returned witness is the lexicographically least one.

.. autoclass:: ModSolvability
   :members:

.. autoclass:: ResidueSearch
   :members:

.. autofunction:: solvable_mod
.. autofunction:: prime_powers_up_to
.. autofunction:: crt_combine
"""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.ntheory.modular import crt

from polyrecurrence.exceptions import BudgetExceededError, IntersectivityError
from polyrecurrence.polynomial import IntPoly, is_integral
from polyrecurrence.settings import load_settings

logger = logging.getLogger(__name__)

# largest modulus for which products of two residues fit in int64
_INT64_SAFE_MODULUS = 3_037_000_499
_FIRST_CHUNK = 1024
_MAX_CHUNK = 1 << 20


@dataclass(frozen=True)
class ModSolvability:
    """ Outcome of a solvability search modulo k.

    :param modulus: the modulus k.
    :param witness: a residue vector at which every member vanishes mod k, or None.
    :param exhaustive: True when the search covered every residue (directly or by CRT composition).
    :param period: the witness is meaningful modulo this number.
    :param evaluations: number of polynomial evaluations spent.
    """
    modulus: int
    witness: Optional[Tuple[int, ...]]
    exhaustive: bool = True
    period: int = 1
    evaluations: int = 0

    @property
    def solvable(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> Dict[str, Any]:
        return {'modulus': str(self.modulus),
                'witness': None if self.witness is None else [str(value) for value in self.witness],
                'exhaustive': self.exhaustive,
                'period': str(self.period)}


def default_budget() -> int:
    """ The residue budget from the settings. """
    return int(load_settings()['residue_budget'])


def prime_powers_up_to(bound: int) -> List[Tuple[int, int, int]]:
    """ All prime powers q^e <= bound in increasing order.

    :return: a list of triples (q^e, q, e).
    """
    powers = []
    for prime in sympy.primerange(2, bound + 1):
        value, exponent = prime, 1
        while value <= bound:
            powers.append((value, prime, exponent))
            value *= prime
            exponent += 1
    return sorted(powers)


def valuation(value: int, prime: int) -> int:
    """ The prime-adic valuation of a nonzero integer. """
    if value == 0:
        raise ValueError('The valuation of 0 is infinite')
    return int(sympy.multiplicity(prime, value))


def crt_combine(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """ The least nonnegative x with x = r_i mod m_i for pairwise coprime moduli. """
    if not moduli:
        return 0
    result = crt(list(moduli), list(residues), check=True)
    if result is None:
        raise IntersectivityError(f'Incompatible congruences {list(residues)} mod {list(moduli)}')
    return int(result[0])


class _CompiledPoly:
    """ An integer-coefficient polynomial prepared for vectorized evaluation. """

    def __init__(self, p: IntPoly) -> None:
        self.scale, terms = p.integer_coefficients()
        self.terms = list(terms.items())
        self.degrees = p.degrees()


class ResidueSearch:
    """ Exhaustive lexicographic search for common residues of a family.

    The condition searched is :math:`P_i(n) \\equiv 0 \\pmod{t_i}` for all i, over
    :math:`n \\in [0, M)^m`, where :math:`P_i` is the integer form of member i, and every target
    :math:`t_i` divides M.

    :param family: the polynomials, sharing their variables.
    :param budget: maximal number of polynomial evaluations; None for the configured default.
    """

    def __init__(self, family: Sequence[IntPoly], budget: Optional[int] = None) -> None:
        if not family:
            raise IntersectivityError('Empty polynomial family')
        self._compiled = [_CompiledPoly(p) for p in family]
        self._num_vars = family[0].num_vars
        self.budget = default_budget() if budget is None else budget
        self.evaluations = 0

    @property
    def scales(self) -> List[int]:
        return [compiled.scale for compiled in self._compiled]

    def _charge(self, count: int, description: str) -> None:
        if self.evaluations + count > self.budget:
            raise BudgetExceededError(f'Residue budget of {self.budget} evaluations exceeded while {description}')
        self.evaluations += count

    def values(self, index: int, coordinates: List[np.ndarray], modulus: int) -> np.ndarray:
        """ Values of the integer form of member `index` at the given points, reduced mod `modulus`. """
        compiled = self._compiled[index]
        dtype: Any = np.int64 if modulus <= _INT64_SAFE_MODULUS else object
        size = len(coordinates[0])
        powers = []
        for variable, column in enumerate(coordinates):
            table = [np.ones(size, dtype=dtype)]
            base = column.astype(dtype) % modulus
            for _ in range(compiled.degrees[variable]):
                table.append((table[-1] * base) % modulus)
            powers.append(table)
        total = np.zeros(size, dtype=dtype)
        for exponent, coefficient in compiled.terms:
            term = np.full(size, coefficient % modulus, dtype=dtype)
            for variable, power in enumerate(exponent):
                if power:
                    term = (term * powers[variable][power]) % modulus
            total = (total + term) % modulus
        return total

    def scan(self, period: int, accept: Callable[[List[np.ndarray]], np.ndarray],
             description: str, start: int = 0) -> Optional[Tuple[int, ...]]:
        """ Lexicographically least n in [0, period)^m accepted by a vectorized predicate.

        :param period: side length of the residue box.
        :param accept: maps coordinate columns of a chunk of points to a boolean mask.
        :param description: used in the budget error message.
        :param start: flat lexicographic position where the scan begins.

        :raises BudgetExceededError: when the scan would exceed the evaluation budget.
        """
        shape = (period,) * self._num_vars
        total = period ** self._num_vars
        if total >= 2 ** 62:
            raise BudgetExceededError(f'Residue box of size {total} modulo {period} cannot be searched')
        chunk = _FIRST_CHUNK
        while start < total:
            stop = min(total, start + chunk)
            self._charge((stop - start) * len(self._compiled), description)
            flat = np.arange(start, stop, dtype=np.int64)
            coordinates = list(np.unravel_index(flat, shape)) if self._num_vars > 1 else [flat]
            hits = np.flatnonzero(accept(coordinates))
            if hits.size:
                position = int(hits[0])
                return tuple(int(column[position]) for column in coordinates)
            start = stop
            chunk = min(chunk * 2, _MAX_CHUNK)
        return None

    def search(self, period: int, targets: Sequence[int], start: int = 0) -> Optional[Tuple[int, ...]]:
        """ Lexicographically least n in [0, period)^m with P_i(n) = 0 mod targets[i] for all i.

        Points before the flat position `start` are skipped.
        """
        def accept(coordinates: List[np.ndarray]) -> np.ndarray:
            mask = np.ones(len(coordinates[0]), dtype=bool)
            for index, target in enumerate(targets):
                mask &= (self.values(index, coordinates, period) % target) == 0
                if not mask.any():
                    break
            return mask

        return self.scan(period, accept, f'searching residues modulo {period}', start)

    def prime_power(self, prime: int, exponent: int) -> Tuple[Optional[Tuple[int, ...]], int]:
        """ Search modulo q^e, taking denominators into account.

        :return: the pair (witness or None, period of the witness).
        """
        shifts = [valuation(scale, prime) for scale in self.scales]
        period = prime ** (exponent + max(shifts))
        targets = [prime ** (exponent + shift) for shift in shifts]
        return self.search(period, targets), period


def check_family(family: Sequence[IntPoly]) -> None:
    """ Validate that a family is nonempty, shares its variables and is integral. """
    if not family:
        raise IntersectivityError('Empty polynomial family')
    variables = family[0].variables
    for p in family:
        if p.variables != variables:
            raise IntersectivityError('All polynomials of the family must share their variables')
        if not is_integral(p):
            raise IntersectivityError(f'Polynomial {p.render()} is not integer-valued')


def verify_witness(family: Sequence[IntPoly], witness: Sequence[int], modulus: int) -> bool:
    """ Exact re-check of a witness by direct evaluation. """
    for p in family:
        value = p.evaluate(witness)
        if value.denominator != 1 or value.numerator % modulus:
            return False
    return True


def solvable_mod(family: Sequence[IntPoly], modulus: int, budget: Optional[int] = None,
                 search: Optional[ResidueSearch] = None) -> ModSolvability:
    """ Decide whether some n makes every member of the family divisible by `modulus`.

    The modulus is split into prime powers, each is searched exhaustively and the witnesses are
    recombined coordinate-wise by CRT. The combined witness is re-verified by exact evaluation.

    :param family: integral polynomials on Z^m.
    :param modulus: k >= 1.
    :param budget: residue budget in evaluations, None for the configured default.
    :param search: an existing search object whose budget is shared.

    :raises ValueError: when k < 1.
    :raises BudgetExceededError: when the budget is exhausted.
    :return: the solvability outcome.
    """
    if modulus < 1:
        raise ValueError(f'Invalid modulus {modulus}, expected a positive integer')
    check_family(family)
    searcher = search if search is not None else ResidueSearch(family, budget)
    start = searcher.evaluations
    num_vars = family[0].num_vars
    residues: List[Tuple[int, ...]] = []
    periods: List[int] = []
    for prime, exponent in sorted(sympy.factorint(modulus).items()):
        witness, period = searcher.prime_power(prime, exponent)
        if witness is None:
            logger.debug('no solution modulo %d^%d', prime, exponent)
            return ModSolvability(modulus, None, True, 1, searcher.evaluations - start)
        residues.append(witness)
        periods.append(period)
    combined = tuple(crt_combine([witness[i] for witness in residues], periods) for i in range(num_vars))
    if not verify_witness(family, combined, modulus):
        raise IntersectivityError(f'Witness {combined} failed re-verification modulo {modulus}')
    return ModSolvability(modulus, combined, True, math.prod(periods), searcher.evaluations - start)


def witness_period(family: Sequence[IntPoly], modulus: int) -> int:
    """ A period T such that every p(n) mod k only depends on n mod T: k times the denominator scale. """
    return modulus * math.lcm(*(p.denominator() for p in family))


@dataclass
class ResidueTable:
    """ Values of every member modulo k over the box [0, period)^m, in lexicographic point order. """
    modulus: int
    period: int
    rows: List[List[int]] = field(default_factory=list)


def residue_table(family: Sequence[IntPoly], modulus: int, max_points: int = 100_000) -> Optional[ResidueTable]:
    """ Exact residue table of the family over one period, None when it has more than `max_points` rows. """
    period = witness_period(family, modulus)
    num_vars = family[0].num_vars
    if period ** num_vars > max_points:
        return None
    table = ResidueTable(modulus, period)
    for index in range(period ** num_vars):
        point = np.unravel_index(index, (period,) * num_vars)
        values = []
        for p in family:
            value = p.evaluate([int(x) for x in point])
            values.append(int(value) % modulus)
        table.rows.append(values)
    return table
