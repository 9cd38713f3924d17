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
Module intersectivity
=====================

Bounded and certified (joint) intersectivity.

A family :math:`p_1,\\ldots,p_r` is jointly intersective when for every k a single n makes every
:math:`p_i(n)` divisible by k. By the Chinese remainder theorem it suffices to look at prime powers,
so :func:`jointly_intersective_up_to` scans the prime powers up to a bound in increasing order.
Full intersectivity of a single polynomial is only asserted with a checkable certificate, see
:func:`intersective_decide_1var`.

.. autofunction:: jointly_intersective_up_to
.. autofunction:: intersective_decide_1var
.. autofunction:: reduce_joint_to_gcd
.. autofunction:: multidim_bounded_check
.. autofunction:: non_intersective_shift
.. autofunction:: combination_sweep
.. autofunction:: shift_sweep
.. autofunction:: ideal_element_check
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.ntheory import legendre_symbol, sqrt_mod

from polyrecurrence.certificate import (Certificate, bezout_certificate, bounded_certificate,
                                        counterexample_certificate, quad_residue_certificate,
                                        witness_table_certificate)
from polyrecurrence.exceptions import BudgetExceededError, IntersectivityError
from polyrecurrence.hensel import CertifiedRoot, NoRootUpTo, hensel_root
from polyrecurrence.lattice import AffineLattice, enumerate_subgroups
from polyrecurrence.modular import (ResidueSearch, check_family, prime_powers_up_to, residue_table, solvable_mod)
from polyrecurrence.polynomial import IntPoly, RationalVectorPoly, gcd_bezout_1var, is_integral

logger = logging.getLogger(__name__)

DEFAULT_PRIME_BOUND = 500
DEFAULT_PRECISION = 10
DEFAULT_MODULUS_BOUND = 10 ** 4
QUAD_RESIDUE_PRECISION = 32


@dataclass(frozen=True)
class SolvableAllModuli:
    """ Every prime power up to `bound` admits a common root; witnesses keyed by prime power. """
    bound: int
    witnesses: Dict[int, Tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class Counterexample:
    """ The least prime power modulo which the family has no common root. """
    modulus: int
    certificate: Certificate


JointVerdict = Union[SolvableAllModuli, Counterexample]


class Verdict(str, Enum):
    INTERSECTIVE = 'intersective'
    NOT_INTERSECTIVE = 'not_intersective'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Decision:
    """ Outcome of :func:`intersective_decide_1var`. """
    verdict: Verdict
    modulus: Optional[int] = None
    reason: str = ''


def _counterexample(family: Sequence[IntPoly], modulus: int) -> Counterexample:
    table = residue_table(family, modulus)
    rows = None if table is None else table.rows
    return Counterexample(modulus, counterexample_certificate(family, modulus, rows))


def jointly_intersective_up_to(family: Sequence[IntPoly], bound: int, budget: Optional[int] = None,
                               search: Optional[ResidueSearch] = None) -> JointVerdict:
    """ Check joint solvability modulo every prime power up to `bound`.

    Composite moduli need no separate check: a witness modulo every prime power dividing k combines
    to a witness modulo k by the Chinese remainder theorem.

    :param family: integral polynomials on Z^m.
    :param bound: B >= 2.
    :param budget: residue budget in evaluations, None for the configured default.
    :param search: an existing search whose budget is shared.

    :raises ValueError: when B < 2.
    :raises BudgetExceededError: with the last completely verified bound.
    :return: SolvableAllModuli or the least failing prime power as Counterexample.
    """
    if bound < 2:
        raise ValueError(f'Invalid modulus bound {bound}, expected at least 2')
    check_family(family)
    searcher = search if search is not None else ResidueSearch(family, budget)
    witnesses: Dict[int, Tuple[int, ...]] = {}
    for modulus, prime, exponent in prime_powers_up_to(bound):
        try:
            witness, _ = searcher.prime_power(prime, exponent)
        except BudgetExceededError as err:
            raise BudgetExceededError(f'{err}; verified all prime powers up to {modulus - 1}',
                                      modulus - 1) from err
        if witness is None:
            logger.info('no common root modulo %d', modulus)
            return _counterexample(family, modulus)
        witnesses[modulus] = witness
    return SolvableAllModuli(bound, witnesses)


def _integer_root(p: IntPoly) -> Optional[int]:
    if p.is_constant():
        return None
    roots = [int(root) for root in p.to_sympy().ground_roots() if root.is_integer]
    return min(roots, key=lambda root: (abs(root), root)) if roots else None


def _quadratic_constants(p: IntPoly) -> List[int]:
    """ Positive integers r such that n^2 - r is an irreducible factor of p. """
    _, factors = p.to_sympy().factor_list()
    constants = []
    for factor, _ in factors:
        coefficients = factor.to_field().monic().all_coeffs()
        if len(coefficients) == 3 and coefficients[1] == 0:
            value = -coefficients[2]
            if value.is_integer and value > 0:
                constants.append(int(value))
    return sorted(set(constants))


def _divide(p: IntPoly, divisor: IntPoly) -> IntPoly:
    quotient, remainder = p.to_sympy().div(divisor.to_sympy())
    if not remainder.is_zero:
        raise IntersectivityError(f'{divisor.render()} does not divide {p.render()}')
    return IntPoly.from_sympy(quotient, p.variables)


def _quad_residue_proof(p: IntPoly) -> Optional[Certificate]:
    constants = _quadratic_constants(p)
    n = IntPoly.variable(p.variables[0], p.variables)
    for first, second in itertools.combinations(constants, 2):
        if first * second not in constants:
            continue
        if not (sympy.isprime(first) and sympy.isprime(second) and first % 4 == 1 and second % 4 == 1):
            continue
        if legendre_symbol(first, second) != 1:
            continue
        factor = (n ** 2 - first) * (n ** 2 - second) * (n ** 2 - first * second)
        roots = [hensel_root(factor, prime, QUAD_RESIDUE_PRECISION) for prime in sorted({2, first, second})]
        if not all(isinstance(root, CertifiedRoot) for root in roots):
            logger.warning('quadratic residue pattern %d, %d found but Hensel data incomplete', first, second)
            continue
        square_root = int(sqrt_mod(first, second))
        return quad_residue_certificate(p, factor, _divide(p, factor), first, second, square_root, roots)
    return None


def _failing_power(p: IntPoly, prime: int, start: int, search: ResidueSearch) -> Optional[int]:
    limit = start * max(p.degree(), 1) + 8
    for exponent in range(start, limit + 1):
        if not solvable_mod([p], prime ** exponent, search=search).solvable:
            return prime ** exponent
    return None


def intersective_decide_1var(p: IntPoly, prime_bound: int = DEFAULT_PRIME_BOUND,
                             max_precision: int = DEFAULT_PRECISION,
                             modulus_bound: int = DEFAULT_MODULUS_BOUND,
                             budget: Optional[int] = None) -> Tuple[Decision, Certificate]:
    """ Decide intersectivity of a one-variable integral polynomial where a certificate exists.

    In order: an integer root gives a WitnessTable; a failing prime power up to `modulus_bound`
    gives a CounterexampleModulus; a factor (n^2-a1)(n^2-a2)(n^2-a1*a2) with a1, a2 distinct primes
    that are 1 mod 4 and a1 a square mod a2 gives a QuadResidueProof; otherwise every prime up to
    `prime_bound` is swept with :func:`~polyrecurrence.hensel.hensel_root` on the squarefree part.
    A prime without roots yields a counterexample, anything else ends as Unknown with BoundedOnly
    evidence.

    :param p: nonzero integral polynomial in one variable.
    :param prime_bound: Q, the largest prime swept.
    :param max_precision: e_max for the Hensel sweep.
    :param modulus_bound: B for the prime power scan.
    :param budget: residue budget in evaluations.

    :raises IntersectivityError: for zero, non-integral or multivariate input.
    :return: the decision and its certificate.
    """
    if p.num_vars != 1:
        raise IntersectivityError(f'Expected a polynomial in one variable, got {list(p.variables)}')
    if p.is_zero():
        raise IntersectivityError('The zero polynomial is trivially intersective and not decided here')
    if not is_integral(p):
        raise IntersectivityError(f'Polynomial {p.render()} is not integer-valued')

    root = _integer_root(p)
    if root is not None:
        return Decision(Verdict.INTERSECTIVE, reason=f'integer root {root}'), witness_table_certificate([p], [root])

    search = ResidueSearch([p], budget)
    scan = jointly_intersective_up_to([p], modulus_bound, search=search)
    if isinstance(scan, Counterexample):
        return Decision(Verdict.NOT_INTERSECTIVE, scan.modulus, f'no root modulo {scan.modulus}'), scan.certificate

    if not p.is_constant():
        proof = _quad_residue_proof(p)
        if proof is not None:
            return Decision(Verdict.INTERSECTIVE, reason='quadratic residue pattern'), proof

    squarefree = IntPoly.from_sympy(p.to_sympy().sqf_part(), p.variables)
    cofactor = _divide(p, squarefree)
    certified: List[CertifiedRoot] = []
    inconclusive: List[int] = []
    for prime in sympy.primerange(2, prime_bound + 1):
        result = hensel_root(squarefree, prime, max_precision)
        if isinstance(result, CertifiedRoot):
            certified.append(result)
        elif isinstance(result, NoRootUpTo):
            modulus = _failing_power(p, prime, result.exponent, search)
            if modulus is not None:
                counterexample = _counterexample([p], modulus)
                return (Decision(Verdict.NOT_INTERSECTIVE, modulus, f'no {prime}-adic root'),
                        counterexample.certificate)
            inconclusive.append(prime)
        else:
            inconclusive.append(prime)
    reason = f'certified q-adic roots for all primes up to {prime_bound}'
    if inconclusive:
        reason = f'no certified root for primes {inconclusive}'
    logger.warning('intersectivity of %s left unknown: %s', p.render(), reason)
    certificate = bounded_certificate(p, squarefree, cofactor, prime_bound, max_precision, certified, inconclusive,
                                      modulus_bound, scan.witnesses)
    return Decision(Verdict.UNKNOWN, reason=reason), certificate


@dataclass(frozen=True)
class JointReduction:
    """ The gcd reduction of a one-variable family.

    :param gcd: the monic gcd g.
    :param cofactors: integer-coefficient h_i with sum(h_i p_i) = scale * g.
    :param scale: the Bezout scale d.
    :param quotients: p_i / g.
    :param decision: the decision for the primitive integer form of g.
    :param certificate: the BezoutReduction certificate; its claim is the family verdict.
    :param direct: the direct prime power scan of the family.
    """
    gcd: IntPoly
    cofactors: List[IntPoly]
    scale: int
    quotients: List[IntPoly]
    decision: Decision
    certificate: Certificate
    direct: JointVerdict

    @property
    def family_modulus(self) -> Optional[int]:
        """ A modulus modulo which the family has no common root, preferring the direct scan. """
        if isinstance(self.direct, Counterexample):
            return self.direct.modulus
        return int(self.certificate.payload['modulus']) if 'modulus' in self.certificate.payload else None


def reduce_joint_to_gcd(family: Sequence[IntPoly], prime_bound: int = DEFAULT_PRIME_BOUND,
                        max_precision: int = DEFAULT_PRECISION, modulus_bound: int = DEFAULT_MODULUS_BOUND,
                        budget: Optional[int] = None) -> JointReduction:
    """ Reduce joint intersectivity of a one-variable family to intersectivity of its gcd.

    With sum(h_i p_i) = d*g and g* = c*g primitive, write d/c = a/b in lowest terms. If g* has no
    root modulo k' then the family has no common root modulo a*k'. If g* is intersective then so is
    the family jointly, since every p_i is a multiple of g*.

    :raises PolynomialError: for an all-zero family.
    :return: the reduction with its certificate and a direct bounded scan of the family.
    """
    check_family(family)
    gcd, cofactors, scale = gcd_bezout_1var(family)
    quotients = [_divide(p, gcd) for p in family]
    primitive, gcd_scale = gcd.primitive_integer_form()
    decision, gcd_certificate = intersective_decide_1var(primitive, prime_bound, max_precision, modulus_bound,
                                                         budget)
    certificate = bezout_certificate(family, gcd, cofactors, scale, quotients, primitive, gcd_scale, gcd_certificate)
    direct = jointly_intersective_up_to(family, modulus_bound, budget)
    logger.info('gcd %s of the family decided %s', gcd.render(), decision.verdict.value)
    return JointReduction(gcd, cofactors, scale, quotients, decision, certificate, direct)


@dataclass(frozen=True)
class SubgroupVerdict:
    """ A subgroup of Z^k with the least common witness n, or None when none exists. """
    subgroup: AffineLattice
    witness: Optional[Tuple[int, ...]]


@dataclass
class MultidimReport:
    """ Per-subgroup verdicts of :func:`multidim_bounded_check`. """
    index_bound: int
    verdicts: List[SubgroupVerdict] = field(default_factory=list)

    @property
    def first_failure(self) -> Optional[AffineLattice]:
        for verdict in self.verdicts:
            if verdict.witness is None:
                return verdict.subgroup
        return None

    @property
    def success(self) -> bool:
        return self.first_failure is None


def _vector_in_subgroup(subgroup: AffineLattice, residuals: List[np.ndarray]) -> np.ndarray:
    basis = subgroup.basis
    mask = np.ones(len(residuals[0]), dtype=bool)
    rows = [residual.copy() for residual in residuals]
    for i, _ in enumerate(rows):
        diagonal = basis[i][i]
        mask &= rows[i] % diagonal == 0
        quotient = rows[i] // diagonal
        for row in range(i + 1, len(rows)):
            if basis[row][i]:
                rows[row] = rows[row] - quotient * basis[row][i]
    return mask


def multidim_bounded_check(maps: Sequence[RationalVectorPoly], index_bound: int,
                           budget: Optional[int] = None) -> MultidimReport:
    """ Look for a common n with every map value in Lambda, for every subgroup of index at most I.

    Membership in a subgroup of index N only depends on the value modulo N, and the values modulo N
    only depend on n modulo N*d, with d the denominator scale of all components.

    :param maps: integral polynomial maps Z^m -> Z^k sharing m and k.
    :param index_bound: I.
    :param budget: residue budget in evaluations.

    :raises IntersectivityError: when the maps disagree in m or k or are not integral.
    :raises BudgetExceededError: when the budget is exhausted.
    :return: one verdict per subgroup in enumeration order.
    """
    if not maps:
        raise IntersectivityError('No maps given')
    dimension = maps[0].dimension
    if any(vector.dimension != dimension or vector.variables != maps[0].variables for vector in maps):
        raise IntersectivityError('All maps must share their variables and target dimension')
    components = [component for vector in maps for component in vector.components]
    check_family(components)
    search = ResidueSearch(components, budget)
    scales = search.scales
    denominator = math.lcm(*scales)
    report = MultidimReport(index_bound)
    for subgroup in enumerate_subgroups(dimension, index_bound):
        index = subgroup.index
        period = index * denominator

        def accept(coordinates: List[np.ndarray], subgroup: AffineLattice = subgroup, index: int = index,
                   period: int = period) -> np.ndarray:
            mask = np.ones(len(coordinates[0]), dtype=bool)
            for number in range(len(maps)):
                residuals = []
                for position in range(dimension):
                    flat = number * dimension + position
                    scale = scales[flat]
                    residuals.append((search.values(flat, coordinates, index * scale) // scale) % index)
                mask &= _vector_in_subgroup(subgroup, residuals)
            return mask

        witness = search.scan(period, accept, f'checking subgroups of index {index}')
        if witness is not None:
            for vector in maps:
                value = [int(x) for x in vector.evaluate(witness)]
                if not subgroup.member(value):
                    raise IntersectivityError(f'Witness {witness} failed re-verification for {subgroup!r}')
        else:
            logger.info('no common point in subgroup %r', subgroup)
        report.verdicts.append(SubgroupVerdict(subgroup, witness))
    return report


@dataclass(frozen=True)
class ShiftObstruction:
    """ The shift p - shift has no root modulo `modulus`, found from |p(n0+1) - p(n0)| = modulus. """
    start: int
    modulus: int
    shift: int


def non_intersective_shift(p: IntPoly, search_limit: int = 1000, budget: Optional[int] = None) -> ShiftObstruction:
    """ Find a non-intersective shift of a one-variable integral polynomial.

    With k = |p(n0+1) - p(n0)| >= 2, the residues of p modulo k over one period miss some class
    (p(n0) and p(n0+1) coincide modulo k); any missed class d makes p - d fail modulo k.

    :raises IntersectivityError: for p = +-n + b, all of whose shifts are intersective, or when
        no obstruction is found below `search_limit`.
    """
    if p.num_vars != 1 or not is_integral(p):
        raise IntersectivityError('Expected an integral polynomial in one variable')
    if p.degree() == 1 and abs(p.leading_coefficient()) == 1:
        raise IntersectivityError(f'Every shift of {p.render()} is intersective')
    if p.is_constant():
        raise IntersectivityError('Constant polynomials are shifts of 0')
    for start in range(search_limit):
        modulus = int(abs(p.evaluate([start + 1]) - p.evaluate([start])))
        if modulus < 2:
            continue
        period = modulus * p.denominator()
        image = {int(p.evaluate([n])) % modulus for n in range(period)}
        missing = [residue for residue in range(modulus) if residue not in image]
        if missing:
            shift = missing[0]
            if solvable_mod([p - shift], modulus, budget).solvable:
                raise IntersectivityError(f'Shift {shift} of {p.render()} unexpectedly solvable mod {modulus}')
            return ShiftObstruction(start, modulus, shift)
    raise IntersectivityError(f'No non-intersective shift found for n0 < {search_limit}')


@dataclass
class SweepReport:
    """ Bounded joint-intersectivity outcomes for a batch of derived polynomials. """
    bound: int
    checked: List[str] = field(default_factory=list)
    failures: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


def _sweep(items: Sequence[Tuple[str, List[IntPoly]]], bound: int, budget: Optional[int]) -> SweepReport:
    report = SweepReport(bound)
    cache: Dict[Tuple[IntPoly, ...], Optional[int]] = {}
    for label, family in items:
        if all(p.is_zero() for p in family):
            continue
        key = tuple(sorted(family, key=lambda p: p.render()))
        negated = tuple(sorted((-p for p in family), key=lambda p: p.render()))
        if key in cache or negated in cache:
            outcome = cache.get(key, cache.get(negated))
        else:
            verdict = jointly_intersective_up_to(family, bound, budget)
            outcome = verdict.modulus if isinstance(verdict, Counterexample) else None
            cache[key] = outcome
        report.checked.append(label)
        if outcome is not None:
            report.failures[label] = outcome
    return report


def combination_sweep(first: IntPoly, second: IntPoly, coefficient_bound: int = 5, modulus_bound: int = 1000,
                      budget: Optional[int] = None) -> SweepReport:
    """ Bounded check that every c1*p1 + c2*p2 with |c_i| <= C is solvable modulo all prime powers <= B. """
    items = []
    for c1, c2 in itertools.product(range(-coefficient_bound, coefficient_bound + 1), repeat=2):
        if c1 or c2:
            items.append((f'{c1}*p1 + {c2}*p2', [first * c1 + second * c2]))
    return _sweep(items, modulus_bound, budget)


def shift_sweep(p: IntPoly, shifts: Sequence[int], modulus_bound: int, budget: Optional[int] = None) -> SweepReport:
    """ Bounded check of every shift p + c.

    Checking all prime powers up to B covers every modulus up to B, by the Chinese remainder theorem.
    """
    return _sweep([(f'shift {c}', [p + c]) for c in shifts], modulus_bound, budget)


def ideal_element_check(family: Sequence[IntPoly], multipliers: Sequence[Sequence[IntPoly]], modulus_bound: int,
                        budget: Optional[int] = None) -> SweepReport:
    """ Bounded check that elements sum(h_i p_i) of the ideal of a jointly intersective family are intersective.

    :raises IntersectivityError: when the family itself fails the bounded check.
    """
    base = jointly_intersective_up_to(family, modulus_bound, budget)
    if isinstance(base, Counterexample):
        raise IntersectivityError(f'Family is not jointly solvable modulo {base.modulus}')
    items = []
    for number, multiplier in enumerate(multipliers):
        if len(multiplier) != len(family):
            raise IntersectivityError(f'Multiplier {number} has {len(multiplier)} entries for {len(family)} members')
        element = sum((h * p for h, p in zip(multiplier, family)), IntPoly.constant(0, family[0].variables))
        if not is_integral(element):
            raise IntersectivityError(f'Ideal element {element.render()} is not integer-valued')
        items.append((element.render(), [element]))
    return _sweep(items, modulus_bound, budget)
