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
Module refinement
=================

Refinements of a lattice that keep a polynomial family well behaved.

:func:`divisibility_sublattice` passes from :math:`\\Lambda` to :math:`\\Lambda' = kd\\Lambda + l` on which
every member of a jointly intersective family is divisible by k, with a symbolic proof.
:func:`coset_refine` picks a coset of a given sublattice on which the family stays jointly solvable
modulo every prime power up to a bound.

.. autoclass:: SublatticeProof
   :members:

.. autoclass:: CosetRefinement
   :members:

.. autofunction:: divisibility_sublattice
.. autofunction:: coset_refine
"""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from polyrecurrence.exceptions import IntersectivityError, LatticeError
from polyrecurrence.intersectivity import Counterexample, SolvableAllModuli, jointly_intersective_up_to
from polyrecurrence.lattice import AffineLattice, domain_of, restrict_family
from polyrecurrence.modular import ResidueSearch, check_family
from polyrecurrence.polynomial import IntPoly, denominator_scale, is_integral
from polyrecurrence.settings import load_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SublatticeProof:
    """ A sublattice on which every member of a family is divisible by `modulus`.

    :param lattice: the sublattice kd*Lambda + l.
    :param modulus: k.
    :param scale: the denominator scale d of the family restricted to Lambda.
    :param coordinates: the offset l in the coordinates of Lambda.
    :param quotients: the restricted members divided by k; each one is integer-valued.
    :param verified_bound: the family restricted to the sublattice is jointly solvable modulo every
        prime power up to this bound.
    """
    lattice: AffineLattice
    modulus: int
    scale: int
    coordinates: Tuple[int, ...]
    quotients: List[IntPoly]
    verified_bound: int

    def to_dict(self) -> Dict[str, Any]:
        return {'lattice': self.lattice.to_dict(),
                'modulus': str(self.modulus),
                'scale': str(self.scale),
                'coordinates': [str(value) for value in self.coordinates],
                'quotients': [quotient.render() for quotient in self.quotients],
                'verified_bound': str(self.verified_bound)}


def _divisibility_targets(search: ResidueSearch, modulus: int) -> List[int]:
    # q_i = 0 mod k  <=>  s_i q_i = 0 mod k s_i
    return [modulus * scale for scale in search.scales]


def divisibility_sublattice(family: Sequence[IntPoly], modulus: int, search_bound: int,
                            lattice: Optional[AffineLattice] = None,
                            budget: Optional[int] = None) -> SublatticeProof:
    """ Sublattice kd*Lambda + l on which all members of the family are divisible by k.

    Offsets are tried in lexicographic order of their coordinates in :math:`[0, kd)^m`. An offset is
    accepted when the restricted members are divisible by k (proved symbolically with
    :func:`~polyrecurrence.polynomial.is_integral` of the quotients) and the restricted family is
    jointly solvable modulo every prime power up to `search_bound`.

    :param family: polynomials integral on `lattice`, jointly solvable modulo k.
    :param modulus: k >= 1.
    :param search_bound: bound of the joint solvability check on the sublattice.
    :param lattice: Lambda, defaults to the declared domain of the family.
    :param budget: residue budget in evaluations.

    :raises ValueError: when k < 1.
    :raises IntersectivityError: when no offset makes all members divisible by k, which contradicts
        joint solvability modulo k, or when no such offset passes the bounded check.
    :return: the sublattice with its proof data.
    """
    if modulus < 1:
        raise ValueError(f'Invalid modulus {modulus}, expected a positive integer')
    outer = lattice if lattice is not None else domain_of(family)
    restricted = restrict_family(family, outer, outer)
    check_family(restricted)
    scale = denominator_scale(restricted)
    period = modulus * scale
    search = ResidueSearch(restricted, budget)
    targets = _divisibility_targets(search, modulus)
    shape = (period,) * outer.dimension
    failures: Dict[Tuple[int, ...], int] = {}
    start = 0
    while True:
        offset = search.search(period, targets, start)
        if offset is None:
            break
        start = int(np.ravel_multi_index(offset, shape)) + 1
        sub = outer.sublattice(period, offset)
        members = restrict_family(family, sub, outer)
        quotients = [member / modulus for member in members]
        if not all(is_integral(quotient) for quotient in quotients):
            raise IntersectivityError(f'Divisibility by {modulus} on {sub!r} failed the symbolic check')
        verdict = jointly_intersective_up_to(members, search_bound, budget)
        if isinstance(verdict, SolvableAllModuli):
            logger.info('divisibility sublattice %r for k=%d', sub, modulus)
            return SublatticeProof(sub, modulus, scale, offset, quotients, search_bound)
        failures[offset] = verdict.modulus
        logger.debug('offset %s rejected, no common root modulo %d', offset, verdict.modulus)
    if not failures:
        raise IntersectivityError(f'Inconsistent input: the family has no common root modulo {modulus}')
    raise IntersectivityError(f'No offset modulo {period} keeps the family jointly solvable up to {search_bound}; '
                              f'failing moduli by offset: {failures}')


@dataclass(frozen=True)
class CosetRefinement:
    """ The chosen coset Lambda' + l with the bounded verdict and the rejected representatives. """
    lattice: AffineLattice
    offset: Tuple[int, ...]
    verdict: SolvableAllModuli
    rejected: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'lattice': self.lattice.to_dict(),
                'offset': [str(value) for value in self.offset],
                'verified_bound': str(self.verdict.bound),
                'rejected': [[[str(value) for value in representative], str(modulus)]
                             for representative, modulus in sorted(self.rejected.items())]}


def coset_refine(family: Sequence[IntPoly], lattice: AffineLattice, sub: AffineLattice,
                 verify_bound: Optional[int] = None, budget: Optional[int] = None) -> CosetRefinement:
    """ The first coset of `sub` in `lattice` on which the family stays jointly solvable up to B.

    Cosets are visited in lexicographic order of their reduced representatives.

    :param family: polynomials integral on `lattice`.
    :param lattice: Lambda.
    :param sub: a lattice whose subgroup is contained in the subgroup of Lambda.
    :param verify_bound: B, defaults to the configured coset verify bound.
    :param budget: residue budget in evaluations.

    :raises LatticeError: when `sub` is not a sublattice, or no coset passes at bound B; the message
        lists the least failing prime power for every representative.
    """
    bound = int(load_settings()['coset_verify_bound']) if verify_bound is None else verify_bound
    rejected: Dict[Tuple[int, ...], int] = {}
    for representative in lattice.cosets_of(sub):
        coset = AffineLattice(sub.basis, representative)
        verdict = jointly_intersective_up_to(restrict_family(family, coset, lattice), bound, budget)
        if isinstance(verdict, Counterexample):
            rejected[tuple(representative)] = verdict.modulus
            continue
        logger.info('coset %s of %r selected at bound %d', representative, sub, bound)
        return CosetRefinement(coset, tuple(representative), verdict, rejected)
    raise LatticeError(f'No coset of {sub!r} keeps the family jointly solvable up to {bound}; '
                       f'failing moduli by representative: {rejected}. Raise the bound.')
