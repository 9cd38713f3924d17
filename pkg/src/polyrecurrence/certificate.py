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
Module certificate
==================

Machine-checkable evidence for intersectivity verdicts.

A certificate names the polynomials it speaks about, the claim it supports and a kind-specific
payload of exact data (integers as decimal strings, rationals as 'a/b'). Its SHA-256 digest over
the canonical JSON form protects the content; :func:`check_certificate` then re-verifies the
mathematics with direct evaluation and modular arithmetic only. The search that produced a
certificate is never re-run.

.. autoclass:: CertificateKind
.. autoclass:: Certificate
   :members:

.. autofunction:: check_certificate
.. autofunction:: verify_certificate
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import hashlib
import itertools
import json
from typing import Any, Dict, List, Sequence, Union

import sympy

from polyrecurrence.exceptions import CertificateError, PolynomialError
from polyrecurrence.hensel import CertifiedRoot, check_hensel_condition
from polyrecurrence.modular import prime_powers_up_to, verify_witness, witness_period
from polyrecurrence.poly_parser import parse_poly
from polyrecurrence.polynomial import IntPoly, as_fraction, is_integral

MAX_TABLE_POINTS = 1_000_000

INTERSECTIVE = 'intersective'
NOT_INTERSECTIVE = 'not_intersective'
JOINTLY_INTERSECTIVE = 'jointly_intersective'
NOT_JOINTLY_INTERSECTIVE = 'not_jointly_intersective'
Q_ADIC_ROOT = 'q_adic_root'
BOUNDED = 'bounded'


class CertificateKind(str, Enum):
    """ The kinds of evidence a certificate can carry. """
    WITNESS_TABLE = 'WitnessTable'
    HENSEL_PROOF = 'HenselProof'
    QUAD_RESIDUE_PROOF = 'QuadResidueProof'
    BEZOUT_REDUCTION = 'BezoutReduction'
    COUNTEREXAMPLE_MODULUS = 'CounterexampleModulus'
    BOUNDED_ONLY = 'BoundedOnly'


@dataclass
class Certificate:
    """ Evidence for a claim about a family of polynomials.

    :param kind: the kind of evidence.
    :param claim: what is certified, for example ``'intersective'``.
    :param polynomials: the family, rendered in the polynomial input language.
    :param variables: the variable names.
    :param payload: kind-specific exact data.
    """
    kind: CertificateKind
    claim: str
    polynomials: List[str]
    variables: List[str]
    payload: Dict[str, Any] = field(default_factory=dict)

    def body(self) -> Dict[str, Any]:
        return {'kind': self.kind.value, 'claim': self.claim, 'polynomials': list(self.polynomials),
                'variables': list(self.variables), 'payload': self.payload}

    def canonical(self) -> str:
        """ Canonical JSON text of the certificate content. """
        return json.dumps(self.body(), sort_keys=True, separators=(',', ':'))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode('utf-8')).hexdigest()

    @property
    def modulus(self) -> int:
        """ The failing modulus of a negative claim. """
        if 'modulus' not in self.payload:
            raise CertificateError(f'{self.kind.value} certificate carries no modulus')
        return int(self.payload['modulus'])

    def family(self) -> List[IntPoly]:
        """ The polynomials, parsed. """
        try:
            return [parse_poly(text, self.variables) for text in self.polynomials]
        except PolynomialError as err:
            raise CertificateError(f'Invalid polynomial in certificate: {err}') from err

    def to_dict(self) -> Dict[str, Any]:
        data = self.body()
        data['digest'] = self.digest
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], check_digest: bool = True) -> Certificate:
        """ Rebuild a certificate, verifying its digest.

        :raises CertificateError: on malformed data or a digest mismatch.
        """
        try:
            certificate = cls(CertificateKind(data['kind']), str(data['claim']), list(data['polynomials']),
                              list(data['variables']), dict(data['payload']))
        except (KeyError, TypeError, ValueError) as err:
            raise CertificateError(f'Malformed certificate: {err}') from err
        if check_digest and data.get('digest') != certificate.digest:
            raise CertificateError('Certificate digest does not match its content')
        return certificate

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        try:
            data = json.loads(text)
        except ValueError as err:
            raise CertificateError(f'Certificate is not valid JSON: {err}') from err
        if not isinstance(data, dict):
            raise CertificateError('Certificate JSON must be an object')
        return cls.from_dict(data)


def _render_all(family: Sequence[IntPoly]) -> List[str]:
    return [p.render() for p in family]


def witness_table_certificate(family: Sequence[IntPoly], root: Sequence[int]) -> Certificate:
    """ A common integer root: every member is divisible by every k there. """
    claim = INTERSECTIVE if len(family) == 1 else JOINTLY_INTERSECTIVE
    return Certificate(CertificateKind.WITNESS_TABLE, claim, _render_all(family), list(family[0].variables),
                       {'root': [str(value) for value in root]})


def hensel_certificate(p: IntPoly, root: CertifiedRoot) -> Certificate:
    return Certificate(CertificateKind.HENSEL_PROOF, Q_ADIC_ROOT, [p.render()], list(p.variables), root.to_dict())


def quad_residue_certificate(p: IntPoly, factor: IntPoly, cofactor: IntPoly, first: int, second: int,
                             square_root: int, roots: Sequence[CertifiedRoot]) -> Certificate:
    """ Certificate for a multiple of (n^2-a1)(n^2-a2)(n^2-a1*a2). """
    payload = {'a1': str(first), 'a2': str(second), 'sqrt_a1_mod_a2': str(square_root),
               'factor': factor.render(), 'cofactor': cofactor.render(),
               'hensel': [root.to_dict() for root in roots]}
    return Certificate(CertificateKind.QUAD_RESIDUE_PROOF, INTERSECTIVE, [p.render()], list(p.variables), payload)


def counterexample_certificate(family: Sequence[IntPoly], modulus: int,
                               rows: Union[List[List[int]], None] = None) -> Certificate:
    """ No n makes every member divisible by `modulus`. """
    claim = NOT_INTERSECTIVE if len(family) == 1 else NOT_JOINTLY_INTERSECTIVE
    payload: Dict[str, Any] = {'modulus': str(modulus), 'period': str(witness_period(family, modulus))}
    if rows is not None:
        payload['table'] = [[str(value) for value in row] for row in rows]
    return Certificate(CertificateKind.COUNTEREXAMPLE_MODULUS, claim, _render_all(family), list(family[0].variables),
                       payload)


def bounded_certificate(p: IntPoly, squarefree: IntPoly, cofactor: IntPoly, prime_bound: int, precision: int,
                        roots: Sequence[CertifiedRoot], inconclusive: Sequence[int], modulus_bound: int,
                        witnesses: Dict[int, Sequence[int]]) -> Certificate:
    """ Everything that was verified for a polynomial whose full verdict is unknown. """
    payload = {'prime_bound': str(prime_bound), 'precision': str(precision),
               'squarefree': squarefree.render(), 'cofactor': cofactor.render(),
               'hensel': [root.to_dict() for root in roots],
               'inconclusive': [str(prime) for prime in inconclusive],
               'modulus_bound': str(modulus_bound),
               'witnesses': [[str(k), [str(x) for x in witnesses[k]]] for k in sorted(witnesses)]}
    return Certificate(CertificateKind.BOUNDED_ONLY, BOUNDED, [p.render()], list(p.variables), payload)


def translated_modulus_factor(scale: int, gcd_scale: Fraction) -> int:
    """ The factor a with: primitive gcd fails mod k' implies the family fails mod a*k'.

    Writing the Bezout identity as sum(h_i p_i) = (d/c) g* with g* = c g primitive,
    a is the numerator of |d/c| in lowest terms.
    """
    return abs(Fraction(scale) / gcd_scale).numerator


def bezout_certificate(family: Sequence[IntPoly], gcd: IntPoly, cofactors: Sequence[IntPoly], scale: int,
                       quotients: Sequence[IntPoly], primitive: IntPoly, gcd_scale: Fraction,
                       gcd_certificate: Certificate) -> Certificate:
    """ Reduction of a family to its gcd together with the gcd's own certificate. """
    nested = gcd_certificate.claim
    payload: Dict[str, Any] = {'gcd': gcd.render(), 'cofactors': _render_all(cofactors), 'scale': str(scale),
                               'quotients': _render_all(quotients), 'primitive_gcd': primitive.render(),
                               'gcd_scale': f'{gcd_scale.numerator}/{gcd_scale.denominator}',
                               'gcd_certificate': gcd_certificate.to_dict()}
    if nested == NOT_INTERSECTIVE:
        claim = NOT_JOINTLY_INTERSECTIVE
        payload['modulus'] = str(translated_modulus_factor(scale, gcd_scale) * gcd_certificate.modulus)
    elif nested == INTERSECTIVE:
        claim = JOINTLY_INTERSECTIVE
    else:
        claim = BOUNDED
    return Certificate(CertificateKind.BEZOUT_REDUCTION, claim, _render_all(family), list(family[0].variables),
                       payload)


def _integer(payload: Dict[str, Any], key: str) -> int:
    try:
        return int(payload[key])
    except (KeyError, TypeError, ValueError) as err:
        raise CertificateError(f'Payload entry {key!r} is missing or not an integer') from err


def _poly(text: Any, variables: Sequence[str]) -> IntPoly:
    try:
        return parse_poly(str(text), variables)
    except PolynomialError as err:
        raise CertificateError(f'Invalid polynomial {text!r} in payload: {err}') from err


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def _check_roots(target: IntPoly, entries: Any, primes: Sequence[int]) -> None:
    _require(isinstance(entries, list), 'Hensel data must be a list')
    try:
        roots = [CertifiedRoot.from_dict(entry) for entry in entries]
    except (KeyError, TypeError, ValueError) as err:
        raise CertificateError(f'Malformed Hensel entry: {err}') from err
    _require([root.prime for root in roots] == list(primes),
             f'Hensel data covers primes {[root.prime for root in roots]}, expected {list(primes)}')
    for root in roots:
        _require(check_hensel_condition(target, root.prime, root.root, root.precision),
                 f'Hensel condition fails for root {root.root} modulo {root.prime}')


def _check_witness_table(certificate: Certificate, family: List[IntPoly]) -> None:
    root = certificate.payload.get('root')
    _require(isinstance(root, list) and len(root) == len(certificate.variables), 'Root has the wrong dimension')
    try:
        point = [int(value) for value in root]
    except (TypeError, ValueError) as err:
        raise CertificateError('Root coordinates must be integers') from err
    _require(all(is_integral(p) for p in family), 'Family is not integer-valued')
    _require(all(p.evaluate(point) == 0 for p in family), f'Point {point} is not a common root')
    expected = INTERSECTIVE if len(family) == 1 else JOINTLY_INTERSECTIVE
    _require(certificate.claim == expected, f'A common root certifies {expected!r}, not {certificate.claim!r}')


def _check_hensel(certificate: Certificate, family: List[IntPoly]) -> None:
    _require(len(family) == 1, 'A Hensel proof concerns a single polynomial')
    _require(certificate.claim == Q_ADIC_ROOT, f'A Hensel proof certifies {Q_ADIC_ROOT!r}')
    prime = _integer(certificate.payload, 'prime')
    _require(bool(sympy.isprime(prime)), f'{prime} is not a prime')
    _check_roots(family[0], [certificate.payload], [prime])


def _check_quad_residue(certificate: Certificate, family: List[IntPoly]) -> None:
    _require(len(family) == 1, 'A quadratic residue proof concerns a single polynomial')
    _require(certificate.claim == INTERSECTIVE, f'A quadratic residue proof certifies {INTERSECTIVE!r}')
    payload, variables = certificate.payload, certificate.variables
    _require(len(variables) == 1, 'A quadratic residue proof concerns a polynomial in one variable')
    first, second = _integer(payload, 'a1'), _integer(payload, 'a2')
    square_root = _integer(payload, 'sqrt_a1_mod_a2')
    _require(first != second, 'a1 and a2 must be distinct')
    _require(bool(sympy.isprime(first)) and bool(sympy.isprime(second)), 'a1 and a2 must be primes')
    _require(first % 4 == 1 and second % 4 == 1, 'a1 and a2 must be 1 mod 4')
    _require((square_root * square_root - first) % second == 0, f'{square_root}^2 is not {first} mod {second}')
    n = parse_poly(variables[0], variables)
    expected = (n ** 2 - first) * (n ** 2 - second) * (n ** 2 - first * second)
    factor = _poly(payload.get('factor'), variables)
    cofactor = _poly(payload.get('cofactor'), variables)
    _require(factor == expected, 'Factor is not (n^2-a1)(n^2-a2)(n^2-a1*a2)')
    _require(not cofactor.is_zero() and factor * cofactor == family[0], 'Factor times cofactor is not the polynomial')
    _require(is_integral(family[0]), 'Polynomial is not integer-valued')
    _check_roots(factor, payload.get('hensel'), sorted({2, first, second}))


def _check_counterexample(certificate: Certificate, family: List[IntPoly]) -> None:
    expected = NOT_INTERSECTIVE if len(family) == 1 else NOT_JOINTLY_INTERSECTIVE
    _require(certificate.claim == expected, f'A failing modulus certifies {expected!r}')
    _require(all(is_integral(p) for p in family), 'Family is not integer-valued')
    modulus, period = _integer(certificate.payload, 'modulus'), _integer(certificate.payload, 'period')
    _require(modulus >= 2, f'Invalid failing modulus {modulus}')
    _require(period > 0 and period % witness_period(family, modulus) == 0, f'Period {period} is not a valid period')
    num_vars = len(certificate.variables)
    _require(period ** num_vars <= MAX_TABLE_POINTS, f'Residue box of period {period} is too large to verify')
    table = certificate.payload.get('table')
    for index, point in enumerate(itertools.product(range(period), repeat=num_vars)):
        residues = [int(p.evaluate(point)) % modulus for p in family]
        _require(any(residues), f'All polynomials vanish modulo {modulus} at {list(point)}')
        if table is not None:
            _require(isinstance(table, list) and index < len(table)
                     and [str(value) for value in residues] == table[index],
                     f'Residue table disagrees at {list(point)}')
    if table is not None:
        _require(len(table) == period ** num_vars, 'Residue table has the wrong length')


def _check_bezout(certificate: Certificate, family: List[IntPoly]) -> None:
    payload, variables = certificate.payload, certificate.variables
    _require(len(variables) == 1, 'A Bezout reduction concerns polynomials in one variable')
    _require(all(is_integral(p) for p in family), 'Family is not integer-valued')
    gcd = _poly(payload.get('gcd'), variables)
    cofactors = [_poly(text, variables) for text in payload.get('cofactors', [])]
    quotients = [_poly(text, variables) for text in payload.get('quotients', [])]
    scale = _integer(payload, 'scale')
    _require(scale > 0, 'Bezout scale must be positive')
    _require(len(cofactors) == len(family) and len(quotients) == len(family), 'Cofactor count mismatch')
    _require(all(h.denominator() == 1 for h in cofactors), 'Bezout cofactors must have integer coefficients')
    combination = sum((h * p for h, p in zip(cofactors, family)), IntPoly.constant(0, variables))
    _require(combination == gcd * scale, 'Bezout identity does not hold')
    _require(all(gcd * q == p for q, p in zip(quotients, family)), 'gcd does not divide every polynomial')
    try:
        gcd_scale = as_fraction(str(payload.get('gcd_scale')))
    except PolynomialError as err:
        raise CertificateError('Invalid gcd scale') from err
    _require(gcd_scale != 0, 'gcd scale must be nonzero')
    primitive = _poly(payload.get('primitive_gcd'), variables)
    _require(primitive == gcd * gcd_scale, 'Primitive gcd is not the scaled gcd')
    _require(primitive.denominator() == 1, 'Primitive gcd must have integer coefficients')
    nested_data = payload.get('gcd_certificate')
    _require(isinstance(nested_data, dict), 'Missing gcd certificate')
    nested = Certificate.from_dict(nested_data)
    _require(nested.polynomials == [primitive.render()] and nested.variables == list(variables),
             'Nested certificate is not about the primitive gcd')
    check_certificate(nested)
    if nested.claim == NOT_INTERSECTIVE:
        expected_modulus = translated_modulus_factor(scale, gcd_scale) * nested.modulus
        _require(certificate.claim == NOT_JOINTLY_INTERSECTIVE, 'Claim does not follow from the gcd certificate')
        _require(_integer(payload, 'modulus') == expected_modulus,
                 f'Translated failing modulus must be {expected_modulus}')
    elif nested.claim == INTERSECTIVE:
        _require(certificate.claim == JOINTLY_INTERSECTIVE, 'Claim does not follow from the gcd certificate')
    else:
        _require(certificate.claim == BOUNDED, 'Claim does not follow from the gcd certificate')


def _check_bounded(certificate: Certificate, family: List[IntPoly]) -> None:
    _require(len(family) == 1, 'Bounded evidence concerns a single polynomial')
    _require(certificate.claim == BOUNDED, f'Bounded evidence certifies {BOUNDED!r} only')
    payload, variables = certificate.payload, certificate.variables
    squarefree = _poly(payload.get('squarefree'), variables)
    cofactor = _poly(payload.get('cofactor'), variables)
    _require(not squarefree.is_zero() and squarefree * cofactor == family[0],
             'Squarefree part times cofactor is not the polynomial')
    prime_bound = _integer(payload, 'prime_bound')
    inconclusive = payload.get('inconclusive', [])
    _require(isinstance(inconclusive, list), 'Inconclusive primes must be a list')
    try:
        skipped = {int(prime) for prime in inconclusive}
    except (TypeError, ValueError) as err:
        raise CertificateError('Inconclusive primes must be integers') from err
    primes = list(sympy.primerange(2, prime_bound + 1))
    _require(skipped <= set(primes), 'Inconclusive primes must be primes up to the prime bound')
    _check_roots(squarefree, payload.get('hensel'), [prime for prime in primes if prime not in skipped])
    modulus_bound = _integer(payload, 'modulus_bound')
    witnesses = payload.get('witnesses')
    _require(isinstance(witnesses, list), 'Witness list missing')
    expected = [power for power, _, _ in prime_powers_up_to(modulus_bound)]
    try:
        moduli = [int(entry[0]) for entry in witnesses]
        points = [[int(x) for x in entry[1]] for entry in witnesses]
    except (TypeError, ValueError, IndexError) as err:
        raise CertificateError(f'Malformed witness entry: {err}') from err
    _require(moduli == expected, 'Witnesses do not cover exactly the prime powers up to the modulus bound')
    for modulus, point in zip(moduli, points):
        _require(len(point) == len(variables) and verify_witness(family, point, modulus),
                 f'Witness {point} fails modulo {modulus}')


_CHECKERS = {
    CertificateKind.WITNESS_TABLE: _check_witness_table,
    CertificateKind.HENSEL_PROOF: _check_hensel,
    CertificateKind.QUAD_RESIDUE_PROOF: _check_quad_residue,
    CertificateKind.COUNTEREXAMPLE_MODULUS: _check_counterexample,
    CertificateKind.BEZOUT_REDUCTION: _check_bezout,
    CertificateKind.BOUNDED_ONLY: _check_bounded,
}


def check_certificate(certificate: Certificate) -> None:
    """ Re-verify the mathematics of a certificate.

    :raises CertificateError: with the reason of the first failed check.
    """
    family = certificate.family()
    _require(bool(family), 'Certificate names no polynomials')
    _CHECKERS[certificate.kind](certificate, family)


def verify_certificate(data: Union[Certificate, Dict[str, Any], str]) -> bool:
    """ Standalone checker: digest first, then the mathematics.

    :param data: a certificate, its dictionary form or its JSON text.
    :return: True when the certificate is accepted.
    """
    try:
        if isinstance(data, Certificate):
            certificate = data
        elif isinstance(data, str):
            certificate = Certificate.from_json(data)
        else:
            certificate = Certificate.from_dict(data)
        check_certificate(certificate)
    except CertificateError:
        return False
    except (PolynomialError, ValueError, TypeError, KeyError, AttributeError, ArithmeticError):
        return False
    return True
