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
Module torus
============

Exact orbit closures of polynomial sequences on tori.

A torus sequence is written as

.. math::

    t(n) = \\frac{q_0(n)}{k} + \\sum_{i=1}^{l} b_i(n)\\,\\alpha_i \\bmod \\mathbb{Z}^s

with integer-valued vector polynomials :math:`q_0, b_i` and labels :math:`\\alpha_i` that the user
declares rationally independent together with 1. The closure of :math:`\\{b(n)\\alpha\\}` is the
coset :math:`b(0)\\alpha + V` of the rational subspace :math:`V` spanned by the coefficient vectors of
:math:`\\hat{b}`, and :math:`0` lies in it exactly when no rational combination of the components of
:math:`b` is a nonzero constant. Everything here is exact rational linear algebra with :mod:`sympy`;
floating point enters only in :mod:`polyrecurrence.sampling`.

.. autoclass:: Irrational
   :members:

.. autoclass:: TorusPoint
   :members:

.. autoclass:: TorusSequence
   :members:

.. autoclass:: SubtorusCoset
   :members:

.. autofunction:: normalize_form
.. autofunction:: component_closure
.. autofunction:: sum_closures
.. autofunction:: contains_zero
.. autofunction:: closure_with_zero
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath
import sympy

from polyrecurrence.exceptions import PolynomialError, TorusError
from polyrecurrence.intersectivity import Counterexample, jointly_intersective_up_to
from polyrecurrence.lattice import AffineLattice, restrict_family, solve_integer
from polyrecurrence.polynomial import IntPoly, RationalVectorPoly, as_fraction, is_integral
from polyrecurrence.refinement import SublatticeProof, divisibility_sublattice
from polyrecurrence.settings import load_settings

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]

NAMED_CONSTANTS = {
    'sqrt2': 'sqrt(2)',
    'sqrt3': 'sqrt(3)',
    'sqrt5': 'sqrt(5)',
    'golden': '(sqrt(5) - 1)/2',
    'pi': 'pi',
    'e': 'E',
}


def _vector(values: Sequence[Any]) -> Vector:
    try:
        return tuple(as_fraction(value) for value in values)
    except PolynomialError as err:
        raise TorusError(f'Invalid rational vector {list(values)}: {err}') from err


def _format(vector: Sequence[Fraction]) -> List[str]:
    return [str(value) for value in vector]


def _is_zero(vector: Sequence[Fraction]) -> bool:
    return not any(vector)


def numeric_value(text: str, digits: Optional[int] = None) -> mpmath.mpf:
    """ Numeric value of a decimal, a named constant or a closed-form real expression like ``sqrt(2)-1``.

    :raises TorusError: when the text is not a real number.
    """
    precision = int(load_settings()['precision_digits']) if digits is None else digits
    expression = NAMED_CONSTANTS.get(text.strip(), text)
    try:
        value = sympy.sympify(expression, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as err:
        raise TorusError(f'Cannot read {text!r} as a real number') from err
    if not value.is_number or not value.is_real:
        raise TorusError(f'{text!r} is not a real number')
    if value.is_rational:
        logger.warning('value %s of an irrational label is rational', text)
    with mpmath.workdps(precision):
        return mpmath.mpf(sympy.N(value, precision))


@dataclass(frozen=True)
class Irrational:
    """ A symbolic irrational number.

    :param label: the name of the number.
    :param value: optional numeric value, a decimal, named constant or expression; only used for sampling.
    """
    label: str
    value: Optional[str] = None

    def numeric(self, digits: Optional[int] = None) -> mpmath.mpf:
        if self.value is None:
            raise TorusError(f'No numeric value given for {self.label}')
        return numeric_value(self.value, digits)

    def scaled_down(self, divisor: int) -> Irrational:
        """ The label for this number divided by `divisor`, named ``label/divisor``. """
        if divisor == 1:
            return self
        value = None if self.value is None else f'({NAMED_CONSTANTS.get(self.value.strip(), self.value)})/{divisor}'
        return Irrational(f'{self.label}/{divisor}', value)

    def to_dict(self) -> Dict[str, Any]:
        return {'label': self.label, 'value': self.value}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Irrational:
        return cls(str(data['label']), None if data.get('value') is None else str(data['value']))


class TorusPoint:
    """ A point r + sum_a c_a * a of R^s with r and every c_a rational vectors.

    Zero coefficient vectors are dropped, so equal points have identical data.
    """

    def __init__(self, rational: Sequence[Any], irrational: Optional[Mapping[str, Sequence[Any]]] = None) -> None:
        self._rational = _vector(rational)
        parts: Dict[str, Vector] = {}
        for label, values in (irrational or {}).items():
            vector = _vector(values)
            if len(vector) != len(self._rational):
                raise TorusError(f'Coefficient of {label} has dimension {len(vector)}, expected {self.dimension}')
            if not _is_zero(vector):
                parts[label] = vector
        self._irrational = dict(sorted(parts.items()))

    @classmethod
    def zero(cls, dimension: int) -> TorusPoint:
        return cls([0] * dimension)

    @property
    def dimension(self) -> int:
        return len(self._rational)

    @property
    def rational(self) -> Vector:
        return self._rational

    @property
    def irrational(self) -> Dict[str, Vector]:
        return dict(self._irrational)

    @property
    def labels(self) -> List[str]:
        return list(self._irrational)

    def _check(self, other: TorusPoint) -> None:
        if other.dimension != self.dimension:
            raise TorusError(f'Dimension mismatch: {self.dimension} and {other.dimension}')

    def __add__(self, other: TorusPoint) -> TorusPoint:
        self._check(other)
        parts = dict(self._irrational)
        for label, vector in other._irrational.items():
            current = parts.get(label, (Fraction(0),) * self.dimension)
            parts[label] = tuple(a + b for a, b in zip(current, vector))
        return TorusPoint([a + b for a, b in zip(self._rational, other._rational)], parts)

    def __neg__(self) -> TorusPoint:
        return self.scaled(-1)

    def __sub__(self, other: TorusPoint) -> TorusPoint:
        return self + (-other)

    def scaled(self, factor: Any) -> TorusPoint:
        value = as_fraction(factor)
        return TorusPoint([value * x for x in self._rational],
                          {label: [value * x for x in vector] for label, vector in self._irrational.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return self._rational == other._rational and self._irrational == other._irrational

    def __hash__(self) -> int:
        return hash((self._rational, tuple(self._irrational.items())))

    def __repr__(self) -> str:
        return f'TorusPoint({_format(self._rational)}, {self.to_dict()["irrational"]})'

    def numeric(self, values: Mapping[str, mpmath.mpf]) -> List[mpmath.mpf]:
        """ Coordinates reduced into [0, 1), using numeric values for the labels.

        :raises TorusError: when a label has no value.
        """
        coordinates = [mpmath.mpf(x.numerator) / x.denominator for x in self._rational]
        for label, vector in self._irrational.items():
            if label not in values:
                raise TorusError(f'No numeric value for {label}')
            for index, coefficient in enumerate(vector):
                coordinates[index] += (mpmath.mpf(coefficient.numerator) / coefficient.denominator) * values[label]
        return [mpmath.frac(x) for x in coordinates]

    def to_dict(self) -> Dict[str, Any]:
        return {'rational': _format(self._rational),
                'irrational': {label: _format(vector) for label, vector in self._irrational.items()}}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> TorusPoint:
        try:
            return cls(data['rational'], data.get('irrational') or {})
        except (KeyError, TypeError) as err:
            raise TorusError(f'Invalid torus point data: {err}') from err


class TorusSequence:
    """ The sequence q0(n)/k + sum_i b_i(n) alpha_i mod Z^s on a lattice.

    :param modulus: k >= 1, the common denominator of the rational part.
    :param rational: q0, integer-valued on the domain.
    :param parts: pairs (alpha_i, b_i) with distinct labels and integer-valued b_i.
    :param domain: the lattice of n, defaults to Z^m.
    :param source: the polynomials the sequence was built from, needed by :func:`closure_with_zero`.

    :raises TorusError: when the data is inconsistent.
    """

    def __init__(self, modulus: int, rational: RationalVectorPoly,
                 parts: Sequence[Tuple[Irrational, RationalVectorPoly]] = (),
                 domain: Optional[AffineLattice] = None, source: Sequence[IntPoly] = ()) -> None:
        if modulus < 1:
            raise TorusError(f'Invalid denominator {modulus} of the rational part')
        self._modulus = int(modulus)
        self._rational = rational
        self._parts = list(parts)
        self._domain = domain if domain is not None else AffineLattice.full(rational.num_vars)
        self._source = list(source)
        labels = [irrational.label for irrational, _ in self._parts]
        if len(set(labels)) != len(labels):
            raise TorusError(f'Irrational labels must be distinct, got {labels}')
        for name, vector in [('rational part', rational)] + [(label, b) for label, (_, b) in zip(labels, self._parts)]:
            if vector.dimension != rational.dimension or vector.variables != rational.variables:
                raise TorusError(f'The {name} does not match the dimension and variables of the sequence')
            if self._domain.dimension != vector.num_vars:
                raise TorusError(f'Domain of dimension {self._domain.dimension} for {vector.num_vars} variables')
            for component in vector.components:
                if not is_integral(component, self._domain):
                    raise TorusError(f'Component {component.render()} of the {name} is not integer-valued')

    @property
    def dimension(self) -> int:
        return self._rational.dimension

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def rational(self) -> RationalVectorPoly:
        return self._rational

    @property
    def parts(self) -> List[Tuple[Irrational, RationalVectorPoly]]:
        return list(self._parts)

    @property
    def labels(self) -> List[str]:
        return [irrational.label for irrational, _ in self._parts]

    @property
    def domain(self) -> AffineLattice:
        return self._domain

    @property
    def source(self) -> List[IntPoly]:
        return list(self._source)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._rational.variables

    def point(self, n: Sequence[int]) -> TorusPoint:
        """ The exact point t(n), not reduced modulo Z^s. """
        rational = [value / self._modulus for value in self._rational.evaluate(n)]
        return TorusPoint(rational, {irrational.label: b.evaluate(n) for irrational, b in self._parts})

    def to_dict(self) -> Dict[str, Any]:
        return {'dimension': str(self.dimension),
                'modulus': str(self._modulus),
                'rational': self._rational.to_dict(),
                'parts': [{'irrational': irrational.to_dict(), 'b': b.to_dict()} for irrational, b in self._parts],
                'domain': self._domain.to_dict(),
                'source': [p.render() for p in self._source]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> TorusSequence:
        from polyrecurrence.poly_parser import parse_poly  # pylint: disable=import-outside-toplevel
        try:
            rational = RationalVectorPoly.from_dict(data['rational'])
            parts = [(Irrational.from_dict(part['irrational']), RationalVectorPoly.from_dict(part['b']))
                     for part in data.get('parts', [])]
            domain = AffineLattice.from_dict(data['domain']) if data.get('domain') else None
            source = [parse_poly(text, rational.variables) for text in data.get('source', [])]
            return cls(int(data['modulus']), rational, parts, domain, source)
        except (KeyError, TypeError, ValueError, PolynomialError) as err:
            raise TorusError(f'Invalid torus sequence data: {err}') from err


def normalize_form(polys: Sequence[IntPoly], vectors: Sequence[TorusPoint], labels: Sequence[Irrational],
                   domain: Optional[AffineLattice] = None) -> TorusSequence:
    """ Gather sum_i p_i(n) v_i into the form q0(n)/k + sum_a b_a(n) a.

    When the coefficients of a label a have a common denominator d > 1 the part is written for the
    label a/d, so every b_a has integer coefficients against the integer-valued p_i.

    :param polys: integer-valued polynomials p_1, ..., p_r sharing their variables.
    :param vectors: v_1, ..., v_r with coordinates in Q + sum Q a.
    :param labels: the declared irrational labels.
    :param domain: the lattice of n, defaults to Z^m.

    :raises TorusError: for mismatched input, undeclared labels or non integer-valued polynomials.
    """
    if not polys or len(polys) != len(vectors):
        raise TorusError(f'Expected one vector per polynomial, got {len(polys)} polynomials and {len(vectors)} vectors')
    dimension = vectors[0].dimension
    variables = polys[0].variables
    declared = {irrational.label for irrational in labels}
    for p, vector in zip(polys, vectors):
        if p.variables != variables:
            raise TorusError('All polynomials must share their variables')
        if vector.dimension != dimension:
            raise TorusError(f'Vector of dimension {vector.dimension} on a torus of dimension {dimension}')
        unknown = set(vector.labels) - declared
        if unknown:
            raise TorusError(f'Undeclared irrational labels {sorted(unknown)}')
        if not is_integral(p, domain):
            raise TorusError(f'Polynomial {p.render()} is not integer-valued')

    zero = IntPoly.constant(0, variables)
    modulus = math.lcm(*(x.denominator for vector in vectors for x in vector.rational))
    rational = RationalVectorPoly([sum((p * (modulus * vector.rational[j]) for p, vector in zip(polys, vectors)), zero)
                                   for j in range(dimension)])
    for j, component in enumerate(rational.components):
        expected = sum((p * vector.rational[j] for p, vector in zip(polys, vectors)), zero)
        if component / modulus != expected:
            raise TorusError(f'Rational part of coordinate {j} does not match the input')
    parts = []
    for irrational in labels:
        columns = [vector.irrational.get(irrational.label) for vector in vectors]
        # c*a = (d*c)*(a/d) with d*c integral
        scale = math.lcm(*(x.denominator for column in columns if column is not None for x in column))
        b = RationalVectorPoly([sum((p * (scale * column[j]) for p, column in zip(polys, columns)
                                     if column is not None), zero)
                                for j in range(dimension)])
        if not b.is_zero():
            if scale > 1:
                logger.info('label %s rescaled by 1/%d to clear coefficient denominators', irrational.label, scale)
            parts.append((irrational.scaled_down(scale), b))
    logger.debug('normal form with denominator %d and %d irrational parts', modulus, len(parts))
    return TorusSequence(modulus, rational, parts, domain, polys)


def _rref(vectors: Sequence[Sequence[Fraction]]) -> List[Vector]:
    rows = [list(vector) for vector in vectors if not _is_zero(vector)]
    if not rows:
        return []
    matrix = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])
    reduced, pivots = matrix.rref()
    return [tuple(as_fraction(reduced[i, j]) for j in range(matrix.cols)) for i in range(len(pivots))]


@dataclass(frozen=True)
class MembershipWitness:
    """ Exact evidence that a point lies in a subtorus coset.

    The point minus the offset minus the integer vector `shift` equals sum_j c_j e_j + sum_a (sum_j c_a,j e_j) a
    for the basis vectors e_j of the subspace.
    """
    shift: Tuple[int, ...]
    rational: Vector
    irrational: Dict[str, Vector] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'shift': [str(value) for value in self.shift],
                'rational': _format(self.rational),
                'irrational': {label: _format(vector) for label, vector in sorted(self.irrational.items())}}


class SubtorusCoset:
    """ The closed set (offset + V) mod Z^s for a rational subspace V.

    :param dimension: s.
    :param basis: vectors spanning V; stored in reduced row echelon form.
    :param offset: a point of the coset; its parts along V are removed.
    :param labels: the irrational labels the coset was built from.
    """

    def __init__(self, dimension: int, basis: Sequence[Sequence[Any]] = (), offset: Optional[TorusPoint] = None,
                 labels: Sequence[str] = ()) -> None:
        vectors = [_vector(vector) for vector in basis]
        if any(len(vector) != dimension for vector in vectors):
            raise TorusError(f'Subspace basis vectors must have dimension {dimension}')
        self._dimension = dimension
        self._basis = _rref(vectors)
        self._pivots = [next(j for j, x in enumerate(row) if x) for row in self._basis]
        point = offset if offset is not None else TorusPoint.zero(dimension)
        if point.dimension != dimension:
            raise TorusError(f'Offset of dimension {point.dimension} for a coset of dimension {dimension}')
        self._offset = TorusPoint(self._project(point.rational),
                                  {label: self._project(vector) for label, vector in point.irrational.items()})
        self._labels = tuple(labels)

    @classmethod
    def zero(cls, dimension: int) -> SubtorusCoset:
        """ The single point 0. """
        return cls(dimension)

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def basis(self) -> List[Vector]:
        return list(self._basis)

    @property
    def rank(self) -> int:
        return len(self._basis)

    @property
    def offset(self) -> TorusPoint:
        return self._offset

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    def _project(self, vector: Sequence[Fraction]) -> Vector:
        """ The representative of `vector` modulo V with zero pivot coordinates. """
        result = list(vector)
        for pivot, row in zip(self._pivots, self._basis):
            factor = result[pivot]
            if factor:
                result = [x - factor * e for x, e in zip(result, row)]
        return tuple(result)

    def _integer_shift(self, vector: Vector) -> Optional[Tuple[int, ...]]:
        """ An integer z with vector - z in V, or None. """
        free = [j for j in range(self._dimension) if j not in self._pivots]
        if not free:
            return (0,) * self._dimension
        projected = self._project(vector)
        rank = len(self._basis)
        scale = math.lcm(*(x.denominator for x in projected),
                         *(row[j].denominator for row in self._basis for j in free))
        # rows: D * (R^T z_P + y) = -D * pi(vector) over the free coordinates
        matrix = [[int(scale * row[j]) for row in self._basis] + [scale if j == other else 0 for other in free]
                  for j in free]
        target = [int(-scale * projected[j]) for j in free]
        solution = solve_integer(matrix, target)
        if solution is None:
            return None
        shift = [0] * self._dimension
        for position, pivot in enumerate(self._pivots):
            shift[pivot] = solution[position]
        for position, j in enumerate(free):
            shift[j] = -solution[rank + position]
        return tuple(shift)

    def membership_witness(self, point: TorusPoint) -> Optional[MembershipWitness]:
        """ Exact membership evidence for `point`, None when the point is not in the coset. """
        if point.dimension != self._dimension:
            raise TorusError(f'Point of dimension {point.dimension} for a coset of dimension {self._dimension}')
        difference = point - self._offset
        irrational = {}
        for label, vector in difference.irrational.items():
            if not _is_zero(self._project(vector)):
                return None
            irrational[label] = tuple(vector[pivot] for pivot in self._pivots)
        shift = self._integer_shift(difference.rational)
        if shift is None:
            return None
        residual = tuple(x - z for x, z in zip(difference.rational, shift))
        if not _is_zero(self._project(residual)):
            raise TorusError(f'Integer shift {shift} failed re-verification')
        return MembershipWitness(shift, tuple(residual[pivot] for pivot in self._pivots), irrational)

    def check_witness(self, point: TorusPoint, witness: MembershipWitness) -> bool:
        """ Recompute a membership witness exactly. """
        expected = self._offset + TorusPoint(witness.shift)
        expected = expected + TorusPoint(self._combine(witness.rational),
                                         {label: self._combine(c) for label, c in witness.irrational.items()})
        return expected == point

    def _combine(self, coordinates: Sequence[Fraction]) -> Vector:
        result = [Fraction(0)] * self._dimension
        for coefficient, row in zip(coordinates, self._basis):
            result = [x + coefficient * e for x, e in zip(result, row)]
        return tuple(result)

    def contains(self, point: TorusPoint) -> bool:
        return self.membership_witness(point) is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubtorusCoset):
            return NotImplemented
        return (self._dimension == other._dimension and self._basis == other._basis
                and self.contains(other._offset))

    def __hash__(self) -> int:
        return hash((self._dimension, tuple(self._basis)))

    def __repr__(self) -> str:
        return f'SubtorusCoset(dimension={self._dimension}, rank={self.rank}, offset={self._offset!r})'

    def to_dict(self) -> Dict[str, Any]:
        return {'dimension': str(self._dimension),
                'basis': [_format(row) for row in self._basis],
                'offset': self._offset.to_dict(),
                'labels': list(self._labels)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> SubtorusCoset:
        try:
            return cls(int(data['dimension']), data.get('basis', []), TorusPoint.from_dict(data['offset']),
                       data.get('labels', []))
        except (KeyError, TypeError, ValueError) as err:
            raise TorusError(f'Invalid subtorus data: {err}') from err


def _restricted(b: RationalVectorPoly, domain: Optional[AffineLattice]) -> RationalVectorPoly:
    if domain is None:
        return b
    if domain.dimension != b.num_vars:
        raise TorusError(f'Domain of dimension {domain.dimension} for {b.num_vars} variables')
    return b.restrict(domain.basis, domain.offset)


def component_closure(b: RationalVectorPoly, domain: Optional[AffineLattice] = None,
                      label: str = 'alpha') -> SubtorusCoset:
    """ Closure of {b(n) alpha : n in domain} for one irrational label.

    :return: the coset b(l) alpha + span of the coefficient vectors of b(An + l) - b(l).
    """
    restricted = _restricted(b, domain)
    matrix = restricted.coefficient_matrix()
    columns = [[row[index] for row in matrix] for index in range(len(matrix[0]) if matrix else 0)]
    offset = TorusPoint([0] * b.dimension, {label: restricted.constant_vector()})
    return SubtorusCoset(b.dimension, columns, offset, [label])


def contains_zero(q: RationalVectorPoly, domain: Optional[AffineLattice] = None) -> bool:
    """ Whether 0 lies in the closure of {q(n) alpha}.

    The closure misses 0 exactly when some rational combination of the components of q is a nonzero
    constant, that is when a vector in the left kernel of the coefficient matrix of the hat part does
    not annihilate q(0).
    """
    restricted = _restricted(q, domain)
    constants = restricted.constant_vector()
    matrix = restricted.coefficient_matrix()
    if not matrix or not matrix[0]:
        return _is_zero(constants)
    transposed = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in matrix]).T
    for kernel_vector in transposed.nullspace():
        relation = sum(as_fraction(kernel_vector[j]) * constants[j] for j in range(len(constants)))
        if relation != 0:
            logger.debug('combination %s of the components is a nonzero constant', list(kernel_vector))
            return False
    return True


def sum_closures(parts: Sequence[SubtorusCoset]) -> SubtorusCoset:
    """ The sum of closures belonging to distinct independent labels.

    :raises TorusError: for an empty list, mismatched dimensions or a repeated label.
    """
    if not parts:
        raise TorusError('Nothing to sum')
    dimension = parts[0].dimension
    labels: List[str] = []
    basis: List[Vector] = []
    offset = TorusPoint.zero(dimension)
    for part in parts:
        if part.dimension != dimension:
            raise TorusError(f'Cannot add subtori of dimensions {dimension} and {part.dimension}')
        repeated = set(labels) & set(part.labels)
        if repeated:
            raise TorusError(f'Label {sorted(repeated)[0]} occurs twice; the independence hypothesis fails')
        labels.extend(part.labels)
        basis.extend(part.basis)
        offset = offset + part.offset
    return SubtorusCoset(dimension, basis, offset, labels)


@dataclass(frozen=True)
class ZeroClosure:
    """ The closure S of a sequence on the lattice L', with exact evidence that 0 lies in S. """
    lattice: AffineLattice
    coset: SubtorusCoset
    witness: MembershipWitness
    proof: Optional[SublatticeProof] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'lattice': self.lattice.to_dict(),
                'closure': self.coset.to_dict(),
                'zero_witness': self.witness.to_dict(),
                'sublattice_proof': None if self.proof is None else self.proof.to_dict()}


def closure_with_zero(sequence: TorusSequence, search_bound: Optional[int] = None,
                      budget: Optional[int] = None) -> ZeroClosure:
    """ Closure of a sequence built from a jointly intersective family, on a lattice where it is connected.

    The rational part is removed by passing to the sublattice on which every source polynomial is
    divisible by k. There the closure is the sum of the per-label closures and contains 0.

    :param sequence: a sequence from :func:`normalize_form`.
    :param search_bound: bound of the bounded checks, defaults to the configured coset verify bound.
    :param budget: residue budget in evaluations.

    :raises TorusError: when the source family fails the bounded check at k, or a per-label closure
        misses 0, which shows that the family is not jointly intersective.
    """
    source = sequence.source
    if not source:
        raise TorusError('The sequence does not record the polynomials it was built from')
    bound = int(load_settings()['coset_verify_bound']) if search_bound is None else search_bound
    modulus = sequence.modulus
    domain = sequence.domain
    verdict = jointly_intersective_up_to(restrict_family(source, domain, domain), max(modulus, 2), budget)
    if isinstance(verdict, Counterexample):
        raise TorusError(f'The family has no common root modulo {verdict.modulus}, the closure need not contain 0')
    proof = None
    lattice = domain
    if modulus > 1:
        proof = divisibility_sublattice(source, modulus, max(bound, modulus), domain, budget)
        lattice = proof.lattice
        for component in _restricted(sequence.rational, lattice).components:
            if not is_integral(component / modulus):
                raise TorusError(f'Rational part is not integral on {lattice!r}')
    closures = []
    for irrational, b in sequence.parts:
        if not contains_zero(b, lattice):
            raise TorusError(f'0 is not in the closure of the {irrational.label} part; '
                             'the family is not jointly intersective')
        closures.append(component_closure(b, lattice, irrational.label))
    coset = sum_closures(closures) if closures else SubtorusCoset.zero(sequence.dimension)
    zero = TorusPoint.zero(sequence.dimension)
    witness = coset.membership_witness(zero)
    if witness is None or not coset.check_witness(zero, witness):
        raise TorusError('0 failed the membership test of the computed closure')
    logger.info('closure of rank %d on %r contains 0', coset.rank, lattice)
    return ZeroClosure(lattice, coset, witness, proof)
