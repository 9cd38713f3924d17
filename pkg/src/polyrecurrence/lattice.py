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
Module lattice
==============

Finite-index affine lattices :math:`A\\mathbb{Z}^m + l` in :math:`\\mathbb{Z}^m`. The basis is kept in
lower-triangular column Hermite normal form (positive diagonal, entries left of the diagonal reduced
into :math:`[0, h_{ii})`) and the offset is reduced into the box :math:`0 \\le l_i < h_{ii}`, so two
lattices are equal exactly when their stored data is equal.

.. autoclass:: AffineLattice
   :members:

.. autofunction:: hermite_normal_form
.. autofunction:: solve_integer
.. autofunction:: member
.. autofunction:: restrict_family
.. autofunction:: enumerate_subgroups
"""
from __future__ import annotations

import itertools
import math
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import sympy

from polyrecurrence.exceptions import LatticeError
from polyrecurrence.polynomial import IntPoly, affine_substitute

Matrix = List[List[int]]


def _identity(size: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def _column_hnf(matrix: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    h = [[int(value) for value in row] for row in matrix]
    n_row = len(h)
    n_col = len(h[0]) if n_row else 0
    if n_row == 0 or n_col < n_row or any(len(row) != n_col for row in h):
        raise LatticeError(f'Cannot compute a Hermite normal form of a {n_row} x {n_col} matrix')
    # column operations are mirrored on u, so that matrix * u = [h | 0]
    u = _identity(n_col)

    def swap(a: int, b: int) -> None:
        for row in itertools.chain(h, u):
            row[a], row[b] = row[b], row[a]

    def negate(a: int) -> None:
        for row in itertools.chain(h, u):
            row[a] = -row[a]

    def subtract(target: int, source: int, factor: int) -> None:
        if factor:
            for row in itertools.chain(h, u):
                row[target] -= factor * row[source]

    for i in range(n_row):
        while any(h[i][j] != 0 for j in range(i + 1, n_col)):
            nonzero = [j for j in range(i, n_col) if h[i][j] != 0]
            pivot = min(nonzero, key=lambda j: abs(h[i][j]))
            swap(i, pivot)
            if h[i][i] < 0:
                negate(i)
            for j in range(i + 1, n_col):
                subtract(j, i, h[i][j] // h[i][i])
        if h[i][i] == 0:
            raise LatticeError(f'Matrix {[list(row) for row in matrix]} does not have full row rank')
        if h[i][i] < 0:
            negate(i)
        for j in range(i):
            subtract(j, i, h[i][j] // h[i][i])
    return h, u


def hermite_normal_form(matrix: Sequence[Sequence[int]]) -> Matrix:
    """ Column-style Hermite normal form of an integer matrix of full row rank.

    The columns of `matrix` generate a lattice; the result is the unique square lower-triangular
    basis of the same lattice with positive diagonal and ``0 <= h[i][j] < h[i][i]`` for ``j < i``.

    :param matrix: r x s integer matrix, r <= s, with rank r.

    :raises LatticeError: when the matrix does not have full row rank.
    :return: the r x r Hermite normal form.
    """
    h, _ = _column_hnf(matrix)
    return [row[:len(h)] for row in h]


def solve_integer(matrix: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[List[int]]:
    """ An integer solution x of matrix * x = target, or None when there is none.

    :param matrix: r x s integer matrix of full row rank r.
    :param target: integer vector of length r.
    """
    h, u = _column_hnf(matrix)
    size = len(h)
    if len(target) != size:
        raise LatticeError(f'Target {list(target)} does not have dimension {size}')
    coefficients: List[int] = []
    for i in range(size):
        residual = int(target[i]) - sum(h[i][j] * coefficients[j] for j in range(i))
        if residual % h[i][i]:
            return None
        coefficients.append(residual // h[i][i])
    return [sum(u[row][j] * coefficients[j] for j in range(size)) for row in range(len(u))]


class AffineLattice:
    """ The coset A*Z^m + l of a finite-index subgroup of Z^m.

    :param basis: integer matrix whose columns generate the subgroup; m rows, full row rank.
    :param offset: integer vector of length m, defaults to the zero vector.
    """

    def __init__(self, basis: Sequence[Sequence[int]], offset: Optional[Sequence[int]] = None) -> None:
        self._basis = hermite_normal_form(basis)
        size = len(self._basis)
        point = [0] * size if offset is None else [int(value) for value in offset]
        if len(point) != size:
            raise LatticeError(f'Offset {list(point)} does not have dimension {size}')
        self._offset = self._reduce(point)

    @classmethod
    def full(cls, dimension: int) -> AffineLattice:
        """ The lattice Z^m itself. """
        if dimension < 1:
            raise LatticeError(f'Invalid lattice dimension {dimension}')
        return cls(_identity(dimension))

    @classmethod
    def scaled(cls, factor: int, offset: Sequence[int]) -> AffineLattice:
        """ The lattice factor*Z^m + offset. """
        if factor == 0:
            raise LatticeError('Scale factor of a lattice must be nonzero')
        return cls([[factor * value for value in row] for row in _identity(len(offset))], offset)

    @property
    def dimension(self) -> int:
        return len(self._basis)

    @property
    def basis(self) -> Matrix:
        """
        :return: copy of the Hermite normal form basis, columns are the generators.
        """
        return [list(row) for row in self._basis]

    @property
    def offset(self) -> List[int]:
        return list(self._offset)

    @property
    def index(self) -> int:
        return math.prod(self._basis[i][i] for i in range(self.dimension))

    def _reduce(self, point: Sequence[int]) -> List[int]:
        reduced = list(point)
        for i in range(self.dimension):
            quotient = reduced[i] // self._basis[i][i]
            if quotient:
                for row in range(i, self.dimension):
                    reduced[row] -= quotient * self._basis[row][i]
        return reduced

    def reduce(self, point: Sequence[int]) -> List[int]:
        """ Canonical representative of `point` modulo the subgroup A*Z^m. """
        self._check_dimension(point)
        return self._reduce([int(value) for value in point])

    def _check_dimension(self, point: Sequence[Any]) -> None:
        if len(point) != self.dimension:
            raise LatticeError(f'Vector {list(point)} does not have dimension {self.dimension}')

    def in_subgroup(self, vector: Sequence[int]) -> bool:
        """ Whether `vector` lies in the subgroup A*Z^m (offset ignored). """
        return not any(self.reduce(vector))

    def member(self, point: Sequence[int]) -> bool:
        """ Whether `point` lies in A*Z^m + l. """
        self._check_dimension(point)
        return self.in_subgroup([int(x) - l for x, l in zip(point, self._offset)])

    def coordinates(self, point: Sequence[int]) -> List[int]:
        """ The integer vector n with point = A*n + l.

        :raises LatticeError: when the point is not a member.
        """
        self._check_dimension(point)
        residual = [int(x) - l for x, l in zip(point, self._offset)]
        coordinates = []
        for i in range(self.dimension):
            if residual[i] % self._basis[i][i]:
                raise LatticeError(f'Point {list(point)} is not a member of {self!r}')
            coefficient = residual[i] // self._basis[i][i]
            coordinates.append(coefficient)
            for row in range(i, self.dimension):
                residual[row] -= coefficient * self._basis[row][i]
        return coordinates

    def point(self, coordinates: Sequence[int]) -> List[int]:
        """ The lattice point A*n + l for the integer vector n. """
        self._check_dimension(coordinates)
        return [sum(self._basis[i][j] * int(coordinates[j]) for j in range(self.dimension)) + self._offset[i]
                for i in range(self.dimension)]

    def contains(self, other: AffineLattice) -> bool:
        """ Whether `other` is a subset of this lattice. """
        if other.dimension != self.dimension:
            return False
        columns = [[other.basis[row][col] for row in range(self.dimension)] for col in range(self.dimension)]
        return self.member(other.offset) and all(self.in_subgroup(column) for column in columns)

    def sublattice(self, factor: int, coordinates: Sequence[int]) -> AffineLattice:
        """ The lattice factor*A*Z^m + (A*n0 + l) for n0 = `coordinates`. """
        return AffineLattice([[factor * value for value in row] for row in self._basis], self.point(coordinates))

    def cosets_of(self, sub: AffineLattice) -> List[List[int]]:
        """ Representatives of the cosets of the subgroup of `sub` that lie in this lattice.

        Every representative is reduced modulo the subgroup of `sub`; the list is sorted
        lexicographically.

        :raises LatticeError: when the subgroup of `sub` is not contained in the subgroup of this lattice.
        """
        columns = [[sub.basis[row][col] for row in range(self.dimension)] for col in range(self.dimension)]
        if sub.dimension != self.dimension or not all(self.in_subgroup(column) for column in columns):
            raise LatticeError(f'{sub!r} is not a sublattice of {self!r}')
        relative = [[0] * self.dimension for _ in range(self.dimension)]
        for col, column in enumerate(columns):
            shifted = [value + offset for value, offset in zip(column, self._offset)]
            for row, value in enumerate(self.coordinates(shifted)):
                relative[row][col] = value
        steps = hermite_normal_form(relative)
        representatives = {tuple(sub.reduce(self.point(choice)))
                           for choice in itertools.product(*(range(steps[i][i]) for i in range(self.dimension)))}
        return [list(representative) for representative in sorted(representatives)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineLattice):
            return NotImplemented
        return self._basis == other._basis and self._offset == other._offset

    def __hash__(self) -> int:
        return hash((tuple(map(tuple, self._basis)), tuple(self._offset)))

    def __repr__(self) -> str:
        return f'AffineLattice(basis={self._basis}, offset={self._offset})'

    def to_dict(self) -> Dict[str, Any]:
        """ Serializable form, integers as decimal strings. """
        return {'m': str(self.dimension),
                'hnf_matrix': [[str(value) for value in row] for row in self._basis],
                'offset': [str(value) for value in self._offset]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> AffineLattice:
        try:
            lattice = cls([[int(value) for value in row] for row in data['hnf_matrix']],
                          [int(value) for value in data['offset']])
            dimension = int(data['m'])
        except (KeyError, TypeError, ValueError) as err:
            raise LatticeError(f'Invalid lattice data: {err}') from err
        if dimension != lattice.dimension:
            raise LatticeError(f'Lattice data declares dimension {dimension} for a {lattice.dimension} x '
                               f'{lattice.dimension} basis')
        return lattice


def member(lattice: AffineLattice, point: Sequence[int]) -> bool:
    """ Exact membership test. """
    return lattice.member(point)


def domain_of(family: Sequence[IntPoly]) -> AffineLattice:
    """ The common declared domain of a family, Z^m when none is declared.

    :raises LatticeError: when members declare different domains.
    """
    if not family:
        raise LatticeError('Empty polynomial family')
    domains = {p.domain for p in family if p.domain is not None}
    if len(domains) > 1:
        raise LatticeError('Polynomials of the family are declared on different lattices')
    return domains.pop() if domains else AffineLattice.full(family[0].num_vars)


def restrict_family(family: Sequence[IntPoly], sub: AffineLattice,
                    lattice: Optional[AffineLattice] = None) -> List[IntPoly]:
    """ Reparametrize a family living on `lattice` to the sublattice `sub`.

    :param family: polynomials integral on `lattice`.
    :param sub: the sublattice A'Z^m + l'.
    :param lattice: the lattice of the family, defaults to its declared domain.

    :raises LatticeError: when `sub` is not contained in `lattice`.
    :return: the polynomials p(A'n + l'), declared on Z^m.
    """
    outer = lattice if lattice is not None else domain_of(family)
    if not outer.contains(sub):
        raise LatticeError(f'{sub!r} is not contained in {outer!r}')
    return [affine_substitute(p, sub.basis, sub.offset) for p in family]


def _ordered_factorizations(number: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (number,)
        return
    for first in sympy.divisors(number):
        for rest in _ordered_factorizations(number // first, parts - 1):
            yield (first,) + rest


def enumerate_subgroups(dimension: int, index_bound: int) -> Iterator[AffineLattice]:
    """ All subgroups of Z^k of index at most `index_bound`.

    Subgroups are produced by increasing index, then by the diagonal of their Hermite normal form
    in lexicographic order, then by the entries below the diagonal.

    :param dimension: the rank k.
    :param index_bound: the largest index to enumerate.
    """
    if dimension < 1 or index_bound < 1:
        raise ValueError(f'Invalid subgroup enumeration parameters k={dimension}, I={index_bound}')
    below = [(i, j) for i in range(dimension) for j in range(i)]
    for index in range(1, index_bound + 1):
        for diagonal in sorted(_ordered_factorizations(index, dimension)):
            ranges = [range(diagonal[i]) for i, _ in below]
            for entries in itertools.product(*ranges):
                basis = [[diagonal[i] if i == j else 0 for j in range(dimension)] for i in range(dimension)]
                for (i, j), value in zip(below, entries):
                    basis[i][j] = value
                yield AffineLattice(basis)
