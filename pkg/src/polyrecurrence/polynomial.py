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
Module polynomial
=================

Exact multivariate polynomials with rational coefficients. Coefficients are kept as
:class:`fractions.Fraction` values; symbolic work that needs a computer algebra system
(extended Euclid, substitution, root finding) is delegated to :mod:`sympy`.

.. autoclass:: IntPoly
   :members:

.. autoclass:: RationalVectorPoly
   :members:

.. autofunction:: eval_poly
.. autofunction:: is_integral
.. autofunction:: hat
.. autofunction:: affine_substitute
.. autofunction:: denominator_scale
.. autofunction:: gcd_bezout_1var

Integrality test
----------------

A polynomial of degree :math:`d_j` in variable :math:`n_j` is integer-valued on :math:`\\mathbb{Z}^m` if and
only if it is integer-valued on the grid :math:`\\{0,\\ldots,d_1\\}\\times\\cdots\\times\\{0,\\ldots,d_m\\}`.
The values on the grid are the coefficients of the polynomial in the tensor basis of binomial
polynomials :math:`\\binom{n_1}{i_1}\\cdots\\binom{n_m}{i_m}` up to an integer unimodular change of basis
(iterated finite differences), and the binomial polynomials are integer-valued. On a lattice
:math:`A\\mathbb{Z}^m + l` the test is applied to the reparametrized polynomial :math:`p(An + l)`.
"""
from __future__ import annotations

from fractions import Fraction
import itertools
import math
import re
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union, TYPE_CHECKING

import sympy
from sympy import Poly, QQ

from polyrecurrence.exceptions import PolynomialError

if TYPE_CHECKING:  # pragma: no cover
    from polyrecurrence.lattice import AffineLattice

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_IDENTIFIER = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def as_fraction(value: Any) -> Fraction:
    """ Convert an int, Fraction, decimal string 'a/b' or sympy rational to a Fraction.

    :raises PolynomialError: when the value is not an exact rational.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PolynomialError(f'Boolean {value} is not a rational number')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as err:
            raise PolynomialError(f'Invalid rational number {value!r}') from err
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator') and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise PolynomialError(f'Value {value!r} is not an exact rational number')


def _grlex_key(exponent: Exponent) -> Tuple[int, Exponent]:
    return sum(exponent), exponent


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


class IntPoly:
    """ A polynomial in `m` variables with exact rational coefficients.

    The term map never stores zero coefficients and is kept in graded lexicographic order, highest
    term first, so equal polynomials have identical representations. The optional `domain` is the
    affine lattice on which the polynomial is declared to live; ``None`` means all of :math:`\\mathbb{Z}^m`.
    """

    def __init__(self, terms: Mapping[Sequence[int], Any], variables: Sequence[str],
                 domain: Optional[AffineLattice] = None) -> None:
        names = tuple(variables)
        if not names:
            raise PolynomialError('A polynomial needs at least one variable')
        for name in names:
            if not _IDENTIFIER.match(name):
                raise PolynomialError(f'Invalid variable name {name!r}')
        if len(set(names)) != len(names):
            raise PolynomialError(f'Duplicate variable names in {list(names)}')
        if domain is not None and domain.dimension != len(names):
            raise PolynomialError(f'Domain of dimension {domain.dimension} does not match {len(names)} variables')
        collected: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in terms.items():
            key = tuple(int(e) for e in exponent)
            if len(key) != len(names) or any(e < 0 for e in key):
                raise PolynomialError(f'Invalid exponent vector {exponent} for variables {list(names)}')
            collected[key] = collected.get(key, Fraction(0)) + as_fraction(coefficient)
        self._variables = names
        self._terms: Dict[Exponent, Fraction] = {
            key: collected[key] for key in sorted(collected, key=_grlex_key, reverse=True) if collected[key] != 0}
        self._domain = domain

    @classmethod
    def constant(cls, value: Any, variables: Sequence[str]) -> IntPoly:
        """ The constant polynomial with the given value. """
        return cls({(0,) * len(variables): value}, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> IntPoly:
        """ The polynomial consisting of a single variable `name`. """
        names = list(variables)
        if name not in names:
            raise PolynomialError(f'Unknown variable {name!r}, declared variables are {names}')
        exponent = tuple(1 if other == name else 0 for other in names)
        return cls({exponent: 1}, names)

    @classmethod
    def from_sympy(cls, poly: Poly, variables: Sequence[str]) -> IntPoly:
        """ Build an IntPoly from a sympy polynomial whose generators are the symbols of `variables`. """
        return cls({exponent: as_fraction(coefficient) for exponent, coefficient in poly.as_dict().items()},
                   variables)

    def to_sympy(self) -> Poly:
        """ The polynomial as a sympy :class:`~sympy.Poly` over ``QQ``. """
        generators = sympy.symbols(self._variables)
        if self.is_zero():
            return Poly(0, *generators, domain=QQ)
        return Poly.from_dict({exponent: sympy.Rational(c.numerator, c.denominator)
                               for exponent, c in self._terms.items()}, *generators, domain=QQ)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._variables

    @property
    def num_vars(self) -> int:
        return len(self._variables)

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        """
        :return: copy of the term map in graded lexicographic order, highest term first.
        """
        return dict(self._terms)

    @property
    def domain(self) -> Optional[AffineLattice]:
        return self._domain

    def with_domain(self, domain: Optional[AffineLattice]) -> IntPoly:
        """ The same polynomial declared on another lattice. """
        return IntPoly(self._terms, self._variables, domain)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(exponent) == 0 for exponent in self._terms)

    def degree(self) -> int:
        """
        :return: total degree, -1 for the zero polynomial.
        """
        return max((sum(exponent) for exponent in self._terms), default=-1)

    def degrees(self) -> Tuple[int, ...]:
        """
        :return: the degree in every variable separately (0 for the zero polynomial).
        """
        return tuple(max((exponent[index] for exponent in self._terms), default=0)
                     for index in range(self.num_vars))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.num_vars)

    def leading_coefficient(self) -> Fraction:
        """
        :return: coefficient of the highest term in graded lexicographic order, 0 for the zero polynomial.
        """
        for coefficient in self._terms.values():
            return coefficient
        return Fraction(0)

    def denominator(self) -> int:
        """
        :return: least common multiple of the coefficient denominators.
        """
        return math.lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1

    def integer_coefficients(self) -> Tuple[int, Dict[Exponent, int]]:
        """ Clear denominators.

        :return: the pair (d, terms of d*p) with d the least positive integer making all coefficients integers.
        """
        scale = self.denominator()
        return scale, {exponent: int(c * scale) for exponent, c in self._terms.items()}

    def univariate_coefficients(self) -> List[Fraction]:
        """
        :return: dense coefficient list of a one-variable polynomial, constant term first.
        """
        self._require_univariate()
        values = [Fraction(0)] * (max(self.degree(), 0) + 1)
        for (power,), coefficient in self._terms.items():
            values[power] = coefficient
        return values

    def primitive_integer_form(self) -> Tuple[IntPoly, Fraction]:
        """ Scale to coprime integer coefficients with a positive leading coefficient.

        :return: the pair (P, c) with P = c*p.
        """
        if self.is_zero():
            return self, Fraction(1)
        scale, integer_terms = self.integer_coefficients()
        content = math.gcd(*integer_terms.values())
        factor = Fraction(scale, content)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self * factor, factor

    def _require_univariate(self) -> None:
        if self.num_vars != 1:
            raise PolynomialError(f'Expected a polynomial in one variable, got variables {list(self._variables)}')

    def _check_compatible(self, other: IntPoly) -> None:
        if other.variables != self._variables:
            raise PolynomialError(f'Variable mismatch: {list(self._variables)} and {list(other.variables)}')

    def _coerce(self, other: Any) -> IntPoly:
        if isinstance(other, IntPoly):
            self._check_compatible(other)
            return other
        return IntPoly.constant(as_fraction(other), self._variables)

    def __add__(self, other: Any) -> IntPoly:
        right = self._coerce(other)
        terms = dict(self._terms)
        for exponent, coefficient in right._terms.items():
            terms[exponent] = terms.get(exponent, Fraction(0)) + coefficient
        return IntPoly(terms, self._variables)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly({exponent: -c for exponent, c in self._terms.items()}, self._variables)

    def __sub__(self, other: Any) -> IntPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> IntPoly:
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> IntPoly:
        right = self._coerce(other)
        terms: Dict[Exponent, Fraction] = {}
        for (left_exponent, left_c), (right_exponent, right_c) in itertools.product(self._terms.items(),
                                                                                    right._terms.items()):
            exponent = tuple(a + b for a, b in zip(left_exponent, right_exponent))
            terms[exponent] = terms.get(exponent, Fraction(0)) + left_c * right_c
        return IntPoly(terms, self._variables)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> IntPoly:
        if not isinstance(power, int) or power < 0:
            raise PolynomialError(f'Exponent must be a nonnegative integer, got {power!r}')
        result = IntPoly.constant(1, self._variables)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __truediv__(self, other: Any) -> IntPoly:
        value = as_fraction(other)
        if value == 0:
            raise PolynomialError('Division by zero')
        return self * (1 / value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._variables == other._variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._variables, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f'IntPoly({self.render()!r}, variables={list(self._variables)})'

    def __str__(self) -> str:
        return self.render()

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """ Exact value at `point`.

        :raises PolynomialError: when the point has the wrong length.
        """
        if len(point) != self.num_vars:
            raise PolynomialError(f'Point {list(point)} has length {len(point)}, expected {self.num_vars}')
        values = [as_fraction(x) for x in point]
        total = Fraction(0)
        for exponent, coefficient in self._terms.items():
            term = coefficient
            for value, power in zip(values, exponent):
                if power:
                    term *= value ** power
            total += term
        return total

    def evaluate_mod(self, point: Sequence[int], modulus: int) -> int:
        """ Value of the integer-coefficient polynomial d*p at `point`, reduced mod `modulus`.

        Here d is :meth:`denominator`; the caller accounts for the scaling.
        """
        _, integer_terms = self.integer_coefficients()
        total = 0
        for exponent, coefficient in integer_terms.items():
            term = coefficient
            for value, power in zip(point, exponent):
                if power:
                    term = term * pow(int(value), power, modulus)
            total = (total + term) % modulus
        return total

    def derivative(self, index: int = 0) -> IntPoly:
        """ Partial derivative with respect to variable number `index`. """
        terms: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in self._terms.items():
            if exponent[index]:
                lowered = list(exponent)
                lowered[index] -= 1
                terms[tuple(lowered)] = coefficient * exponent[index]
        return IntPoly(terms, self._variables)

    def render(self) -> str:
        """ Text in the polynomial input language that parses back to this polynomial. """
        if self.is_zero():
            return '0'
        pieces: List[str] = []
        for exponent, coefficient in self._terms.items():
            factors = [name if power == 1 else f'{name}^{power}'
                       for name, power in zip(self._variables, exponent) if power]
            magnitude = abs(coefficient)
            if not factors:
                text = _format_rational(magnitude)
            elif magnitude == 1:
                text = '*'.join(factors)
            else:
                text = '*'.join([_format_rational(magnitude)] + factors)
            if not pieces:
                pieces.append(f'-{text}' if coefficient < 0 else text)
            else:
                pieces.append(f'- {text}' if coefficient < 0 else f'+ {text}')
        return ' '.join(pieces)

    def hat(self) -> IntPoly:
        """ The polynomial minus its constant term. """
        return IntPoly({exponent: c for exponent, c in self._terms.items() if sum(exponent)},
                       self._variables, self._domain)

    def to_dict(self) -> Dict[str, Any]:
        """ Serializable form; coefficients are 'a/b' strings. """
        result: Dict[str, Any] = {
            'variables': list(self._variables),
            'terms': [[list(exponent), _format_rational(c)] for exponent, c in self._terms.items()],
        }
        if self._domain is not None:
            result['domain'] = self._domain.to_dict()
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> IntPoly:
        domain = None
        if data.get('domain') is not None:
            from polyrecurrence.lattice import AffineLattice  # pylint: disable=import-outside-toplevel
            domain = AffineLattice.from_dict(data['domain'])
        try:
            terms = {tuple(exponent): coefficient for exponent, coefficient in data['terms']}
            return cls(terms, data['variables'], domain)
        except (KeyError, TypeError, ValueError) as err:
            raise PolynomialError(f'Invalid polynomial data: {err}') from err


class RationalVectorPoly:
    """ A vector of IntPoly components over a shared variable set. """

    def __init__(self, components: Sequence[IntPoly]) -> None:
        if not components:
            raise PolynomialError('A vector polynomial needs at least one component')
        variables = components[0].variables
        for component in components:
            if component.variables != variables:
                raise PolynomialError('All components of a vector polynomial must share their variables')
        self._components = tuple(components)

    @classmethod
    def zero(cls, dimension: int, variables: Sequence[str]) -> RationalVectorPoly:
        return cls([IntPoly.constant(0, variables) for _ in range(dimension)])

    @property
    def dimension(self) -> int:
        return len(self._components)

    @property
    def components(self) -> Tuple[IntPoly, ...]:
        return self._components

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._components[0].variables

    @property
    def num_vars(self) -> int:
        return self._components[0].num_vars

    def is_zero(self) -> bool:
        return all(component.is_zero() for component in self._components)

    def evaluate(self, point: Sequence[Scalar]) -> Tuple[Fraction, ...]:
        return tuple(component.evaluate(point) for component in self._components)

    def hat(self) -> RationalVectorPoly:
        return RationalVectorPoly([component.hat() for component in self._components])

    def constant_vector(self) -> Tuple[Fraction, ...]:
        return tuple(component.constant_term() for component in self._components)

    def nonconstant_monomials(self) -> List[Exponent]:
        """
        :return: all non-constant exponent vectors occurring in some component, graded lexicographic order.
        """
        monomials = {exponent for component in self._components for exponent in component.terms if sum(exponent)}
        return sorted(monomials, key=_grlex_key, reverse=True)

    def coefficient_matrix(self, monomials: Optional[Sequence[Exponent]] = None) -> List[List[Fraction]]:
        """ Coefficients of the hat components.

        :param monomials: column order; defaults to :meth:`nonconstant_monomials`.
        :return: one row per component, one column per monomial.
        """
        columns = list(self.nonconstant_monomials() if monomials is None else monomials)
        return [[component.coefficient(exponent) for exponent in columns] for component in self._components]

    def restrict(self, matrix: Sequence[Sequence[int]], offset: Sequence[int]) -> RationalVectorPoly:
        """ Substitute n -> matrix*n + offset into every component. """
        return RationalVectorPoly([affine_substitute(component, matrix, offset) for component in self._components])

    def scaled(self, factor: Scalar) -> RationalVectorPoly:
        return RationalVectorPoly([component * factor for component in self._components])

    def __add__(self, other: RationalVectorPoly) -> RationalVectorPoly:
        if other.dimension != self.dimension:
            raise PolynomialError(f'Dimension mismatch: {self.dimension} and {other.dimension}')
        return RationalVectorPoly([a + b for a, b in zip(self._components, other.components)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalVectorPoly):
            return NotImplemented
        return self._components == other._components

    def __hash__(self) -> int:
        return hash(self._components)

    def __repr__(self) -> str:
        return f'RationalVectorPoly({[c.render() for c in self._components]})'

    def to_dict(self) -> Dict[str, Any]:
        return {'variables': list(self.variables), 'components': [c.render() for c in self._components]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> RationalVectorPoly:
        from polyrecurrence.poly_parser import parse_poly  # pylint: disable=import-outside-toplevel
        return cls([parse_poly(text, data['variables']) for text in data['components']])


def eval_poly(p: IntPoly, point: Sequence[Scalar]) -> Fraction:
    """ Evaluate `p` exactly at an integer (or rational) point.

    :param p: the polynomial.
    :param point: coordinates, one per variable.

    :raises PolynomialError: when the length of `point` differs from the number of variables.
    :return: the exact rational value.
    """
    return p.evaluate(point)


def hat(p: IntPoly) -> IntPoly:
    """ Return p - p(0). """
    return p.hat()


def affine_substitute(p: IntPoly, matrix: Sequence[Sequence[int]], offset: Sequence[int]) -> IntPoly:
    """ Return q(n) = p(matrix*n + offset).

    :param p: polynomial in m variables.
    :param matrix: nonsingular integer m x m matrix.
    :param offset: integer vector of length m.

    :raises PolynomialError: when the matrix is singular or the dimensions do not match.
    :return: the substituted polynomial in the same variables, declared on all of Z^m.
    """
    size = p.num_vars
    if len(matrix) != size or any(len(row) != size for row in matrix) or len(offset) != size:
        raise PolynomialError(f'Affine map dimensions do not match a polynomial in {size} variables')
    if sympy.Matrix(matrix).det() == 0:
        raise PolynomialError(f'Singular substitution matrix {[list(row) for row in matrix]}')
    if p.is_constant():
        return IntPoly(p.terms, p.variables)
    generators = sympy.symbols(p.variables)
    images = {generators[i]: sum(int(matrix[i][j]) * generators[j] for j in range(size)) + int(offset[i])
              for i in range(size)}
    substituted = p.to_sympy().as_expr().xreplace(images)
    return IntPoly.from_sympy(Poly(sympy.expand(substituted), *generators, domain=QQ), p.variables)


def _degree_grid(degrees: Sequence[int]) -> Iterable[Tuple[int, ...]]:
    return itertools.product(*(range(d + 1) for d in degrees))


def is_integral(p: IntPoly, domain: Optional[AffineLattice] = None) -> bool:
    """ Decide whether p takes integer values on every point of `domain`.

    The polynomial is reparametrized to the lattice and evaluated on its per-variable degree grid,
    see the module documentation for why this is exact.

    :param p: the polynomial.
    :param domain: the lattice; defaults to the declared domain of `p`, or all of Z^m.

    :raises PolynomialError: when the domain dimension differs from the number of variables.
    :return: True when p is integer-valued on the domain.
    """
    lattice = domain if domain is not None else p.domain
    if lattice is not None:
        if lattice.dimension != p.num_vars:
            raise PolynomialError(f'Lattice of dimension {lattice.dimension} for a polynomial in {p.num_vars} '
                                  'variables')
        p = affine_substitute(p, lattice.basis, lattice.offset)
    if p.denominator() == 1:
        return True
    return all(p.evaluate(point).denominator == 1 for point in _degree_grid(p.degrees()))


def denominator_scale(family: Sequence[IntPoly]) -> int:
    """ Least positive d such that d*p has integer coefficients for every p in `family`.

    :raises PolynomialError: for an empty family.
    """
    if not family:
        raise PolynomialError('Cannot compute the denominator scale of an empty family')
    return math.lcm(*(p.denominator() for p in family))


def gcd_bezout_1var(family: Sequence[IntPoly]) -> Tuple[IntPoly, List[IntPoly], int]:
    """ Monic greatest common divisor over Q[n] with an integral Bezout identity.

    The extended Euclidean algorithm is folded over the nonzero members of the family; cofactors
    of zero members are zero. The identity sum(h_i * p_i) = d * g is re-verified before returning.

    :param family: polynomials in one shared variable, not all zero.

    :raises PolynomialError: when the family is empty, all zero or not univariate.
    :return: the triple (g, h, d) with g monic, h integer-coefficient cofactors and d a positive integer.
    """
    if not family:
        raise PolynomialError('Cannot compute the gcd of an empty family')
    variables = family[0].variables
    for p in family:
        p._require_univariate()  # pylint: disable=protected-access
        if p.variables != variables:
            raise PolynomialError('All polynomials of the family must share their variable')
    if all(p.is_zero() for p in family):
        raise PolynomialError('The gcd of an all-zero family is undefined')

    polys = [p.to_sympy() for p in family]
    generator = polys[0].gens[0]
    zero = Poly(0, generator, domain=QQ)
    gcd: Optional[Poly] = None
    cofactors: List[Poly] = []
    for poly in polys:
        if poly.is_zero:
            cofactors.append(zero)
            continue
        if gcd is None:
            gcd = poly.monic()
            cofactors.append(Poly(1 / poly.LC(), generator, domain=QQ))
            continue
        s, t, gcd = gcd.gcdex(poly)
        cofactors = [s * h for h in cofactors] + [t]
    assert gcd is not None

    h = [IntPoly.from_sympy(c, variables) for c in cofactors]
    g = IntPoly.from_sympy(gcd, variables)
    scale = math.lcm(*(c.denominator() for c in h))
    h = [c * scale for c in h]

    identity = sum((hi * pi for hi, pi in zip(h, family)), IntPoly.constant(0, variables)) - g * scale
    if not identity.is_zero():
        raise PolynomialError(f'Bezout identity verification failed, residual {identity.render()}')
    for poly in polys:
        if not poly.rem(gcd).is_zero:
            raise PolynomialError(f'Computed gcd {g.render()} does not divide {poly.as_expr()}')
    return g, h, scale
