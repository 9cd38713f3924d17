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
Module circle
=============

Polynomial recurrence for rotations of the circle :math:`T x = x + \\alpha \\bmod 1`.

Rotation phases :math:`p(n)\\alpha \\bmod 1` are computed from a fixed point approximation of
:math:`\\alpha` with integer arithmetic, so they stay accurate when :math:`p(n)` is large. Measures of
intersections of finite unions of arcs are computed from the interval endpoints; comparisons closer
than the guard band are counted and reported instead of being decided silently.

.. autoclass:: ArcSet
   :members:

.. autofunction:: rotation_phases
.. autofunction:: uc_average_circle
.. autofunction:: empty_triple_check
"""
from __future__ import annotations

from dataclasses import dataclass
import itertools
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from polyrecurrence.exceptions import RecurrenceError
from polyrecurrence.polynomial import IntPoly
from polyrecurrence.settings import load_settings
from polyrecurrence.torus import numeric_value

logger = logging.getLogger(__name__)

Number = Union[str, float, mpmath.mpf]
Arc = Tuple[float, float]


def _alpha(alpha: Number, digits: int) -> mpmath.mpf:
    if isinstance(alpha, str):
        return numeric_value(alpha, digits)
    with mpmath.workdps(digits):
        return mpmath.mpf(alpha)


def rotation_phases(values: Iterable[int], alpha: Number, digits: Optional[int] = None) -> np.ndarray:
    """ The phases v*alpha mod 1 for integers v, as floats in [0, 1).

    :param values: the integers v.
    :param alpha: the rotation number, numeric or as text for :func:`~polyrecurrence.torus.numeric_value`.
    :param digits: decimal digits of the fixed point approximation of alpha.
    """
    precision = int(load_settings()['precision_digits']) if digits is None else digits
    bits = int(precision * 3.33) + 8
    with mpmath.workdps(precision + 10):
        numerator = int(mpmath.floor(mpmath.frac(_alpha(alpha, precision)) * mpmath.mpf(2) ** bits))
    modulus = 1 << bits
    return np.array([((int(v) * numerator) % modulus) / modulus for v in values], dtype=float)


class ArcSet:
    """ A finite union of half-open arcs [a, b) of the circle R/Z.

    :param arcs: pairs (a, b) with a < b and b - a <= 1; arcs are reduced mod 1 and merged.

    :raises RecurrenceError: for an empty or degenerate arc.
    """

    def __init__(self, arcs: Sequence[Arc]) -> None:
        pieces: List[Arc] = []
        for start, stop in arcs:
            start, stop = float(start), float(stop)
            if not start < stop or stop - start > 1:
                raise RecurrenceError(f'Invalid arc [{start}, {stop})')
            pieces.extend(_split(start, stop - start))
        self._arcs = _merge(pieces)
        if not self._arcs:
            raise RecurrenceError('Arc set has zero length')

    @property
    def arcs(self) -> List[Arc]:
        return list(self._arcs)

    @property
    def measure(self) -> float:
        return sum(stop - start for start, stop in self._arcs)

    def endpoints(self) -> List[float]:
        return [x for arc in self._arcs for x in arc]

    def shifted(self, shift: float) -> List[Arc]:
        """ The arcs of the set minus `shift`, i.e. T^-shift of the set, reduced into [0, 1). """
        pieces: List[Arc] = []
        for start, stop in self._arcs:
            pieces.extend(_split(start - shift, stop - start))
        return _merge(pieces)


def _split(start: float, length: float) -> List[Arc]:
    start = start % 1.0
    if length >= 1.0:
        return [(0.0, 1.0)]
    stop = start + length
    if stop <= 1.0:
        return [(start, stop)]
    return [(start, 1.0), (0.0, stop - 1.0)]


def _merge(arcs: Iterable[Arc]) -> List[Arc]:
    merged: List[Arc] = []
    for start, stop in sorted(arc for arc in arcs if arc[1] > arc[0]):
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], stop))
        else:
            merged.append((start, stop))
    return merged


def _intersect(left: Sequence[Arc], right: Sequence[Arc]) -> List[Arc]:
    result: List[Arc] = []
    i = j = 0
    while i < len(left) and j < len(right):
        start = max(left[i][0], right[j][0])
        stop = min(left[i][1], right[j][1])
        if start < stop:
            result.append((start, stop))
        if left[i][1] < right[j][1]:
            i += 1
        else:
            j += 1
    return result


def _near(points: Sequence[float], others: Sequence[float], guard: float) -> bool:
    for x, y in itertools.product(points, others):
        distance = abs(x - y) % 1.0
        if 0 < min(distance, 1.0 - distance) < guard:
            return True
    return False


@dataclass(frozen=True)
class UCAverage:
    """ Box average of mu(A cap T^-p1(n) A cap ... cap T^-pr(n) A).

    :param average: the box average.
    :param reference: mu(A)^2 for a single polynomial, None for a family.
    :param measure: mu(A).
    :param terms: number of n in the box.
    :param near_degenerate: number of n with an endpoint comparison inside the guard band.
    """
    average: float
    reference: Optional[float]
    measure: float
    terms: int
    near_degenerate: int

    @property
    def deviation(self) -> Optional[float]:
        return None if self.reference is None else abs(self.average - self.reference)

    def to_dict(self) -> Dict[str, Any]:
        return {'average': self.average, 'reference': self.reference, 'measure': self.measure,
                'terms': self.terms, 'near_degenerate': self.near_degenerate, 'deviation': self.deviation}


def _box(box: Sequence[int], dimension: int) -> Iterable[Tuple[int, ...]]:
    start, stop = int(box[0]), int(box[1])
    if stop <= start:
        raise RecurrenceError(f'Empty box [{start}, {stop})')
    return itertools.product(range(start, stop), repeat=dimension)


def _integer_value(p: IntPoly, n: Sequence[int]) -> int:
    value = p.evaluate(n)
    if value.denominator != 1:
        raise RecurrenceError(f'{p.render()} is not integer-valued at {list(n)}')
    return int(value)


def uc_average_circle(arcs: ArcSet, alpha: Number, family: Sequence[IntPoly], box: Sequence[int],
                      guard_band: Optional[float] = None, digits: Optional[int] = None) -> UCAverage:
    """ Average over the box [start, stop)^m of the measure of A cap T^-p1(n)A cap ... cap T^-pr(n)A.

    For a single polynomial the average approximates mu(A)^2 when the rotation is irrational.

    :param arcs: the set A.
    :param alpha: the rotation number.
    :param family: integral polynomials p_1, ..., p_r sharing their variables.
    :param box: pair (start, stop) bounding every coordinate of n.
    :param guard_band: comparisons of endpoints closer than this are counted as near-degenerate.
    :param digits: working precision of the phases.

    :raises RecurrenceError: for an empty family or box.
    """
    if not family:
        raise RecurrenceError('Empty polynomial family')
    guard = float(load_settings()['guard_band']) if guard_band is None else guard_band
    points = list(_box(box, family[0].num_vars))
    phases = [rotation_phases((_integer_value(p, n) for n in points), alpha, digits) for p in family]
    base = arcs.arcs
    endpoints = arcs.endpoints()
    total = 0.0
    near = 0
    for index in range(len(points)):
        current = base
        flagged = False
        for column in phases:
            shifted = arcs.shifted(float(column[index]))
            flagged = flagged or _near([x for arc in shifted for x in arc], endpoints, guard)
            current = _intersect(current, shifted)
        total += sum(stop - start for start, stop in current)
        near += flagged
    if near:
        logger.warning('%d of %d terms compare arc endpoints closer than %g', near, len(points), guard)
    measure = arcs.measure
    reference = measure ** 2 if len(family) == 1 else None
    return UCAverage(total / len(points), reference, measure, len(points), near)


@dataclass(frozen=True)
class TripleReport:
    """ Outcome of :func:`empty_triple_check`.

    :param length: the arc length h.
    :param all_empty: no n in the range gives a common point of the three arcs.
    :param first_violation: the least violating n, if any.
    :param largest_passing_h: the largest arc length for which every n in the range passes.
    :param checked: number of n checked.
    :param near_degenerate: number of n whose verdict lies inside the guard band.
    """
    length: float
    all_empty: bool
    first_violation: Optional[int]
    largest_passing_h: float
    checked: int
    near_degenerate: int

    def to_dict(self) -> Dict[str, Any]:
        return {'h': self.length, 'all_empty': self.all_empty, 'first_violation': self.first_violation,
                'largest_passing_h': self.largest_passing_h, 'checked': self.checked,
                'near_degenerate': self.near_degenerate}


def empty_triple_check(alpha: Number, length: float = 0.01, n_range: Sequence[int] = (1, 10 ** 4 + 1),
                       guard_band: Optional[float] = None, digits: Optional[int] = None) -> TripleReport:
    """ Check that A cap T^-n A cap T^-(2n+1) A is empty for A = [0, h) and every n != 0 in the range.

    The three arcs start at 0, -n*alpha and -(2n+1)*alpha. They share a point exactly when their
    starting points fit in an arc shorter than h, and the shortest arc holding three points of the
    circle has length 1 minus the largest gap between them.

    :param alpha: the rotation number.
    :param length: h.
    :param n_range: half-open range [start, stop) of n; n = 0 is skipped.

    :raises RecurrenceError: for an invalid h or an empty range.
    """
    if not 0 < length <= 1:
        raise RecurrenceError(f'Invalid arc length {length}')
    guard = float(load_settings()['guard_band']) if guard_band is None else guard_band
    values = np.array([n for n in range(int(n_range[0]), int(n_range[1])) if n != 0], dtype=np.int64)
    if not values.size:
        raise RecurrenceError(f'No nonzero n in [{n_range[0]}, {n_range[1]})')
    starts = np.stack([np.zeros(len(values)),
                       (-rotation_phases(values.tolist(), alpha, digits)) % 1.0,
                       (-rotation_phases((2 * values + 1).tolist(), alpha, digits)) % 1.0], axis=1)
    ordered = np.sort(starts, axis=1)
    gaps = np.stack([ordered[:, 1] - ordered[:, 0], ordered[:, 2] - ordered[:, 1],
                     1.0 - (ordered[:, 2] - ordered[:, 0])], axis=1)
    cover = 1.0 - np.max(gaps, axis=1)
    violations = np.flatnonzero(cover < length)
    near = int(np.count_nonzero(np.abs(cover - length) < guard))
    if near:
        logger.warning('%d values of n lie within %g of the arc length', near, guard)
    first = int(values[violations[0]]) if violations.size else None
    return TripleReport(length, first is None, first, float(np.min(cover)), len(values), near)
