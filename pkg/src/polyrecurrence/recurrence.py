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
Module recurrence
=================

Finite window experiments with polynomial configurations :math:`\\{a, a+p_1(n), \\ldots, a+p_r(n)\\}`.

A :class:`WindowSet` is a subset E of a window :math:`[M, N)` kept as a :mod:`numpy` bitmap. For a shift
vector n the quantity

.. math::

    c_n = \\frac{|\\{a \\in [M, N) : a, a+p_1(n), \\ldots, a+p_r(n) \\in E\\}|}{N - M}

is computed exactly as a :class:`~fractions.Fraction`. Configurations that would leave the window are
not counted, so :math:`c_n` under-estimates the density of the infinite set by at most
:math:`\\max_i |p_i(n)| / (N - M)`. Averages over boxes :math:`[-R, R]^m` stand in for uniform Cesaro
limits and window densities for upper Banach densities; reports always carry the window and box.

.. autoclass:: WindowSet
   :members:

.. autoclass:: DensityReport
   :members:

.. autofunction:: intersection_density
.. autofunction:: good_set_scan
.. autofunction:: partition_scan
.. autofunction:: multi_set_scan
.. autofunction:: obstruction_demo
.. autofunction:: cyclic_average
"""
from __future__ import annotations

from collections import Counter
import csv
from dataclasses import dataclass, field
from fractions import Fraction
import io
import itertools
import logging
import statistics
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from polyrecurrence.circle import rotation_phases
from polyrecurrence.exceptions import RecurrenceError
from polyrecurrence.modular import solvable_mod, witness_period
from polyrecurrence.polynomial import IntPoly
from polyrecurrence.settings import load_settings
from polyrecurrence.torus import numeric_value

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]
Epsilon = Union[Fraction, float, None]

PIECEWISE_CONVENTION = ('longest run of good shifts whose consecutive gaps are at most gap_bound; '
                        'a finite window statistic chosen by convention')
# boundary classification of Bohr sets is redone at high precision this close to an endpoint
_BOHR_MARGIN = 1e-9


class WindowSet:
    """ A set E intersected with the window [start, stop).

    :param start: M.
    :param stop: N > M.
    :param members: boolean array of length N - M, True at a - M for every a in E.
    :param description: the JSON description the set was built from.
    """

    def __init__(self, start: int, stop: int, members: np.ndarray,
                 description: Optional[Dict[str, Any]] = None) -> None:
        if stop <= start:
            raise RecurrenceError(f'Invalid window [{start}, {stop})')
        if members.shape != (stop - start,):
            raise RecurrenceError(f'Membership bitmap of shape {members.shape} for a window of length {stop - start}')
        self._start = int(start)
        self._stop = int(stop)
        self._members = members.astype(bool)
        self._members.setflags(write=False)
        self._description = description or {'window': [self._start, self._stop], 'kind': 'explicit',
                                             'elements': self.elements()}

    @classmethod
    def residues(cls, start: int, stop: int, modulus: int, residues: Sequence[int]) -> WindowSet:
        """ The union of the classes modulus*Z + r for r in `residues`. """
        if modulus < 1:
            raise RecurrenceError(f'Invalid modulus {modulus}')
        values = np.arange(start, stop, dtype=np.int64) % modulus
        members = np.isin(values, [r % modulus for r in residues])
        return cls(start, stop, members, {'window': [start, stop], 'kind': 'residues', 'modulus': modulus,
                                          'residues': sorted({int(r) % modulus for r in residues})})

    @classmethod
    def bohr(cls, start: int, stop: int, beta: str, interval: Tuple[float, float],
             digits: Optional[int] = None) -> WindowSet:
        """ The Bohr set {a : frac(a*beta) in [low, high)}.

        Points whose phase is within a small margin of an endpoint are re-classified with :mod:`mpmath`.
        """
        low, high = float(interval[0]), float(interval[1])
        if not 0 <= low < high <= 1:
            raise RecurrenceError(f'Invalid interval [{low}, {high})')
        values = np.arange(start, stop, dtype=np.int64)
        phases = rotation_phases(values.tolist(), beta, digits)
        members = (phases >= low) & (phases < high)
        close = np.flatnonzero((np.abs(phases - low) < _BOHR_MARGIN) | (np.abs(phases - high) < _BOHR_MARGIN))
        if close.size:
            precision = int(load_settings()['precision_digits']) if digits is None else digits
            with mpmath.workdps(precision):
                value = numeric_value(beta, precision)
                for index in close:
                    phase = mpmath.frac(int(values[index]) * value)
                    members[index] = bool(mpmath.mpf(low) <= phase < mpmath.mpf(high))
        return cls(start, stop, members, {'window': [start, stop], 'kind': 'bohr', 'beta': beta,
                                          'interval': [low, high]})

    @classmethod
    def explicit(cls, start: int, stop: int, elements: Sequence[int]) -> WindowSet:
        """ An explicit list of elements; elements outside the window are ignored with a warning. """
        members = np.zeros(stop - start, dtype=bool)
        outside = 0
        for element in elements:
            if start <= element < stop:
                members[element - start] = True
            else:
                outside += 1
        if outside:
            logger.warning('%d elements outside the window [%d, %d) ignored', outside, start, stop)
        return cls(start, stop, members, {'window': [start, stop], 'kind': 'explicit',
                                          'elements': sorted({int(e) for e in elements if start <= e < stop})})

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> WindowSet:
        """ Build a set from ``{"window": [M, N], "kind": "residues|bohr|explicit", ...}``. """
        try:
            start, stop = (int(value) for value in data['window'])
            kind = data['kind']
            if kind == 'residues':
                return cls.residues(start, stop, int(data['modulus']), [int(r) for r in data['residues']])
            if kind == 'bohr':
                low, high = data['interval']
                return cls.bohr(start, stop, str(data['beta']), (float(low), float(high)))
            if kind == 'explicit':
                return cls.explicit(start, stop, [int(e) for e in data['elements']])
        except (KeyError, TypeError, ValueError) as err:
            raise RecurrenceError(f'Invalid window set data: {err}') from err
        raise RecurrenceError(f'Unknown window set kind {kind!r}')

    def to_dict(self) -> Dict[str, Any]:
        return dict(self._description)

    @property
    def window(self) -> Tuple[int, int]:
        return self._start, self._stop

    @property
    def length(self) -> int:
        return self._stop - self._start

    @property
    def members(self) -> np.ndarray:
        """
        :return: read-only membership bitmap.
        """
        return self._members

    def elements(self) -> List[int]:
        return [int(a) + self._start for a in np.flatnonzero(self._members)]

    def count(self) -> int:
        return int(np.count_nonzero(self._members))

    def density(self) -> Fraction:
        return Fraction(self.count(), self.length)

    def __contains__(self, element: int) -> bool:
        return self._start <= element < self._stop and bool(self._members[element - self._start])

    def translated(self, shift: int) -> WindowSet:
        """ The set E + shift on the window [M + shift, N + shift). """
        return WindowSet(self._start + shift, self._stop + shift, self._members.copy(),
                         {'window': [self._start + shift, self._stop + shift], 'kind': 'explicit',
                          'elements': [a + shift for a in self.elements()]})

    def is_subset_of(self, other: WindowSet) -> bool:
        return self.window == other.window and not np.any(self._members & ~other.members)


def _shifts(family: Sequence[IntPoly], n: Sequence[int]) -> List[int]:
    shifts = []
    for p in family:
        value = p.evaluate(n)
        if value.denominator != 1:
            raise RecurrenceError(f'{p.render()} is not integer-valued at {list(n)}')
        shifts.append(int(value))
    return shifts


def configuration_count(subset: WindowSet, shifts: Sequence[int]) -> int:
    """ Number of a in the window with a and every a + s in the set. """
    members = subset.members
    length = subset.length
    mask = members.copy()
    for shift in shifts:
        if abs(shift) >= length:
            return 0
        if shift > 0:
            mask[:length - shift] &= members[shift:]
            mask[length - shift:] = False
        elif shift < 0:
            mask[-shift:] &= members[:length + shift]
            mask[:-shift] = False
    return int(np.count_nonzero(mask))


def intersection_density(subset: WindowSet, family: Sequence[IntPoly], n: Sequence[int]) -> Fraction:
    """ Exact density of {a : a, a+p_1(n), ..., a+p_r(n) in E} in the window.

    :param subset: E.
    :param family: integral polynomials.
    :param n: the shift vector.

    :raises RecurrenceError: when some p_i(n) is not an integer.
    :return: the count divided by the window length.
    """
    shifts = _shifts(family, n)
    largest = max((abs(shift) for shift in shifts), default=0)
    if largest >= subset.length:
        logger.warning('shift %d exceeds the window of length %d, no configuration fits', largest, subset.length)
    return Fraction(configuration_count(subset, shifts), subset.length)


def _box(radius: int, dimension: int) -> List[Point]:
    if radius < 0:
        raise RecurrenceError(f'Invalid box radius {radius}')
    return list(itertools.product(range(-radius, radius + 1), repeat=dimension))


def _gap_statistics(good: Sequence[Point], box: Sequence[Point]) -> Dict[str, Any]:
    if not good:
        return {'max_gap': None, 'median_gap': None, 'histogram': {}}
    if len(good[0]) == 1:
        values = sorted(n[0] for n in good)
        gaps = [b - a for a, b in zip(values, values[1:])]
        return {'max_gap': max(gaps, default=0),
                'median_gap': statistics.median(gaps) if gaps else 0,
                'histogram': dict(sorted(Counter(gaps).items()))}
    good_array = np.array(good, dtype=np.int64)
    radius = 0
    for chunk in range(0, len(box), 256):
        points = np.array(box[chunk:chunk + 256], dtype=np.int64)
        distances = np.abs(points[:, None, :] - good_array[None, :, :]).max(axis=2).min(axis=1)
        radius = max(radius, int(distances.max()))
    return {'max_gap': radius, 'median_gap': None, 'histogram': {}}


@dataclass
class DensityReport:
    """ Densities c_n over a box of shifts.

    :param window: the window [M, N) of the set.
    :param radius: the box is [-radius, radius]^m.
    :param points: the shift vectors in lexicographic order.
    :param densities: c_n for every point.
    :param epsilon: threshold of the good set.
    :param good: the points with c_n > epsilon.
    :param max_gap: largest gap between consecutive good shifts for m = 1, covering radius of the good
        set in the box (maximum norm) for m > 1; None for an empty good set.
    """
    window: Tuple[int, int]
    radius: int
    points: List[Point]
    densities: List[Fraction]
    epsilon: Fraction
    good: List[Point] = field(default_factory=list)
    max_gap: Optional[int] = None
    median_gap: Optional[float] = None
    gap_histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def average(self) -> Fraction:
        return sum(self.densities, Fraction(0)) / len(self.densities) if self.densities else Fraction(0)

    def density_of(self, n: Sequence[int]) -> Fraction:
        return self.densities[self.points.index(tuple(n))]

    def to_dict(self) -> Dict[str, Any]:
        return {'window': list(self.window),
                'radius': self.radius,
                'epsilon': str(self.epsilon),
                'average': str(self.average),
                'good': [list(n) for n in self.good],
                'max_gap': self.max_gap,
                'median_gap': self.median_gap,
                'gap_histogram': {str(gap): count for gap, count in self.gap_histogram.items()},
                'densities': [[list(n), str(c)] for n, c in zip(self.points, self.densities)]}

    def to_csv(self) -> str:
        """ Plot-ready rows: the coordinates of n followed by c_n as a float and as an exact fraction. """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        dimension = len(self.points[0]) if self.points else 1
        writer.writerow([f'n{index}' for index in range(dimension)] + ['c_n', 'c_n_exact'])
        for n, value in zip(self.points, self.densities):
            writer.writerow(list(n) + [f'{float(value):.12g}', str(value)])
        return buffer.getvalue()


def _epsilon(value: Epsilon, average: Fraction) -> Fraction:
    if value is None:
        return average / 2
    epsilon = Fraction(value)
    if epsilon < 0:
        raise RecurrenceError(f'Invalid threshold {value}')
    return epsilon


def _check_family(family: Sequence[IntPoly]) -> int:
    if not family:
        raise RecurrenceError('Empty polynomial family')
    if any(p.variables != family[0].variables for p in family):
        raise RecurrenceError('All polynomials of the family must share their variables')
    return family[0].num_vars


def _report(subset: WindowSet, points: List[Point], densities: List[Fraction], radius: int, epsilon: Epsilon,
            box: List[Point]) -> DensityReport:
    average = sum(densities, Fraction(0)) / len(densities) if densities else Fraction(0)
    threshold = _epsilon(epsilon, average)
    good = [n for n, c in zip(points, densities) if c > threshold]
    gaps = _gap_statistics(good, box)
    return DensityReport(subset.window, radius, points, densities, threshold, good, gaps['max_gap'],
                         gaps['median_gap'], gaps['histogram'])


def good_set_scan(subset: WindowSet, family: Sequence[IntPoly], radius: int, epsilon: Epsilon = None) -> DensityReport:
    """ Compute c_n for every n in [-R, R]^m and the good set {n : c_n > epsilon}.

    :param subset: E.
    :param family: integral polynomials sharing their variables.
    :param radius: R.
    :param epsilon: threshold, defaults to half the box average of c_n.
    """
    box = _box(radius, _check_family(family))
    densities = [intersection_density(subset, family, n) for n in box]
    report = _report(subset, box, densities, radius, epsilon, box)
    logger.info('%d of %d shifts are good at threshold %s', len(report.good), len(box), report.epsilon)
    return report


def _check_partition(cells: Sequence[WindowSet]) -> None:
    if not cells:
        raise RecurrenceError('Empty partition')
    window = cells[0].window
    cover = np.zeros(cells[0].length, dtype=np.int64)
    for cell in cells:
        if cell.window != window:
            raise RecurrenceError('All cells of a partition must share their window')
        cover += cell.members
    if np.any(cover != 1):
        raise RecurrenceError('Cells do not partition the window')


@dataclass
class CellReport:
    """ Good shifts of one cell, with the longest run of good shifts with bounded gaps. """
    cell: Dict[str, Any]
    report: DensityReport
    longest_run: Optional[Tuple[int, int]]
    gap_bound: int

    def to_dict(self) -> Dict[str, Any]:
        return {'cell': self.cell, 'report': self.report.to_dict(), 'gap_bound': self.gap_bound,
                'longest_run': None if self.longest_run is None else list(self.longest_run),
                'convention': PIECEWISE_CONVENTION}


def _longest_run(values: Sequence[int], gap_bound: int) -> Optional[Tuple[int, int]]:
    if not values:
        return None
    best = (values[0], values[0])
    first = values[0]
    for previous, current in zip(values, values[1:]):
        if current - previous > gap_bound:
            first = current
        if current - first > best[1] - best[0]:
            best = (first, current)
    return best


def partition_scan(cells: Sequence[WindowSet], family: Sequence[IntPoly], radius: int, epsilon: Epsilon = None,
                   gap_bound: Optional[int] = None) -> List[CellReport]:
    """ Good shifts n drawn from each cell of a partition of the window.

    For every cell E_i the shifts n in E_i with -R <= n <= R and c_n(E_i) > epsilon are collected, and
    the longest run of them with gaps at most `gap_bound` is reported.

    :param cells: sets partitioning a common window.
    :param family: integral polynomials in one variable.
    :param radius: R.
    :param epsilon: threshold, defaults to half the average of c_n over the shifts of each cell.
    :param gap_bound: defaults to four times the number of cells.

    :raises RecurrenceError: when the cells do not partition the window or the family is multivariate.
    """
    if _check_family(family) != 1:
        raise RecurrenceError('Partition scans need shifts n from the cells, so polynomials in one variable')
    _check_partition(cells)
    bound = 4 * len(cells) if gap_bound is None else gap_bound
    reports = []
    for cell in cells:
        points = [(n,) for n in range(-radius, radius + 1) if n in cell]
        densities = [intersection_density(cell, family, n) for n in points]
        report = _report(cell, points, densities, radius, epsilon, points)
        run = _longest_run([n[0] for n in report.good], bound)
        reports.append(CellReport(cell.to_dict(), report, run, bound))
    return reports


@dataclass
class MultiSetReport:
    """ Good sets of several sets scanned with the same shifts, and their intersection. """
    reports: List[DensityReport]
    common: List[Point]
    max_gap: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {'reports': [report.to_dict() for report in self.reports],
                'common': [list(n) for n in self.common], 'max_gap': self.max_gap}


def multi_set_scan(sets: Sequence[WindowSet], family: Sequence[IntPoly], radius: int,
                   epsilon: Epsilon = None) -> MultiSetReport:
    """ Shifts that are good for every set simultaneously. """
    if not sets:
        raise RecurrenceError('No sets given')
    reports = [good_set_scan(subset, family, radius, epsilon) for subset in sets]
    common = sorted(set.intersection(*(set(report.good) for report in reports)))
    box = reports[0].points
    return MultiSetReport(reports, common, _gap_statistics(common, box)['max_gap'])


@dataclass
class ObstructionReport:
    """ Per residue class k*Z + i, the number of configurations found inside it (all zero when confirmed). """
    modulus: int
    window: Tuple[int, int]
    radius: int
    configurations: List[int]

    @property
    def confirmed(self) -> bool:
        return not any(self.configurations)

    def to_dict(self) -> Dict[str, Any]:
        return {'modulus': str(self.modulus), 'window': list(self.window), 'radius': self.radius,
                'configurations': self.configurations, 'confirmed': self.confirmed}


def obstruction_demo(family: Sequence[IntPoly], modulus: int, window: Tuple[int, int] = (0, 10 ** 4),
                     radius: int = 100) -> ObstructionReport:
    """ Confirm that no residue class modulo k contains a configuration {a, a+p_1(n), ..., a+p_r(n)}.

    :raises RecurrenceError: when the family has a common root modulo k.
    """
    dimension = _check_family(family)
    outcome = solvable_mod(family, modulus)
    if outcome.solvable:
        raise RecurrenceError(f'Precondition violated: {outcome.witness} is a common root modulo {modulus}')
    box = _box(radius, dimension)
    shifts = [_shifts(family, n) for n in box]
    counts = []
    for residue in range(modulus):
        cell = WindowSet.residues(window[0], window[1], modulus, [residue])
        counts.append(sum(configuration_count(cell, shift) for shift in shifts))
    report = ObstructionReport(modulus, window, radius, counts)
    if not report.confirmed:
        logger.error('configurations inside residue classes modulo %d: %s', modulus, counts)
    return report


@dataclass(frozen=True)
class CyclicAverage:
    """ Box average of mu(A cap T^-p_1(n) A cap ...) on Z/kZ with A = {0} and the uniform measure. """
    modulus: int
    average: Fraction
    solvable: bool
    period_covered: bool

    def to_dict(self) -> Dict[str, Any]:
        return {'modulus': str(self.modulus), 'average': str(self.average), 'solvable': self.solvable,
                'period_covered': self.period_covered}


def cyclic_average(family: Sequence[IntPoly], modulus: int, radius: int) -> CyclicAverage:
    """ The finite rotation x -> x + 1 on Z/kZ with A = {0}.

    The term for n is 1/k when every p_i(n) is divisible by k and 0 otherwise, so once the box covers
    a full period the average vanishes exactly when the family has no common root modulo k.
    """
    dimension = _check_family(family)
    if modulus < 1:
        raise ValueError(f'Invalid modulus {modulus}, expected a positive integer')
    box = _box(radius, dimension)
    hits = sum(1 for n in box if all(shift % modulus == 0 for shift in _shifts(family, n)))
    average = Fraction(hits, modulus * len(box))
    covered = 2 * radius + 1 >= witness_period(family, modulus)
    solvable = solvable_mod(family, modulus).solvable
    if covered and (average > 0) != solvable:
        raise RecurrenceError(f'Cyclic average {average} contradicts solvability modulo {modulus}')
    return CyclicAverage(modulus, average, solvable, covered)
