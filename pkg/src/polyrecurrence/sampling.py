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
Module sampling
===============

Floating point cross-check of exact closures: the orbit of a torus sequence is sampled over a box,
every sample is tested against the predicted subtorus coset, and the dimension of the sample cloud
is estimated independently of the prediction.

Phases are computed with :mod:`mpmath` at the configured precision and reduced modulo 1 before they
are converted to double precision, so large polynomial values do not destroy the fractional parts.

.. autoclass:: SampleReport
   :members:

.. autofunction:: sample_verify
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import itertools
import logging
import math
from typing import Any, Dict, List, Optional

import mpmath
import numpy as np

from polyrecurrence.exceptions import TorusError
from polyrecurrence.lattice import AffineLattice, hermite_normal_form
from polyrecurrence.settings import load_settings
from polyrecurrence.torus import SubtorusCoset, TorusSequence

logger = logging.getLogger(__name__)

# points used for the nearest neighbour statistics
NEIGHBOUR_SAMPLE = 1000
RANK_TOLERANCE = 1e-6


@dataclass(frozen=True)
class SampleReport:
    """ Outcome of :func:`sample_verify`.

    :param samples: number of orbit points sampled.
    :param max_membership_residual: largest distance of a sample to the predicted coset, measured in
        the coordinates of the integer relations defining the coset.
    :param empirical_dimension: numerical rank of small differences between samples.
    :param covering_statistic: largest nearest neighbour distance among the samples.
    :param zero_residual: the membership residual of the point 0.
    :param min_distance_to_zero: smallest torus distance of a sample to 0.
    :param tolerance: the residual tolerance.
    """
    samples: int
    max_membership_residual: float
    empirical_dimension: int
    covering_statistic: float
    zero_residual: float
    min_distance_to_zero: float
    tolerance: float

    @property
    def consistent(self) -> bool:
        return self.max_membership_residual < self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {'samples': self.samples,
                'max_membership_residual': self.max_membership_residual,
                'empirical_dimension': self.empirical_dimension,
                'covering_statistic': self.covering_statistic,
                'zero_residual': self.zero_residual,
                'min_distance_to_zero': self.min_distance_to_zero,
                'tolerance': self.tolerance,
                'consistent': self.consistent}


def _box_points(lattice: AffineLattice, radius: int, limit: int) -> List[List[int]]:
    side = 2 * radius + 1
    total = side ** lattice.dimension
    wanted = limit * lattice.index
    if total <= wanted:
        candidates = (list(point) for point in itertools.product(range(-radius, radius + 1),
                                                                 repeat=lattice.dimension))
    else:
        flat = np.unique(np.linspace(0, total - 1, wanted, dtype=np.int64))
        shape = (side,) * lattice.dimension
        candidates = ([int(x) - radius for x in point] for point in zip(*np.unravel_index(flat, shape)))
    points = [point for point in candidates if lattice.member(point)]
    return points[:limit]


class _Relations:
    """ Integer relations N y = 0 cutting out V, with the lattice N Z^s in Hermite normal form. """

    def __init__(self, coset: SubtorusCoset) -> None:
        pivots = [next(j for j, x in enumerate(row) if x) for row in coset.basis]
        free = [j for j in range(coset.dimension) if j not in pivots]
        rows = []
        for j in free:
            # e_j - sum_i row_i[j] e_{pivot_i} annihilates V
            relation = [Fraction(0)] * coset.dimension
            relation[j] = Fraction(1)
            for pivot, row in zip(pivots, coset.basis):
                relation[pivot] = -row[j]
            scale = math.lcm(*(x.denominator for x in relation))
            rows.append([int(x * scale) for x in relation])
        self.matrix = np.array(rows, dtype=float).reshape(len(rows), coset.dimension)
        self.inverse: Optional[np.ndarray] = None
        self.hnf: Optional[np.ndarray] = None
        if rows:
            hnf = np.array(hermite_normal_form(rows), dtype=float)
            self.inverse = np.linalg.inv(hnf)
            self.hnf = hnf

    def residuals(self, points: np.ndarray) -> np.ndarray:
        """ Distance of every row of `points` to V + Z^s, in relation coordinates. """
        if self.inverse is None:
            return np.zeros(len(points))
        coordinates = (self.inverse @ (self.matrix @ points.T)).T
        wrapped = coordinates - np.round(coordinates)
        return np.linalg.norm(wrapped @ self.hnf.T, axis=1)


def _wrap(values: np.ndarray) -> np.ndarray:
    return values - np.round(values)


def _neighbour_statistics(phases: np.ndarray) -> Dict[str, Any]:
    chosen = phases[np.linspace(0, len(phases) - 1, min(len(phases), NEIGHBOUR_SAMPLE)).astype(np.int64)]
    if len(chosen) < 2:
        return {'dimension': 0, 'covering': 0.0}
    differences = _wrap(chosen[:, None, :] - chosen[None, :, :])
    distances = np.linalg.norm(differences, axis=2)
    np.fill_diagonal(distances, np.inf)
    nearest = np.argmin(distances, axis=1)
    steps = differences[np.arange(len(chosen)), nearest]
    covering = float(np.max(distances[np.arange(len(chosen)), nearest]))
    singular = np.linalg.svd(steps, compute_uv=False)
    dimension = int(np.sum(singular > RANK_TOLERANCE * max(1.0, float(singular[0]))))
    return {'dimension': dimension, 'covering': covering}


def sample_verify(sequence: TorusSequence, coset: SubtorusCoset, box_radius: int,
                  lattice: Optional[AffineLattice] = None, tolerance: Optional[float] = None,
                  max_samples: Optional[int] = None, digits: Optional[int] = None) -> SampleReport:
    """ Compare sampled orbit points with a predicted closure.

    :param sequence: the sequence, every label with a numeric value.
    :param coset: the predicted closure.
    :param box_radius: N, samples are taken from [-N, N]^m.
    :param lattice: lattice of the sampled n, defaults to the domain of the sequence.
    :param tolerance: residual tolerance, defaults to the configured membership tolerance.
    :param max_samples: sample cap, defaults to the configured maximum.
    :param digits: working precision of the phases.

    :raises TorusError: when a label has no numeric value or no lattice point lies in the box.
    """
    settings = load_settings()
    tolerance = float(settings['tolerance']) if tolerance is None else tolerance
    limit = int(settings['max_samples']) if max_samples is None else max_samples
    precision = int(settings['precision_digits']) if digits is None else digits
    domain = lattice if lattice is not None else sequence.domain
    if coset.dimension != sequence.dimension:
        raise TorusError(f'Coset of dimension {coset.dimension} for a sequence on T^{sequence.dimension}')
    with mpmath.workdps(precision):
        values = {irrational.label: irrational.numeric(precision) for irrational, _ in sequence.parts}
        points = _box_points(domain, box_radius, limit)
        if not points:
            raise TorusError(f'No point of {domain!r} in the box of radius {box_radius}')
        phases = np.array([[float(x) for x in sequence.point(n).numeric(values)] for n in points])
        offset = np.array([float(x) for x in coset.offset.numeric(values)])
    relations = _Relations(coset)
    residuals = relations.residuals(phases - offset)
    zero_residual = float(relations.residuals(-offset[None, :])[0])
    statistics = _neighbour_statistics(phases)
    report = SampleReport(samples=len(points),
                          max_membership_residual=float(np.max(residuals)),
                          empirical_dimension=statistics['dimension'],
                          covering_statistic=statistics['covering'],
                          zero_residual=zero_residual,
                          min_distance_to_zero=float(np.min(np.linalg.norm(_wrap(phases), axis=1))),
                          tolerance=tolerance)
    if not report.consistent:
        logger.warning('samples leave the predicted closure, residual %g', report.max_membership_residual)
    if report.empirical_dimension != coset.rank:
        logger.warning('empirical dimension %d differs from predicted rank %d', report.empirical_dimension,
                       coset.rank)
    return report

