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
Module exceptions
=================

"""
from typing import List, Optional


class PolynomialError(Exception):
    """ Exception for errors related to polynomial construction and arithmetic."""


class PolynomialParseError(PolynomialError):
    """ Exception for syntax errors in the polynomial input language.

    :param message: description of the problem.
    :param position: zero-based character offset in the input text where the problem was detected.
    """

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f'{message} (at position {position})')
        self.position = position


class LatticeError(Exception):
    """ Exception for errors related to affine lattices and their refinements."""


class IntersectivityError(Exception):
    """ Exception for errors related to solvability searches and intersectivity decisions."""


class BudgetExceededError(IntersectivityError):
    """ Exception raised when a residue search would exceed the configured evaluation budget.

    :param message: description of the search that was cut off.
    :param last_verified_bound: largest bound for which every modulus was completely verified, if any.
    """

    def __init__(self, message: str, last_verified_bound: Optional[int] = None) -> None:
        super().__init__(message)
        self.last_verified_bound = last_verified_bound


class CertificateError(Exception):
    """ Exception for errors related to certificate construction and verification."""


class TorusError(Exception):
    """ Exception for errors related to torus sequences and their orbit closures."""


class RecurrenceError(Exception):
    """ Exception for errors related to window sets and recurrence scans."""


class ConfigurationError(Exception):
    """ Exception for invalid run configurations and settings.

    :param message: summary of the problem.
    :param errors: all individual validation errors that were collected.
    """

    def __init__(self, message: str, errors: Optional[List[str]] = None) -> None:
        super().__init__(message)
        self.errors = errors or []
