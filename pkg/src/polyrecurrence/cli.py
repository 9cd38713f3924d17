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
Module cli
==========

Command line front end. Every run is described by a :class:`RunConfig` whose JSON form uses the flag
names as keys, so ``--config run.json`` reproduces a run and flags given on the command line override
the values from the file.

Exit codes:

== ==============================================================================
0  the claim was verified (within the stated bounds)
1  a mathematical negative was computed, for example a counterexample modulus
2  usage error: invalid flags, configuration or input
3  a budget or bound ran out before a decision was reached
== ==============================================================================

Errors are written to stderr as one JSON object. Artifacts are written to the ``--out`` directory;
run times are kept out of them and go into :file:`metadata.json`.

.. autoclass:: RunConfig
   :members:

.. autofunction:: run
.. autofunction:: main
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field, fields
from fractions import Fraction
import json
import logging
import os
import sys
from typing import Any, Callable, ClassVar, Dict, List, NoReturn, Optional, Sequence, Tuple, Union

from polyrecurrence.artifacts import canonical_json, write_json, write_metadata, write_text
from polyrecurrence.certificate import Certificate, check_certificate, counterexample_certificate, verify_certificate
from polyrecurrence.circle import ArcSet, empty_triple_check, uc_average_circle
from polyrecurrence.exceptions import (BudgetExceededError, CertificateError, ConfigurationError, IntersectivityError,
                                       LatticeError, PolynomialError, PolynomialParseError, RecurrenceError,
                                       TorusError)
from polyrecurrence.intersectivity import (DEFAULT_MODULUS_BOUND, DEFAULT_PRECISION, DEFAULT_PRIME_BOUND,
                                           Counterexample, Verdict, intersective_decide_1var,
                                           jointly_intersective_up_to, multidim_bounded_check, reduce_joint_to_gcd)
from polyrecurrence.lattice import AffineLattice, domain_of
from polyrecurrence.modular import residue_table, solvable_mod
from polyrecurrence.poly_parser import parse_poly
from polyrecurrence.polynomial import IntPoly, RationalVectorPoly, as_fraction
from polyrecurrence.recurrence import WindowSet, good_set_scan, multi_set_scan, obstruction_demo, partition_scan
from polyrecurrence.refinement import coset_refine, divisibility_sublattice
from polyrecurrence.sampling import sample_verify
from polyrecurrence.torus import Irrational, TorusPoint, closure_with_zero, normalize_form

logger = logging.getLogger(__name__)

EXIT_VERIFIED = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CERTIFICATE_FILE = 'certificate.json'
CLOSURE_FILE = 'closure.json'
REPORT_FILE = 'report.json'
REPORT_CSV_FILE = 'report.csv'

DEFAULT_SCAN_RADIUS = 100
DEFAULT_SAMPLE_RADIUS = 200
DEFAULT_ROTATION_BOX = 10 ** 4
DEFAULT_OBSTRUCTION_WINDOW = (0, 10 ** 4)
DEFAULT_TRIPLE_LENGTH = 0.01

COMMANDS = ('check-mod', 'joint', 'prove', 'verify-cert', 'lattice-refine', 'torus-closure', 'scan', 'toterg',
            'empty-triple', 'multidim')

Artifact = Union[Dict[str, Any], str]


@dataclass
class RunConfig:
    """ A complete description of one run.

    Every field corresponds to one flag and keeps the value in the form the flag takes, so the JSON
    form round-trips without loss. Repeatable flags are lists.
    """
    command: str
    polys: List[str] = field(default_factory=list)
    variables: str = 'n'
    modulus: Optional[int] = None
    bound: Optional[int] = None
    prime_bound: int = DEFAULT_PRIME_BOUND
    emax: int = DEFAULT_PRECISION
    box: Optional[int] = None
    eps: Optional[str] = None
    alpha: Optional[str] = None
    out: Optional[str] = None
    seed: Optional[int] = None
    verbose: bool = False
    cert: Optional[str] = None
    sets: List[str] = field(default_factory=list)
    cells: List[str] = field(default_factory=list)
    intervals: List[str] = field(default_factory=list)
    vectors: List[str] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)
    index_bound: Optional[int] = None
    sublattice: Optional[str] = None
    window: Optional[str] = None

    # field name -> flag name, which is also the key in the JSON form
    FLAGS: ClassVar[Dict[str, str]] = {
        'command': 'command', 'polys': 'p', 'variables': 'vars', 'modulus': 'k', 'bound': 'B', 'prime_bound': 'Q',
        'emax': 'emax', 'box': 'box', 'eps': 'eps', 'alpha': 'alpha', 'out': 'out', 'seed': 'seed',
        'verbose': 'verbose', 'cert': 'cert', 'sets': 'set', 'cells': 'cells', 'intervals': 'interval',
        'vectors': 'vector', 'labels': 'label', 'index_bound': 'index-bound', 'sublattice': 'sublattice',
        'window': 'window'}

    @property
    def variable_names(self) -> List[str]:
        return [name.strip() for name in self.variables.split(',') if name.strip()]

    def to_dict(self) -> Dict[str, Any]:
        return {self.FLAGS[item.name]: getattr(self, item.name) for item in fields(self)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> RunConfig:
        """ Build a configuration from its JSON form.

        :raises ConfigurationError: for unknown keys or a missing command.
        """
        names = {flag: name for name, flag in cls.FLAGS.items()}
        unknown = sorted(set(data) - set(names))
        if unknown:
            raise ConfigurationError(f'Unknown configuration keys {unknown}', [f'unknown key {key}' for key in unknown])
        if 'command' not in data:
            raise ConfigurationError('No command given', ['command is required'])
        errors = [error for flag, value in sorted(data.items()) for error in _type_errors(flag, value)]
        if errors:
            raise ConfigurationError('Invalid configuration values', errors)
        return cls(**{names[flag]: value for flag, value in data.items()})

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        return cls.from_dict(_json_object(text))

    def validate(self) -> List[str]:
        """ Collect every problem with the configuration.

        :return: the list of problems, empty for a valid configuration.
        """
        errors: List[str] = []
        if self.command not in COMMANDS:
            errors.append(f'unknown command {self.command!r}, expected one of {", ".join(COMMANDS)}')
        if not self.variable_names:
            errors.append('--vars names no variables')
        for flag, value, least in (('-k', self.modulus, 1), ('-B', self.bound, 2), ('-Q', self.prime_bound, 2),
                                   ('--emax', self.emax, 1), ('--box', self.box, 1),
                                   ('--index-bound', self.index_bound, 1)):
            if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < least):
                errors.append(f'{flag} must be an integer of at least {least}, got {value!r}')
        if self.eps is not None:
            try:
                if Fraction(str(self.eps)) < 0:
                    errors.append(f'--eps must be nonnegative, got {self.eps}')
            except (ValueError, ZeroDivisionError):
                errors.append(f'--eps must be a decimal or fraction, got {self.eps!r}')
        if self.window is not None:
            try:
                start, stop = _pair(self.window, int)
                if stop <= start:
                    errors.append(f'--window must satisfy M < N, got {self.window}')
            except ValueError:
                errors.append(f'--window must be M,N, got {self.window!r}')
        for text in self.intervals:
            try:
                _pair(text, float)
            except ValueError:
                errors.append(f'--interval must be a,b, got {text!r}')
        errors.extend(self._command_errors())
        return errors

    def _command_errors(self) -> List[str]:
        errors = []
        command = self.command
        if command not in ('verify-cert', 'empty-triple') and command in COMMANDS and not self.polys:
            errors.append(f'{command} needs at least one -p')
        if command == 'verify-cert' and not self.cert:
            errors.append('verify-cert needs --cert')
        if command == 'check-mod' and self.modulus is None and self.bound is None:
            errors.append('check-mod needs -k or -B')
        if command == 'prove' and len(self.polys) != 1:
            errors.append(f'prove takes exactly one -p, got {len(self.polys)}')
        if command == 'lattice-refine' and self.modulus is None and self.sublattice is None:
            errors.append('lattice-refine needs -k or --sublattice')
        if command == 'torus-closure' and len(self.vectors) != len(self.polys):
            errors.append(f'torus-closure needs one --vector per -p, got {len(self.vectors)} for {len(self.polys)}')
        if command == 'scan' and not (self.sets or self.cells or self.modulus is not None):
            errors.append('scan needs --set, --cells or -k')
        if command in ('toterg', 'empty-triple') and self.alpha is None:
            errors.append(f'{command} needs --alpha')
        if command == 'toterg' and not self.intervals:
            errors.append('toterg needs at least one --interval')
        if command == 'multidim' and self.index_bound is None:
            errors.append('multidim needs --index-bound')
        return errors


@dataclass
class Outcome:
    """ The exit status of a command with its artifacts, keyed by file name. """
    status: int
    report: Dict[str, Any]
    artifacts: Dict[str, Artifact] = field(default_factory=dict)


_LIST_FLAGS = ('p', 'set', 'cells', 'interval', 'vector', 'label')
_INTEGER_FLAGS = ('k', 'B', 'Q', 'emax', 'box', 'seed', 'index-bound')


def _type_errors(flag: str, value: Any) -> List[str]:
    """ Problems with the JSON type of one configuration value; None is allowed for optional flags. """
    if flag in _LIST_FLAGS:
        if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
            return [f'{flag} must be a list of strings, got {value!r}']
        return []
    if flag in _INTEGER_FLAGS:
        if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
            return [f'{flag} must be an integer, got {value!r}']
        return []
    if flag == 'verbose':
        return [] if isinstance(value, bool) else [f'verbose must be true or false, got {value!r}']
    if flag == 'eps':
        if value is not None and (isinstance(value, bool) or not isinstance(value, (str, int, float))):
            return [f'eps must be a number or a string, got {value!r}']
        return []
    if flag in ('command', 'vars'):
        return [] if isinstance(value, str) else [f'{flag} must be a string, got {value!r}']
    if value is not None and not isinstance(value, str):
        return [f'{flag} must be a string, got {value!r}']
    return []


def _json_object(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except ValueError as err:
        raise ConfigurationError(f'Configuration is not valid JSON: {err}', [str(err)]) from err
    if not isinstance(data, dict):
        raise ConfigurationError('Configuration JSON must be an object', ['not an object'])
    return data


def _pair(text: str, kind: Callable[[str], Any]) -> Tuple[Any, Any]:
    parts = [part.strip() for part in str(text).split(',')]
    if len(parts) != 2:
        raise ValueError(f'Expected two values, got {text!r}')
    return kind(parts[0]), kind(parts[1])


def _load_json(text: str, what: str) -> Any:
    """ Inline JSON, or the path of a JSON file. """
    try:
        if text.lstrip().startswith(('{', '[')):
            return json.loads(text)
        with open(text, 'r', encoding='utf-8') as file:
            return json.load(file)
    except (OSError, ValueError) as err:
        raise ConfigurationError(f'Cannot read {what} from {text!r}: {err}', [f'invalid {what}']) from err


def _family(config: RunConfig) -> List[IntPoly]:
    return [parse_poly(text, config.variable_names) for text in config.polys]


def _lattice(text: str, dimension: int) -> AffineLattice:
    """ A lattice as JSON, or an integer N for N*Z^m. """
    if text.strip().lstrip('-').isdigit():
        return AffineLattice.scaled(int(text), [0] * dimension)
    return AffineLattice.from_dict(_load_json(text, 'lattice'))


def _rendered(family: Sequence[IntPoly]) -> List[str]:
    return [p.render() for p in family]


def _check_mod(config: RunConfig) -> Outcome:
    family = _family(config)
    report: Dict[str, Any] = {'family': _rendered(family)}
    if config.modulus is not None:
        outcome = solvable_mod(family, config.modulus)
        report['solvability'] = outcome.to_dict()
        if outcome.solvable:
            return Outcome(EXIT_VERIFIED, report)
        table = residue_table(family, config.modulus)
        certificate = counterexample_certificate(family, config.modulus, None if table is None else table.rows)
        return Outcome(EXIT_NEGATIVE, report, {CERTIFICATE_FILE: certificate.to_dict()})
    verdict = jointly_intersective_up_to(family, config.bound)
    report['bound'] = config.bound
    if isinstance(verdict, Counterexample):
        report['counterexample'] = str(verdict.modulus)
        return Outcome(EXIT_NEGATIVE, report, {CERTIFICATE_FILE: verdict.certificate.to_dict()})
    report['witnesses'] = {str(k): [str(x) for x in witness] for k, witness in sorted(verdict.witnesses.items())}
    return Outcome(EXIT_VERIFIED, report)


def _joint(config: RunConfig) -> Outcome:
    family = _family(config)
    bound = config.bound or DEFAULT_MODULUS_BOUND
    report: Dict[str, Any] = {'family': _rendered(family), 'bound': bound}
    artifacts: Dict[str, Artifact] = {}
    negative = False
    if family[0].num_vars == 1:
        reduction = reduce_joint_to_gcd(family, config.prime_bound, config.emax, bound)
        verdict = reduction.direct
        report['reduction'] = {'gcd': reduction.gcd.render(),
                               'cofactors': _rendered(reduction.cofactors),
                               'scale': str(reduction.scale),
                               'quotients': _rendered(reduction.quotients),
                               'gcd_verdict': reduction.decision.verdict.value,
                               'gcd_reason': reduction.decision.reason,
                               'family_modulus': None if reduction.family_modulus is None
                               else str(reduction.family_modulus)}
        artifacts[CERTIFICATE_FILE] = reduction.certificate.to_dict()
        negative = reduction.decision.verdict is Verdict.NOT_INTERSECTIVE
    else:
        verdict = jointly_intersective_up_to(family, bound)
        if isinstance(verdict, Counterexample):
            artifacts[CERTIFICATE_FILE] = verdict.certificate.to_dict()
    if isinstance(verdict, Counterexample):
        report['counterexample'] = str(verdict.modulus)
        negative = True
    else:
        report['counterexample'] = None
    return Outcome(EXIT_NEGATIVE if negative else EXIT_VERIFIED, report, artifacts)


_PROVE_STATUS = {Verdict.INTERSECTIVE: EXIT_VERIFIED, Verdict.NOT_INTERSECTIVE: EXIT_NEGATIVE,
                 Verdict.UNKNOWN: EXIT_BUDGET}


def _prove(config: RunConfig) -> Outcome:
    p = _family(config)[0]
    decision, certificate = intersective_decide_1var(p, config.prime_bound, config.emax,
                                                     config.bound or DEFAULT_MODULUS_BOUND)
    report = {'polynomial': p.render(), 'verdict': decision.verdict.value, 'reason': decision.reason,
              'modulus': None if decision.modulus is None else str(decision.modulus),
              'certificate_kind': certificate.kind.value, 'digest': certificate.digest}
    return Outcome(_PROVE_STATUS[decision.verdict], report, {CERTIFICATE_FILE: certificate.to_dict()})


def _verify_cert(config: RunConfig) -> Outcome:
    with open(config.cert, 'r', encoding='utf-8') as file:
        text = file.read()
    accepted = verify_certificate(text)
    report: Dict[str, Any] = {'certificate': config.cert, 'accepted': accepted}
    if not accepted:
        try:
            check_certificate(Certificate.from_json(text))
        except (CertificateError, PolynomialError, ValueError, TypeError, KeyError, ArithmeticError) as err:
            report['reason'] = str(err)
    return Outcome(EXIT_VERIFIED if accepted else EXIT_NEGATIVE, report)


def _lattice_refine(config: RunConfig) -> Outcome:
    family = _family(config)
    bound = config.bound or DEFAULT_MODULUS_BOUND
    report: Dict[str, Any] = {'family': _rendered(family), 'bound': bound}
    if config.sublattice is not None:
        lattice = domain_of(family)
        sub = _lattice(config.sublattice, lattice.dimension)
        columns = [[row[col] for row in sub.basis] for col in range(sub.dimension)]
        if sub.dimension != lattice.dimension or not all(lattice.in_subgroup(column) for column in columns):
            raise ConfigurationError(f'{sub!r} is not a sublattice of {lattice!r}', ['invalid --sublattice'])
        try:
            refinement = coset_refine(family, lattice, sub, bound)
        except LatticeError as err:
            report['failure'] = str(err)
            return Outcome(EXIT_NEGATIVE, report)
        report['coset'] = refinement.to_dict()
        return Outcome(EXIT_VERIFIED, report)
    try:
        proof = divisibility_sublattice(family, config.modulus, bound)
    except BudgetExceededError:
        raise
    except IntersectivityError as err:
        report['failure'] = str(err)
        return Outcome(EXIT_NEGATIVE, report)
    report['sublattice'] = proof.to_dict()
    return Outcome(EXIT_VERIFIED, report)


def _irrationals(config: RunConfig) -> List[Irrational]:
    irrationals = []
    for text in config.labels:
        label, _, value = text.partition('=')
        irrationals.append(Irrational(label.strip(), value.strip() or None))
    return irrationals


def _torus_point(text: str, labels: Sequence[str]) -> TorusPoint:
    """ JSON of a torus point, or comma separated coordinates like ``1/2 + alpha, 3*beta``. """
    if text.lstrip().startswith('{'):
        return TorusPoint.from_dict(_load_json(text, 'vector'))
    rational = []
    irrational: Dict[str, List[Fraction]] = {label: [] for label in labels}
    for coordinate in text.split(','):
        if not labels:
            rational.append(as_fraction(coordinate.strip()))
            continue
        value = parse_poly(coordinate, labels)
        if value.degree() > 1:
            raise TorusError(f'Coordinate {coordinate.strip()!r} is not linear in {list(labels)}')
        rational.append(value.constant_term())
        for index, label in enumerate(labels):
            exponent = [0] * len(labels)
            exponent[index] = 1
            irrational[label].append(value.coefficient(exponent))
    return TorusPoint(rational, irrational)


def _torus_closure(config: RunConfig) -> Outcome:
    family = _family(config)
    irrationals = _irrationals(config)
    names = [irrational.label for irrational in irrationals]
    vectors = [_torus_point(text, names) for text in config.vectors]
    domain = None if config.sublattice is None else _lattice(config.sublattice, family[0].num_vars)
    sequence = normalize_form(family, vectors, irrationals, domain)
    report: Dict[str, Any] = {'family': _rendered(family), 'sequence': sequence.to_dict()}
    try:
        closure = closure_with_zero(sequence, config.bound)
    except TorusError as err:
        report['failure'] = str(err)
        return Outcome(EXIT_NEGATIVE, report)
    report['closure'] = closure.to_dict()
    artifacts: Dict[str, Artifact] = {CLOSURE_FILE: {'sequence': sequence.to_dict(), **closure.to_dict()}}
    if any(irrational.value is None for irrational in irrationals):
        logger.warning('sampling skipped, not every label has a numeric value')
        report['sampling'] = None
        return Outcome(EXIT_VERIFIED, report, artifacts)
    sampled = sample_verify(sequence, closure.coset, config.box or DEFAULT_SAMPLE_RADIUS, lattice=closure.lattice)
    report['sampling'] = sampled.to_dict()
    return Outcome(EXIT_VERIFIED if sampled.consistent else EXIT_NEGATIVE, report, artifacts)


def _window_sets(texts: Sequence[str]) -> List[WindowSet]:
    return [WindowSet.from_dict(_load_json(text, 'set')) for text in texts]


def _scan(config: RunConfig) -> Outcome:
    family = _family(config)
    radius = config.box or DEFAULT_SCAN_RADIUS
    epsilon = None if config.eps is None else Fraction(str(config.eps))
    report: Dict[str, Any] = {'family': _rendered(family)}
    if config.cells:
        cells = partition_scan(_window_sets(config.cells), family, radius, epsilon)
        report['cells'] = [cell.to_dict() for cell in cells]
        good = all(cell.report.good for cell in cells)
        return Outcome(EXIT_VERIFIED if good else EXIT_NEGATIVE, report)
    if config.sets:
        sets = _window_sets(config.sets)
        if len(sets) == 1:
            density = good_set_scan(sets[0], family, radius, epsilon)
            report['scan'] = density.to_dict()
            status = EXIT_VERIFIED if density.good else EXIT_NEGATIVE
            return Outcome(status, report, {REPORT_CSV_FILE: density.to_csv()})
        combined = multi_set_scan(sets, family, radius, epsilon)
        report['scan'] = combined.to_dict()
        return Outcome(EXIT_VERIFIED if combined.common else EXIT_NEGATIVE, report)
    window = DEFAULT_OBSTRUCTION_WINDOW if config.window is None else _pair(config.window, int)
    try:
        obstruction = obstruction_demo(family, config.modulus, window, radius)
    except RecurrenceError as err:
        report['failure'] = str(err)
        return Outcome(EXIT_NEGATIVE, report)
    report['obstruction'] = obstruction.to_dict()
    return Outcome(EXIT_VERIFIED if obstruction.confirmed else EXIT_NEGATIVE, report)


def _toterg(config: RunConfig) -> Outcome:
    family = _family(config)
    arcs = ArcSet([_pair(text, float) for text in config.intervals])
    size = config.box or DEFAULT_ROTATION_BOX
    average = uc_average_circle(arcs, config.alpha, family, (1, size + 1))
    report = {'family': _rendered(family), 'alpha': config.alpha, 'arcs': [list(arc) for arc in arcs.arcs],
              'box': [1, size], 'average': average.to_dict()}
    tolerance = None if config.eps is None else float(Fraction(str(config.eps)))
    if tolerance is not None and average.deviation is not None and average.deviation > tolerance:
        return Outcome(EXIT_NEGATIVE, report)
    return Outcome(EXIT_VERIFIED, report)


def _empty_triple(config: RunConfig) -> Outcome:
    length = DEFAULT_TRIPLE_LENGTH
    if config.intervals:
        start, stop = _pair(config.intervals[0], float)
        if start != 0:
            raise ConfigurationError(f'empty-triple needs A = [0, h), got {config.intervals[0]}',
                                     ['--interval must start at 0'])
        length = stop
    size = config.box or DEFAULT_ROTATION_BOX
    triple = empty_triple_check(config.alpha, length, (1, size + 1))
    report = {'alpha': config.alpha, 'range': [1, size], 'triple': triple.to_dict()}
    return Outcome(EXIT_VERIFIED if triple.all_empty else EXIT_NEGATIVE, report)


def _multidim(config: RunConfig) -> Outcome:
    names = config.variable_names
    maps = [RationalVectorPoly([parse_poly(component, names) for component in text.split(',')])
            for text in config.polys]
    result = multidim_bounded_check(maps, config.index_bound)
    failure = result.first_failure
    report = {'maps': [[component.render() for component in vector.components] for vector in maps],
              'index_bound': config.index_bound,
              'subgroups': [{'subgroup': verdict.subgroup.to_dict(),
                             'witness': None if verdict.witness is None else [str(x) for x in verdict.witness]}
                            for verdict in result.verdicts],
              'first_failure': None if failure is None else failure.to_dict()}
    return Outcome(EXIT_VERIFIED if result.success else EXIT_NEGATIVE, report)


_HANDLERS: Dict[str, Callable[[RunConfig], Outcome]] = {
    'check-mod': _check_mod,
    'joint': _joint,
    'prove': _prove,
    'verify-cert': _verify_cert,
    'lattice-refine': _lattice_refine,
    'torus-closure': _torus_closure,
    'scan': _scan,
    'toterg': _toterg,
    'empty-triple': _empty_triple,
    'multidim': _multidim,
}


def _error_payload(err: Exception, status: int) -> Dict[str, Any]:
    payload: Dict[str, Any] = {'error': type(err).__name__, 'message': str(err), 'exit_code': status}
    if isinstance(err, ConfigurationError):
        payload['errors'] = err.errors
    if isinstance(err, PolynomialParseError):
        payload['position'] = err.position
    if isinstance(err, BudgetExceededError):
        payload['last_verified_bound'] = err.last_verified_bound
    return payload


def _fail(err: Exception, status: int) -> int:
    sys.stderr.write(json.dumps(_error_payload(err, status), sort_keys=True) + '\n')
    return status


def _persist(config: RunConfig, outcome: Outcome) -> None:
    report = {'command': config.command, 'config': config.to_dict(), 'exit_code': outcome.status, **outcome.report}
    sys.stdout.write(canonical_json(report))
    if config.out is None:
        return
    digests = {REPORT_FILE: write_json(os.path.join(config.out, REPORT_FILE), report)}
    for name, artifact in sorted(outcome.artifacts.items()):
        path = os.path.join(config.out, name)
        digests[name] = write_text(path, artifact) if isinstance(artifact, str) else write_json(path, artifact)
    write_metadata(config.out, config.command, config.to_dict(), digests)


def run(config: RunConfig) -> int:
    """ Validate the configuration, run its command and write the artifacts.

    :param config: the run configuration.
    :return: the exit status; errors are reported on stderr as JSON.
    """
    try:
        errors = config.validate()
        if errors:
            raise ConfigurationError(f'Invalid configuration for {config.command}', errors)
        outcome = _HANDLERS[config.command](config)
        _persist(config, outcome)
    except BudgetExceededError as err:
        return _fail(err, EXIT_BUDGET)
    except (ConfigurationError, PolynomialError, LatticeError, IntersectivityError, TorusError, RecurrenceError,
            CertificateError, ValueError, OSError) as err:
        return _fail(err, EXIT_USAGE)
    except Exception as err:  # pylint: disable=broad-except
        logger.exception('%s failed unexpectedly', config.command)
        return _fail(err, EXIT_USAGE)
    logger.info('%s finished with exit code %d', config.command, outcome.status)
    return outcome.status


class _ArgumentParser(argparse.ArgumentParser):
    """ Reports usage errors as :class:`ConfigurationError` instead of exiting. """

    def error(self, message: str) -> NoReturn:
        raise ConfigurationError(f'Invalid arguments: {message}', [message])


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='polyrecurrence', argument_default=argparse.SUPPRESS,
                             description='Intersectivity, lattice refinements, torus closures and recurrence scans '
                                         'for integral polynomials.')
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('-p', dest='p', action='append', help='polynomial, repeatable; a map for multidim, '
                                                              'components separated by commas')
    parser.add_argument('--vars', help='variable names, comma separated (default: n)')
    parser.add_argument('-k', type=int, help='modulus k')
    parser.add_argument('-B', type=int, help='modulus bound B')
    parser.add_argument('-Q', type=int, help=f'prime bound Q (default: {DEFAULT_PRIME_BOUND})')
    parser.add_argument('--emax', type=int, help=f'Hensel precision (default: {DEFAULT_PRECISION})')
    parser.add_argument('--box', type=int, help='box radius or size N')
    parser.add_argument('--eps', help='threshold epsilon, decimal or fraction')
    parser.add_argument('--alpha', help='rotation number, a decimal, a name like sqrt2 or an expression')
    parser.add_argument('--out', help='artifact directory')
    parser.add_argument('--config', help='JSON configuration file, keys are flag names')
    parser.add_argument('--seed', type=int, help='seed recorded with the run')
    parser.add_argument('--verbose', action='store_true', help='debug logging')
    parser.add_argument('--cert', help='certificate file for verify-cert')
    parser.add_argument('--set', dest='set', action='append', help='window set as JSON or a JSON file, repeatable')
    parser.add_argument('--cells', dest='cells', action='append', help='partition cell as JSON, repeatable')
    parser.add_argument('--interval', dest='interval', action='append', help='arc a,b, repeatable')
    parser.add_argument('--vector', dest='vector', action='append', help='torus vector for the matching -p')
    parser.add_argument('--label', dest='label', action='append', help='irrational label name=value, repeatable')
    parser.add_argument('--index-bound', dest='index-bound', type=int, help='largest subgroup index for multidim')
    parser.add_argument('--sublattice', help='lattice as JSON, or an integer N for N*Z^m')
    parser.add_argument('--window', help='window M,N of the obstruction scan')
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """ Build the configuration from the command line and the optional ``--config`` file.

    :raises ConfigurationError: on invalid arguments or an unreadable configuration file.
    """
    namespace = vars(_build_parser().parse_args(argv))
    data: Dict[str, Any] = {}
    path = namespace.pop('config', None)
    if path is not None:
        try:
            with open(path, 'r', encoding='utf-8') as file:
                data = _json_object(file.read())
        except OSError as err:
            raise ConfigurationError(f'Cannot read configuration {path}: {err}', [str(err)]) from err
    data.update(namespace)
    return RunConfig.from_dict(data)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_args(argv)
    except ConfigurationError as err:
        return _fail(err, EXIT_USAGE)
    logging.basicConfig(level=logging.DEBUG if config.verbose else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    return run(config)


if __name__ == '__main__':
    sys.exit(main())
