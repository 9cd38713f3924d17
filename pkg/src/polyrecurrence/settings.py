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
Module settings
===============

The following functions use a resource file to store default numeric settings of the
decision procedures and scans. The default location of this resource file is
:file:`.polyrecurrence/settings.json` in the user's home directory.
This default location is indicated with `DEFAULT_SETTINGS_FILE` in the following function signatures.

Known settings and their defaults:

=====================  ===========  ==========================================
name                   default      environment variable
=====================  ===========  ==========================================
residue_budget         100000000    :envvar:`POLYRECURRENCE_RESIDUE_BUDGET`
guard_band             1e-12        :envvar:`POLYRECURRENCE_GUARD_BAND`
tolerance              1e-9         :envvar:`POLYRECURRENCE_TOLERANCE`
max_samples            100000       :envvar:`POLYRECURRENCE_MAX_SAMPLES`
precision_digits       50           :envvar:`POLYRECURRENCE_PRECISION_DIGITS`
coset_verify_bound     100          :envvar:`POLYRECURRENCE_COSET_VERIFY_BOUND`
=====================  ===========  ==========================================

.. autofunction:: load_settings(filename: str = DEFAULT_SETTINGS_FILE) -> Dict[str, Any]
.. autofunction:: read_settings(filename: str = DEFAULT_SETTINGS_FILE) -> Dict[str, Any]
.. autofunction:: store_settings(settings: Dict[str, Any], filename: str = DEFAULT_SETTINGS_FILE, overwrite: bool = False) -> None
.. autofunction:: save_settings(settings: Dict[str, Any], filename: str = DEFAULT_SETTINGS_FILE) -> None
.. autofunction:: get_setting(name: str, filename: str = DEFAULT_SETTINGS_FILE) -> Any

"""

import json
import os
from typing import Any, Callable, Dict
import warnings

from polyrecurrence.exceptions import ConfigurationError

DEFAULT_SETTINGS_FILE = os.path.join(os.path.expanduser("~"), '.polyrecurrence', 'settings.json')

DEFAULT_SETTINGS: Dict[str, Any] = {
    'residue_budget': 10 ** 8,
    'guard_band': 1e-12,
    'tolerance': 1e-9,
    'max_samples': 10 ** 5,
    'precision_digits': 50,
    'coset_verify_bound': 100,
}

_CONVERTERS: Dict[str, Callable[[Any], Any]] = {
    'residue_budget': int,
    'guard_band': float,
    'tolerance': float,
    'max_samples': int,
    'precision_digits': int,
    'coset_verify_bound': int,
}


def _environment_name(name: str) -> str:
    return f'POLYRECURRENCE_{name.upper()}'


def _convert(name: str, value: Any) -> Any:
    try:
        converted = _CONVERTERS[name](value)
    except (TypeError, ValueError) as err:
        raise ConfigurationError(f'Invalid value {value!r} for setting {name}', [name]) from err
    if converted <= 0:
        raise ConfigurationError(f'Setting {name} must be positive, got {converted}', [name])
    return converted


def read_settings(filename: str = DEFAULT_SETTINGS_FILE) -> Dict[str, Any]:
    """ Try to read earlier stored settings from file.

    Unknown keys in the file are ignored with a warning.

    :param filename: full path to the resource file. If no filename is given, the default resource file
        :file:`.polyrecurrence/settings.json` in the user's home directory is used.

    :return:
        The stored settings, an empty dictionary when the file does not exist or is invalid.
    """
    try:
        with open(filename, 'r', encoding='utf-8') as file:
            stored = json.load(file)
    except (OSError, ValueError):  # file does not exist or is empty/invalid
        return {}
    if not isinstance(stored, dict):
        return {}
    settings = {}
    for name, value in stored.items():
        if name not in DEFAULT_SETTINGS:
            warnings.warn(f'Unknown setting {name} in {filename} is ignored.')
            continue
        settings[name] = _convert(name, value)
    return settings


def load_settings(filename: str = DEFAULT_SETTINGS_FILE) -> Dict[str, Any]:
    """ Load the effective settings.

    Every setting is looked up in the following order:

        1. In the environment variable :envvar:`POLYRECURRENCE_<NAME>`.
        2. In the file with `filename` given or, when not given, the default resource file.
        3. In the built-in defaults.

    :param filename: full path to the resource file.
    :return:
        A dictionary with a value for every known setting.
    """
    settings = dict(DEFAULT_SETTINGS)
    settings.update(read_settings(filename))
    for name in DEFAULT_SETTINGS:
        value = os.environ.get(_environment_name(name), None)
        if value:
            settings[name] = _convert(name, value)
    return settings


def get_setting(name: str, filename: str = DEFAULT_SETTINGS_FILE) -> Any:
    """ Get the effective value of a single setting.

    :param name: name of the setting.
    :param filename: full path to the resource file.

    :raises ConfigurationError: when the setting is unknown.
    :return:
        The effective value.
    """
    if name not in DEFAULT_SETTINGS:
        raise ConfigurationError(f'Unknown setting {name}', [name])
    return load_settings(filename)[name]


def store_settings(settings: Dict[str, Any], filename: str = DEFAULT_SETTINGS_FILE, overwrite: bool = False) -> None:
    """Store settings in the resource file.

    Replace already stored values only when overwrite=True.

    :param settings: the settings to store.
    :param filename: full path to the resource file.
    :param overwrite: overwrite values that are already present with a different value.
    """
    stored = read_settings(filename)
    merged = dict(stored)
    for name, value in settings.items():
        if name in stored and stored[name] != value and not overwrite:
            warnings.warn(f'Setting {name} already present. Set overwrite=True to overwrite.')
            continue
        merged[name] = value
    save_settings(merged, filename)


def save_settings(settings: Dict[str, Any], filename: str = DEFAULT_SETTINGS_FILE) -> None:
    """Save settings to a file.

    Existing content of the file is replaced. Use :meth:`~.store_settings` to prevent overwriting.

    :param settings: the settings to save. Every key must be a known setting.
    :param filename: full path to the resource file.

    :raises ConfigurationError: when a setting is unknown or has an invalid value.
    """
    errors = [name for name in settings if name not in DEFAULT_SETTINGS]
    if errors:
        raise ConfigurationError(f'Unknown settings: {", ".join(errors)}', errors)
    checked = {name: _convert(name, value) for name, value in settings.items()}
    os.makedirs(os.path.dirname(filename), exist_ok=True)
    with open(filename, 'w', encoding='utf-8') as settings_file:
        json.dump(checked, settings_file, indent=2, sort_keys=True)
