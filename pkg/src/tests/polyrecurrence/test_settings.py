""" Polyrecurrence

Copyright 2026 The Polyrecurrence Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import json
import os
import tempfile
from unittest import TestCase
from unittest.mock import mock_open, patch

from polyrecurrence.exceptions import ConfigurationError
from polyrecurrence.settings import (DEFAULT_SETTINGS, get_setting, load_settings, read_settings, save_settings,
                                     store_settings)

CLEAN_ENVIRONMENT = {f'POLYRECURRENCE_{name.upper()}': '' for name in DEFAULT_SETTINGS}


class TestSettings(TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.filename = os.path.join(self.directory.name, 'config', 'settings.json')

    def tearDown(self):
        self.directory.cleanup()

    def test_defaults_without_file(self):
        with patch.dict('os.environ', values=CLEAN_ENVIRONMENT):
            self.assertEqual(load_settings(self.filename), DEFAULT_SETTINGS)
            self.assertEqual(read_settings(self.filename), {})

    def test_environment_overrides_file(self):
        save_settings({'residue_budget': 1000, 'tolerance': 0.5}, self.filename)
        environment = dict(CLEAN_ENVIRONMENT, POLYRECURRENCE_RESIDUE_BUDGET='500')
        with patch.dict('os.environ', values=environment):
            settings = load_settings(self.filename)
        self.assertEqual(settings['residue_budget'], 500)
        self.assertEqual(settings['tolerance'], 0.5)
        self.assertEqual(settings['max_samples'], DEFAULT_SETTINGS['max_samples'])

    def test_invalid_environment_value(self):
        with patch.dict('os.environ', values=dict(CLEAN_ENVIRONMENT, POLYRECURRENCE_MAX_SAMPLES='many')):
            with self.assertRaisesRegex(ConfigurationError, 'Invalid value') as context:
                load_settings(self.filename)
        self.assertEqual(context.exception.errors, ['max_samples'])
        with patch.dict('os.environ', values=dict(CLEAN_ENVIRONMENT, POLYRECURRENCE_GUARD_BAND='-1')):
            with self.assertRaisesRegex(ConfigurationError, 'must be positive'):
                load_settings(self.filename)

    def test_read_ignores_unknown_keys(self):
        with patch('builtins.open', mock_open(read_data='{"tolerance": 0.25, "colour": "blue"}')) as mock_file:
            with self.assertWarnsRegex(UserWarning, 'Unknown setting colour'):
                settings = read_settings('path/to/settings.json')
            mock_file.assert_called_with('path/to/settings.json', 'r', encoding='utf-8')
        self.assertEqual(settings, {'tolerance': 0.25})

    def test_read_invalid_file(self):
        for content in ('', 'not json', '[1, 2]'):
            with self.subTest(content=content):
                with patch('builtins.open', mock_open(read_data=content)):
                    self.assertEqual(read_settings('path/to/settings.json'), {})

    def test_store_keeps_existing_values(self):
        save_settings({'precision_digits': 30}, self.filename)
        with self.assertWarnsRegex(UserWarning, 'already present'):
            store_settings({'precision_digits': 60, 'max_samples': 10}, self.filename)
        self.assertEqual(read_settings(self.filename), {'precision_digits': 30, 'max_samples': 10})
        store_settings({'precision_digits': 60}, self.filename, overwrite=True)
        self.assertEqual(read_settings(self.filename)['precision_digits'], 60)

    def test_saved_file_is_sorted_json(self):
        save_settings({'tolerance': 0.5, 'guard_band': 1e-6}, self.filename)
        with open(self.filename, encoding='utf-8') as file:
            content = file.read()
        self.assertEqual(list(json.loads(content)), ['guard_band', 'tolerance'])

    def test_save_unknown_setting(self):
        with self.assertRaisesRegex(ConfigurationError, 'Unknown settings: colour') as context:
            save_settings({'colour': 'blue', 'tolerance': 0.5}, self.filename)
        self.assertEqual(context.exception.errors, ['colour'])
        self.assertFalse(os.path.exists(self.filename))

    def test_get_setting(self):
        save_settings({'coset_verify_bound': 7}, self.filename)
        with patch.dict('os.environ', values=CLEAN_ENVIRONMENT):
            self.assertEqual(get_setting('coset_verify_bound', self.filename), 7)
        with self.assertRaisesRegex(ConfigurationError, 'Unknown setting'):
            get_setting('colour', self.filename)
