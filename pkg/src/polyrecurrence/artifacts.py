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
Module artifacts
================

Deterministic artifact files. Every artifact is written atomically (temporary file plus rename) with
sorted keys, so identical runs produce byte-identical files. Run timestamps live only in the separate
:file:`metadata.json`.

.. autofunction:: write_json
.. autofunction:: write_text
.. autofunction:: write_metadata
"""
from datetime import datetime, timezone
import hashlib
import json
import logging
import os
from typing import Any, Dict, Sequence

from polyrecurrence.version import __version__

logger = logging.getLogger(__name__)

METADATA_FILE = 'metadata.json'


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def write_text(path: str, text: str) -> str:
    """ Atomically write `text` to `path`, creating the directory when needed.

    :return: the SHA-256 digest of the written bytes.
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    data = text.encode('utf-8')
    temporary = f'{path}.tmp'
    with open(temporary, 'wb') as file:
        file.write(data)
    os.replace(temporary, path)
    logger.info('wrote %s', path)
    return hashlib.sha256(data).hexdigest()


def write_json(path: str, payload: Any) -> str:
    """ Atomically write `payload` as canonical JSON.

    :return: the SHA-256 digest of the written bytes.
    """
    return write_text(path, canonical_json(payload))


def write_metadata(directory: str, command: str, config: Dict[str, Any], digests: Dict[str, str],
                   notes: Sequence[str] = ()) -> str:
    """ Write :file:`metadata.json` with the run time, version, configuration and artifact digests. """
    metadata = {'command': command,
                'version': __version__,
                'finished': datetime.now(timezone.utc).isoformat(),
                'config': config,
                'artifacts': digests,
                'notes': list(notes)}
    return write_json(os.path.join(directory, METADATA_FILE), metadata)
