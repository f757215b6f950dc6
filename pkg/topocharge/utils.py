# -*- encoding: utf8 -*-
#
# topocharge: topological charges of the free Maxwell field, numerically
#
# Copyright (C) 2024 The topocharge developers
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation; either version 2.1 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program; if not, see <http://www.gnu.org/licenses/>.
"""Small helpers shared by all subpackages."""
import hashlib
import json
import os
from pathlib import Path
from typing import Any, Optional

CACHE_ENV_VAR = 'TOPOCHARGE_CACHE_DIR'
DEFAULT_CACHE_DIR = Path.home() / '.cache' / 'topocharge'


def content_hash(payload: Any) -> str:
    """SHA-256 of a JSON-serializable payload, stable across runs and
    platforms (keys sorted, floats written with repr)."""
    text = json.dumps(payload, sort_keys=True, default=repr)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def resolve_cache_dir(explicit: Optional[str] = None) -> Path:
    """Cache directory: explicit value, then the environment variable, then
    the per-user default."""
    if explicit:
        return Path(explicit).expanduser()
    from_env = os.environ.get(CACHE_ENV_VAR)
    if from_env:
        return Path(from_env).expanduser()
    return DEFAULT_CACHE_DIR
