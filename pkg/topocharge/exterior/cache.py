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
"""Class used to manage tabulated transforms on disk and in memory."""
import logging
import threading
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import joblib
import numpy as np

from ..utils import content_hash, resolve_cache_dir

logger = logging.getLogger('topocharge')

Table = Dict[str, np.ndarray]

# joblib names every stored result this
RESULT_FILE = 'output.pkl'


def _tabulate(key: str, compute: Callable[[], Table]) -> Table:
    logger.debug("Transform cache miss for %s", key)
    return compute()


class TransformCache:
    """
    Write-once store of tabulated transforms, keyed by the content hash
    of whatever generated them. Should be used as a singleton, see
    get_cache() and set_cache().

    Disk storage is a joblib.Memory rooted at the cache directory; only
    the key takes part in its hash. Tables also stay in memory for the
    lifetime of the instance.
    """
    FORMAT_VERSION = 2

    def __init__(self, directory: Optional[Path] = None,
                 persistent: bool = True):
        self.directory = Path(directory) if directory else resolve_cache_dir()
        self.persistent = persistent
        self.memory = joblib.Memory(
            str(self.directory) if persistent else None, verbose=0)
        self._tabulate = self.memory.cache(_tabulate, ignore=['compute'])
        self._tables: Dict[str, Table] = {}
        self._lock = threading.Lock()

    def key_for(self, kind: str, payload: Any) -> str:
        """Cache key of a table of the given kind generated from payload."""
        return '{}-{}'.format(kind, content_hash(
            {'kind': kind, 'payload': payload,
             'version': self.FORMAT_VERSION}))

    def get_or_compute(self, kind: str, payload: Any,
                       compute: Callable[[], Table]) -> Table:
        """
        Return the table for (kind, payload), computing it if needed.
        :param kind: table family, e.g. 'radial' or 'hankel'
        :param payload: JSON-serializable description of the generator
        :param compute: callable producing the table arrays
        :return: dict of arrays
        """
        key = self.key_for(kind, payload)
        with self._lock:
            if key in self._tables:
                return self._tables[key]

        table = self._tabulate(key, compute)

        with self._lock:
            # racing callers computed identical tables; keep the first
            return self._tables.setdefault(key, table)

    def entries(self) -> List[Path]:
        """Result files currently stored on disk."""
        if not self.persistent or not self.directory.exists():
            return []
        return sorted(self.directory.rglob(RESULT_FILE))

    def clear(self) -> int:
        """Remove every cached table. Returns the number of entries
        removed from disk."""
        with self._lock:
            self._tables.clear()
        removed = len(self.entries())
        self.memory.clear(warn=False)
        return removed


_CACHE: Optional[TransformCache] = None
_RESET_HOOKS: List[Callable[[], None]] = []


def get_cache() -> TransformCache:
    """The process-wide transform cache."""
    global _CACHE  # pylint: disable=global-statement
    if _CACHE is None:
        _CACHE = TransformCache()
    return _CACHE


def on_cache_change(hook: Callable[[], None]) -> Callable[[], None]:
    """Register a callable run whenever set_cache() replaces the cache,
    e.g. to drop objects holding on to the previous one."""
    _RESET_HOOKS.append(hook)
    return hook


def set_cache(cache: TransformCache):
    """Replace the process-wide transform cache."""
    global _CACHE  # pylint: disable=global-statement
    _CACHE = cache
    for hook in _RESET_HOOKS:
        hook()
