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
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
# pylint: disable=missing-module-docstring
import numpy as np
import pytest

from ..exterior import cache as cache_module
from ..exterior.cache import (TransformCache, get_cache, on_cache_change,
                              set_cache)
from ..exterior.profiles import Profile1D
from ..exterior.radial import radial_profile
from ..utils import CACHE_ENV_VAR


class Counter:
    def __init__(self):
        self.calls = 0

    def __call__(self):
        self.calls += 1
        return {'x': np.arange(3.0), 'y': np.eye(2)}


def test_compute_once(tmp_path):
    cache = TransformCache(tmp_path)
    counter = Counter()
    first = cache.get_or_compute('radial', {'width': 0.1}, counter)
    second = cache.get_or_compute('radial', {'width': 0.1}, counter)
    assert counter.calls == 1
    assert first is second
    assert np.array_equal(first['x'], [0.0, 1.0, 2.0])
    assert len(cache.entries()) == 1


def test_different_payloads_are_different_entries(tmp_path):
    cache = TransformCache(tmp_path)
    counter = Counter()
    cache.get_or_compute('radial', {'width': 0.1}, counter)
    cache.get_or_compute('radial', {'width': 0.2}, counter)
    cache.get_or_compute('hankel', {'width': 0.1}, counter)
    assert counter.calls == 3
    assert len(cache.entries()) == 3


def test_fresh_instance_loads_from_disk(tmp_path):
    counter = Counter()
    TransformCache(tmp_path).get_or_compute('radial', [1, 2], counter)
    loaded = TransformCache(tmp_path).get_or_compute('radial', [1, 2],
                                                     counter)
    assert counter.calls == 1
    assert np.array_equal(loaded['y'], np.eye(2))
    assert set(loaded) == {'x', 'y'}


def test_corrupted_entry_recomputed(tmp_path):
    TransformCache(tmp_path).get_or_compute('radial', 'payload', Counter())
    entry, = TransformCache(tmp_path).entries()
    entry.write_bytes(b'not a pickle')
    counter = Counter()
    table = TransformCache(tmp_path).get_or_compute('radial', 'payload',
                                                    counter)
    assert counter.calls == 1
    assert np.array_equal(table['x'], [0.0, 1.0, 2.0])


def test_failed_compute_stores_nothing(tmp_path):
    cache = TransformCache(tmp_path)

    def broken():
        raise ArithmeticError('table diverged')

    with pytest.raises(ArithmeticError):
        cache.get_or_compute('radial', 'payload', broken)
    assert cache.entries() == []
    assert not [path for path in tmp_path.rglob('*') if path.is_file()
                and path.name.startswith('output.pkl')]
    counter = Counter()
    cache.get_or_compute('radial', 'payload', counter)
    assert counter.calls == 1
    assert len(cache.entries()) == 1


def test_clear(tmp_path):
    cache = TransformCache(tmp_path)
    cache.get_or_compute('radial', 1, Counter())
    cache.get_or_compute('radial', 2, Counter())
    assert cache.clear() == 2
    assert cache.entries() == []
    counter = Counter()
    cache.get_or_compute('radial', 1, counter)
    assert counter.calls == 1


def test_clear_missing_directory(tmp_path):
    assert TransformCache(tmp_path / 'absent').clear() == 0


def test_not_persistent(tmp_path):
    directory = tmp_path / 'tables'
    cache = TransformCache(directory, persistent=False)
    counter = Counter()
    cache.get_or_compute('radial', 1, counter)
    cache.get_or_compute('radial', 1, counter)
    assert counter.calls == 1
    assert not directory.exists()
    assert cache.entries() == []


def test_location_follows_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / 'from-env'))
    cache = TransformCache()
    assert cache.directory == tmp_path / 'from-env'
    assert cache.memory.location == str(tmp_path / 'from-env')


def test_set_cache(tmp_path):
    previous = get_cache()
    replacement = TransformCache(tmp_path)
    try:
        set_cache(replacement)
        assert get_cache() is replacement
        assert cache_module.get_cache() is replacement
    finally:
        set_cache(previous)


def test_set_cache_rebinds_radial_profiles(tmp_path):
    previous = get_cache()
    source = Profile1D('bump', 0.0, 0.05)
    before = radial_profile(source)
    replacement = TransformCache(tmp_path)
    try:
        set_cache(replacement)
        after = radial_profile(source)
        assert after is not before
        assert replacement.entries()
        assert after.plateau == pytest.approx(before.plateau, rel=1e-12)
    finally:
        set_cache(previous)
    assert radial_profile(source) is not after


def test_cache_change_hooks(tmp_path, monkeypatch):
    monkeypatch.setattr(cache_module, '_RESET_HOOKS', [])
    calls = []
    on_cache_change(lambda: calls.append('reset'))
    previous = get_cache()
    try:
        set_cache(TransformCache(tmp_path))
    finally:
        set_cache(previous)
    assert calls == ['reset', 'reset']
