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
import logging
import math

import numpy as np
import pytest

from ..charge.states import MULTIPLET
from ..exc import PositivityViolationError
from ..loops.loop_functions import canonical_smear, loop_function
from ..multiplet.doublet import (DoubletForm, min_norm, multiplet_state,
                                 omega_zeta, so2_rotate, zeta_commutator,
                                 zeta_inner)
from ..propagator.commutator import inner0, roberts

from .test_commutator import box_form, close
from .test_curves import helix_loop


@pytest.fixture
def doublets(hopf_pair, electric_partner):
    first, second = hopf_pair
    return (DoubletForm.from_pieces(first, electric_partner, 'a'),
            DoubletForm(box_form(0, 2, (0.1, 0.3, 0.0, -0.2)),
                        second.coprimitive, 'b'))


def test_from_pieces(hopf_pair, alpha, beta, b_profile):
    doublet = DoubletForm.from_pieces(hopf_pair[0], label='u only')
    assert doublet.u is hopf_pair[0].coprimitive
    assert not doublet.d.terms
    assert doublet.label == 'u only'
    helix = loop_function(canonical_smear(alpha, beta, b_profile),
                          helix_loop())
    with pytest.raises(ValueError):
        DoubletForm.from_pieces(hopf_pair[0], helix)


def test_fourier_shape(doublets):
    momenta = np.array([[1.0, 1.0, 0.0, 0.0], [2.0, 0.0, 1.2, -1.6]])
    stacked = doublets[0].fourier(momenta)
    assert stacked.shape == (2, 2, 6)
    assert np.array_equal(stacked[:, 1], doublets[0].d.fourier(momenta))


def test_zeta_zero_is_free(doublets, tiny_spec):
    first, _ = doublets
    only_u = DoubletForm(first.u)
    assert zeta_inner(only_u, only_u, 0.0, tiny_spec).value == \
        inner0(first.u, first.u, tiny_spec).value


def test_commutator_is_imaginary_part(doublets, tiny_spec):
    first, second = doublets
    for zeta in (-1.0, 0.0, 0.4, 1.0):
        inner = zeta_inner(first, second, zeta, tiny_spec)
        commutator = zeta_commutator(first, second, zeta, tiny_spec)
        assert close(commutator, inner.imag * -2.0)


def test_commutator_couples_through_dual(doublets, tiny_spec):
    first, second = doublets
    only_u = DoubletForm(first.u)
    only_d = DoubletForm(d=second.d)
    result = zeta_commutator(only_u, only_d, 0.5, tiny_spec)
    assert close(result, roberts(first.u, second.d, tiny_spec) * 0.5)


def test_so2_invariance(doublets, tiny_spec):
    first, second = doublets
    for zeta in (0.0, 0.7):
        expected = zeta_inner(first, second, zeta, tiny_spec)
        for theta in (0.3, math.pi / 2, 2.0):
            rotated = zeta_inner(so2_rotate(first, theta),
                                 so2_rotate(second, theta), zeta, tiny_spec)
            assert abs(rotated.value - expected.value) <= \
                1e-9 * max(expected.magnitude, rotated.magnitude)


def test_positivity_violation(hopf_pair, coarse_spec):
    form = hopf_pair[0].coprimitive
    doublet = DoubletForm(form, form.star())
    with pytest.raises(PositivityViolationError):
        omega_zeta(1.0, doublet, 2.0, coarse_spec)
    assert omega_zeta(0.0, doublet, 2.0, coarse_spec) == 1.0


def test_min_norm(hopf_pair, tiny_spec):
    form = hopf_pair[0].coprimitive
    sample = [DoubletForm(form), DoubletForm(form, form.star())]
    result = min_norm(sample, 1.0, tiny_spec)
    single = zeta_inner(sample[0], sample[0], 1.0, tiny_spec)
    assert result.value == pytest.approx(0.0, abs=1e-9 * single.magnitude)
    assert single.value > result.value


def test_warns_outside_unit_interval(doublets, tiny_spec, caplog):
    first, _ = doublets
    with caplog.at_level(logging.WARNING, logger='topocharge'):
        zeta_inner(first, first, 1.5, tiny_spec)
    assert 'outside [-1, 1]' in caplog.text


def test_multiplet_state(doublets, tiny_spec):
    first, second = doublets
    state = multiplet_state(0.5, tiny_spec)
    assert state.kind == MULTIPLET
    assert state.parameters == {'zeta': 0.5}
    norm = zeta_inner(first, first, 0.5, tiny_spec)
    assert state.evaluate(2.0, first) == pytest.approx(
        math.exp(-2.0 * max(norm.value.real, 0.0)))
    assert state.sigma(first, second).value == \
        zeta_commutator(first, second, 0.5, tiny_spec).value
