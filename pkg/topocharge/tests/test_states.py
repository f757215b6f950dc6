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
import cmath
import logging
import math

import pytest

from ..charge import states
from ..charge.states import (FREE, PRODUCT, TOPOLOGICAL, ChargeCheck,
                             CheckResult, GeneratingFunctional,
                             LocalityCheck, NormalizationCheck,
                             RelationCheck, coprimitive_of, free_state,
                             group_commutator, omega_0, omega_T, s_product,
                             sigma, topological_state, trivial_state,
                             verify_relations)
from ..exterior.forms import OneForm
from ..loops.loop_functions import canonical_smear, loop_function
from ..propagator.commutator import inner0, pauli_jordan
from ..propagator.quadrature import IntegralResult

from .test_curves import helix_loop


def fake_state(kind='fake', error=1e-3):
    """Numbers stand in for test forms: q(g) = g, sigma(g1, g2) =
    g1 - g2."""
    return GeneratingFunctional(
        kind,
        lambda g: IntegralResult(g, error, 0),
        lambda g1, g2: IntegralResult(g1 - g2, error, 0, magnitude=1.0))


class BrokenCheck(RelationCheck):
    name = 'broken'

    def run(self, state):
        raise RuntimeError('not available')


def test_evaluate():
    state = fake_state()
    assert state.evaluate(0.0, 3.0) == 1.0
    assert state.evaluate(2.0, 0.5) == pytest.approx(math.exp(-1.0))
    assert state.evaluate_many([1.0, 2.0], 0.5) == [
        pytest.approx(math.exp(-0.25)), pytest.approx(math.exp(-1.0))]


def test_normalization_check():
    assert NormalizationCheck(0.5).run(fake_state()).passed
    failed = NormalizationCheck(-1.0).run(fake_state())
    assert not failed.passed
    assert failed.detail == 'q(g) = -1.000e+00 < 0'
    assert NormalizationCheck(-1e-4).run(fake_state()).passed


def test_negative_quadratic_form_is_clamped(caplog):
    state = fake_state()
    with caplog.at_level(logging.DEBUG, logger='topocharge'):
        assert state.evaluate_many([0.5, 2.0], -1e-4) == [1.0, 1.0]
    assert not [record for record in caplog.records
                if record.levelno >= logging.WARNING]
    with caplog.at_level(logging.WARNING, logger='topocharge'):
        assert state.evaluate(3.0, -1.0) == 1.0
    assert 'Negative quadratic form q = -1.000e+00' in caplog.text
    assert all(0.0 < value <= 1.0 for value
               in state.evaluate_many([0.5, 1.0, 4.0], 0.3))


def test_locality_check():
    state = fake_state()
    assert LocalityCheck([(1.0, 1.0), (2.0, 2.0)]).run(state).passed
    failed = LocalityCheck([(1.0, 1.0), (1.0, 2.0)]).run(state)
    assert not failed.passed
    assert failed.detail.startswith('sigma = ')


def test_charge_check():
    state = fake_state()
    assert ChargeCheck(2.0, 1.0, charged=True).run(state).passed
    assert not ChargeCheck(2.0, 1.0, charged=False).run(state).passed
    assert ChargeCheck(1.0, 1.0, charged=False).run(state).passed


def test_verify_relations(caplog):
    state = fake_state()
    with caplog.at_level(logging.WARNING, logger='topocharge'):
        report = verify_relations(
            state, [NormalizationCheck(0.5), BrokenCheck()],
            charge=ChargeCheck(2.0, 1.0, charged=True))
    assert [result.name for result in report.results] == \
        ['normalization', 'broken', 'centrality', 'charge']
    assert not report.passed
    assert report.as_dict()['broken'] == {'passed': False,
                                          'detail': 'not available'}
    assert 'Relation check broken failed' in caplog.text


def test_verify_relations_passing():
    report = verify_relations(fake_state(), [NormalizationCheck(0.5)])
    assert report.passed
    assert report.kind == 'fake'
    assert report.results[-1] == CheckResult(
        'centrality', True, 'satisfied by construction')


def test_s_product():
    product = s_product(fake_state(), fake_state())
    assert product.kind == PRODUCT
    assert product.parameters == {'factors': ('fake', 'fake')}
    assert product.quadratic(0.5).value == 1.0
    assert product.sigma(3.0, 1.0).value == 4.0
    assert product.evaluate(1.0, 0.5) == pytest.approx(
        fake_state().evaluate(1.0, 0.5) ** 2)


def test_trivial_state_is_unit():
    state = fake_state()
    product = s_product(state, trivial_state())
    for a in (0.5, 1.0, 3.0):
        assert product.evaluate(a, 0.7) == state.evaluate(a, 0.7)
    assert product.sigma(2.0, 0.5).value == state.sigma(2.0, 0.5).value


def test_group_commutator():
    state = fake_state()
    value = group_commutator(state, 2.0, 1.5, 0.5, 1.0)
    assert value == pytest.approx(cmath.exp(0.5j))
    assert abs(value) == pytest.approx(1.0)
    assert group_commutator(state, 2.0, 1.0, 0.5, 1.5) == \
        pytest.approx(value.conjugate())


def test_exchange_phase_follows_sigma():
    state = fake_state()
    # V(a1, g1) V(a2, g2) = c V(a2, g2) V(a1, g1) with c = exp(i a1 a2 sigma)
    value = group_commutator(state, 1.0, 2.0, 0.25, 0.5)
    assert cmath.phase(value) == pytest.approx(0.25 * 1.5)
    assert 'exp(i a1 a2 sigma(g1, g2)) V(a2, g2) V(a1, g1)' in \
        ' '.join(states.__doc__.split())


def test_coprimitive_of(hopf_pair, alpha, beta, b_profile):
    piece = hopf_pair[0]
    assert coprimitive_of(piece) is piece.coprimitive
    assert coprimitive_of(piece.coprimitive) is piece.coprimitive
    assert coprimitive_of(OneForm([piece])).terms
    with pytest.raises(TypeError):
        coprimitive_of(3.0)
    helix = loop_function(canonical_smear(alpha, beta, b_profile),
                          helix_loop())
    with pytest.raises(ValueError):
        coprimitive_of(helix)


def test_free_state(hopf_pair, tiny_spec):
    first, second = hopf_pair
    state = free_state(tiny_spec)
    assert state.kind == FREE
    assert sigma(state, first, second).value == pauli_jordan(
        first.coprimitive, second.coprimitive, tiny_spec).value
    norm = inner0(first.coprimitive, first.coprimitive, tiny_spec)
    assert omega_0(1.0, first, tiny_spec) == pytest.approx(
        math.exp(-norm.value.real / 2.0))


def test_topological_state(hopf_pair, tiny_spec):
    first, second = hopf_pair
    state = topological_state(tiny_spec)
    assert state.kind == TOPOLOGICAL
    assert state.sigma(first, second).value == pauli_jordan(
        first.coprimitive.star(), second.coprimitive.star(),
        tiny_spec).value
    dual = first.coprimitive.star()
    assert state.quadratic(first).value == inner0(dual, dual,
                                                  tiny_spec).value


def test_omega_t_of_magnetic_piece(hopf_pair, tiny_spec):
    first = hopf_pair[0]
    dual = first.coprimitive.star()
    norm = inner0(dual, dual, tiny_spec).value.real
    assert omega_T(0.0, first, tiny_spec) == 1.0
    assert omega_T(1.5, first, tiny_spec) == pytest.approx(
        math.exp(-1.125 * norm))
