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

from ..exc import GeometryError, NotDifferentiableError
from ..exterior.conventions import HODGE, component_index
from ..exterior.forms import (CoderivativePiece, OneForm, TwoForm,
                              coderivative_twoform, gbar, hodge_star,
                              rotate_twoform, translate_piece,
                              translate_twoform, type_indicator)
from ..exterior.profiles import Profile1D
from ..exterior.scalars import ProductScalar
from ..exterior.support import spatial_permutation

from .test_scalars import finite_gradient


def scalar(shift=(0.0, 0.0, 0.0, 0.0), time_kind='bump'):
    return ProductScalar([Profile1D(time_kind, 0.0, 0.3),
                          Profile1D('bump', 0.1, 0.4),
                          Profile1D('gaussian', 0.0, 0.25),
                          Profile1D('bump', -0.1, 0.5)]).translated(shift)


def sample_points(count=10, seed=0):
    return np.random.default_rng(seed).uniform(-0.25, 0.25, (count, 4))


@pytest.fixture
def g12():
    return TwoForm.single(1, 2, scalar(), label='G12')


@pytest.fixture
def mixed():
    return (TwoForm.single(0, 1, scalar(), 2.0)
            + TwoForm.single(2, 3, scalar((0.0, 0.05, 0.0, 0.0)), -1.0)
            + TwoForm.single(1, 3, scalar(), 0.5))


def test_single_component(g12):
    x = sample_points()
    values = g12.value(x)
    idx, _ = component_index(1, 2)
    assert np.allclose(values[:, idx], scalar().value(x))
    assert np.count_nonzero(np.delete(values, idx, axis=1)) == 0
    flipped = TwoForm.single(2, 1, scalar())
    assert np.allclose(flipped.value(x), -values)


def test_star_of_g12(g12):
    x = sample_points()
    dual = hodge_star(g12)
    idx03, _ = component_index(0, 3)
    assert np.allclose(dual.value(x)[:, idx03], g12.value(x)[:, 3])
    assert dual.label == '*G12'
    assert dual.support == g12.support


def test_star_star(mixed):
    x = sample_points()
    assert np.allclose(mixed.star().star().value(x), -mixed.value(x))
    assert np.array_equal(HODGE @ HODGE, -np.eye(6, dtype=np.int64))


def test_algebra(g12, mixed):
    x = sample_points()
    combined = 2.0 * g12 - mixed
    assert np.allclose(combined.value(x), 2 * g12.value(x) - mixed.value(x))
    assert np.allclose((-g12).fourier(x), -g12.fourier(x))
    assert (g12 + g12.star()).label == 'G12 + *G12'


def test_coderivative_components(g12):
    x = sample_points()
    piece = CoderivativePiece(g12)
    gradient = scalar().gradient(x)
    expected = np.zeros((x.shape[0], 4))
    # g_1 = eta^22 d_2 G_21, g_2 = eta^11 d_1 G_12
    expected[:, 1] = gradient[:, 2]
    expected[:, 2] = -gradient[:, 1]
    assert np.allclose(piece.value(x), expected)
    assert piece.label == 'delta G12'


def test_coderivative_matches_finite_differences(mixed):
    x = sample_points(6, seed=4)
    piece = coderivative_twoform(mixed).pieces[0]
    derivatives = []
    for mu in range(6):
        derivatives.append(finite_gradient(
            lambda y, index=mu: mixed.value(y)[:, index], x))
    signature = [1.0, -1.0, -1.0, -1.0]
    expected = np.zeros((x.shape[0], 4))
    for m in range(4):
        for v in range(4):
            if v == m:
                continue
            idx, sign = component_index(v, m)
            expected[:, m] += signature[v] * sign * derivatives[idx][:, v]
    scale = np.max(np.abs(expected))
    assert np.allclose(piece.value(x), expected, atol=1e-6 * scale)


def test_coderivative_is_coclosed(mixed):
    x = sample_points(20, seed=5)
    one_form = coderivative_twoform(mixed)
    scale = np.max(np.abs(mixed.hessian(x)))
    assert np.allclose(one_form.divergence(x), 0.0, atol=1e-10 * scale)
    p = np.random.default_rng(6).normal(size=(12, 4))
    transform = one_form.fourier(p)
    assert np.allclose(np.sum(p * transform, axis=-1), 0.0, atol=1e-12)


def test_coderivative_fourier_matches_transform(g12):
    p = np.array([[0.5, 1.0, -0.3, 2.0], [1.0, 0.0, 0.7, 0.0]])
    transform = CoderivativePiece(g12).fourier(p)
    base = g12.fourier(p)[:, 3]
    # g_mu(p) = -i p^nu G_{nu mu}(p)
    assert np.allclose(transform[:, 1], 1j * p[:, 2] * base)
    assert np.allclose(transform[:, 2], -1j * p[:, 1] * base)
    assert np.allclose(transform[:, [0, 3]], 0.0)


def test_dirac_factor_not_differentiable():
    form = TwoForm.single(1, 2, scalar(time_kind='dirac_limit'), label='D')
    with pytest.raises(NotDifferentiableError):
        coderivative_twoform(form)
    piece = CoderivativePiece(form)
    with pytest.raises(NotDifferentiableError):
        piece.value(np.zeros((1, 4)))
    with pytest.raises(NotDifferentiableError):
        piece.divergence(np.zeros((1, 4)))
    assert piece.fourier(np.ones((1, 4))).shape == (1, 4)


def test_type_indicator(g12):
    electric = TwoForm.single(0, 1, scalar())
    assert type_indicator(electric) == pytest.approx(1.0)
    assert type_indicator(g12) == pytest.approx(-1.0)
    assert type_indicator(g12.star()) == pytest.approx(1.0)
    # E_3 = B_3: null
    assert type_indicator(TwoForm.single(0, 3, scalar()) + g12) == \
        pytest.approx(0.0, abs=1e-12)


def test_gbar(g12):
    matrix = gbar(g12 * 3.0)
    assert matrix[1, 2] == pytest.approx(3.0)
    assert matrix[2, 1] == pytest.approx(-3.0)
    assert np.allclose(matrix + matrix.T, 0.0)


def test_translation(mixed, g12):
    shift = np.array([0.1, 0.5, -0.2, 0.0])
    x = sample_points()
    moved = translate_twoform(mixed, shift)
    assert np.allclose(moved.value(x + shift), mixed.value(x))
    piece = translate_piece(CoderivativePiece(g12, kappa=1.5), shift)
    assert piece.kappa == 1.5
    assert np.allclose(piece.value(x + shift),
                       CoderivativePiece(g12).value(x))
    assert piece.support == g12.support.translated(shift)


def test_rotation(g12):
    rotation = spatial_permutation((2, 3, 1), (1, 1, 1))
    rotated = rotate_twoform(g12, rotation)
    x = sample_points()
    idx13, _ = component_index(1, 3)
    # e1 -> e3 and e2 -> e1, so G_12 becomes G_31
    assert np.allclose(rotated.value(x @ rotation.T)[:, idx13],
                       -g12.value(x)[:, 3])
    assert type_indicator(rotated) == pytest.approx(type_indicator(g12))


def test_decomposed_one_form_needs_disjoint_supports(g12):
    first = CoderivativePiece(g12, label='first')
    second = CoderivativePiece(g12 * 2.0, label='second')
    with pytest.raises(GeometryError):
        OneForm([first, second], decomposed=True)
    far = translate_piece(second, (0.0, 5.0, 0.0, 0.0))
    one_form = OneForm([first, far], decomposed=True)
    x = sample_points()
    assert np.allclose(one_form.value(x), first.value(x) + far.value(x))
    assert one_form.coprimitive() is not None
    assert OneForm([]).coprimitive() is None
