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
"""Verification suites run by the verify command. Each suite returns a
list of CheckResult; failures are collected, never raised."""
import logging
import math
from collections import OrderedDict
from dataclasses import replace
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..charge.potential import (coexact_roberts, decompose, mixed_piece,
                                reduced_roberts_oracle,
                                richardson_extrapolate, topo_commutator,
                                traversal_table)
from ..charge.states import (CheckResult, ChargeCheck, LocalityCheck,
                             NormalizationCheck, free_state,
                             group_commutator, s_product, topological_state,
                             verify_relations)
from ..exc import ConventionError
from ..exterior.conventions import ROBERTS_ORACLE_CONSTANT, self_test
from ..exterior.forms import (CoderivativePiece, TwoForm, translate_piece,
                              translate_twoform)
from ..exterior.support import spacelike_separated
from ..loops.loop_functions import canonical_g, loop_function
from ..multiplet.doublet import (DoubletForm, multiplet_state, so2_rotate,
                                 zeta_commutator, zeta_inner)
from ..propagator.commutator import pauli_jordan, roberts
from ..propagator.quadrature import IntegralResult
from .config import ExperimentConfig
from .experiments import HopfSetup, loop_smear, with_alpha_width

logger = logging.getLogger('topocharge')

Suite = Callable[[ExperimentConfig, HopfSetup, np.random.Generator],
                 List[CheckResult]]

FAR_SHIFT = (0.0, 3.0, 0.0, 0.0)
OVERLAP_SHIFT = (0.5, 0.0, 0.0, 0.0)
POSITIVITY_ZETAS = (0.0, 0.5, -0.5, 1.0, -1.0)


def _within(result: IntegralResult, scale: float,
            relative: float = 1e-6) -> bool:
    return abs(result.value) <= max(result.error_estimate,
                                    relative * scale)


def _agree(first: IntegralResult, second: IntegralResult) -> bool:
    return abs(first.value - second.value) <= \
        first.error_estimate + second.error_estimate


def _check(name: str, passed, detail: str = '') -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def _describe(result: IntegralResult) -> str:
    return '{:.6e} +- {:.1e}'.format(float(np.real(result.value)),
                                     result.error_estimate)


def _sample_points(piece, count: int, rng: np.random.Generator) \
        -> np.ndarray:
    box = piece.support.bounding_box()
    return rng.uniform(box.lower, box.upper, size=(count, 4))


def suite_conventions(config, setup, rng) -> List[CheckResult]:
    """Pinned sign and normalization conventions."""
    # pylint: disable=unused-argument
    failures = self_test()
    return [_check('conventions', not failures, '; '.join(failures))]


def suite_exterior(config, setup, rng) -> List[CheckResult]:
    """Hodge star, co-derivatives of the canonical co-primitives and
    co-closedness of loop functions at random points."""
    count = config.suites.random_points
    results = []

    points = _sample_points(setup.first, count, rng)
    form = setup.first.coprimitive
    values = form.value(points)
    twice = form.star().star().value(points)
    results.append(_check('star_star', np.array_equal(twice, -values)))

    for piece in (setup.first, setup.electric, setup.second):
        points = _sample_points(piece, count, rng)
        closed = piece.value(points)
        generic = CoderivativePiece(piece.coprimitive).value(points)
        scale = float(np.max(np.abs(closed))) or 1.0
        deviation = float(np.max(np.abs(closed - generic)))
        results.append(_check('coderivative {}'.format(piece.label),
                              deviation <= 1e-8 * scale,
                              'max deviation {:.3e}'.format(deviation)))

    for first in (True, False):
        loop = setup.first_loop if first else setup.second_loop
        piece = loop_function(loop_smear(setup, first), loop)
        points = _sample_points(piece, count, rng)
        width = min(setup.alpha.width, setup.beta.width,
                    math.sqrt(setup.b.width))
        scale = float(np.max(np.abs(piece.value(points)))) / width or 1.0
        divergence = float(np.max(np.abs(piece.divergence(points))))
        results.append(_check('coclosed {}'.format(piece.label),
                              divergence <= 1e-8 * scale,
                              'max divergence {:.3e}'.format(divergence)))
    return results


def _far_pair(setup: HopfSetup) -> Tuple[TwoForm, TwoForm]:
    return (setup.first.coprimitive,
            translate_twoform(setup.second.coprimitive, FAR_SHIFT))


def suite_locality(config, setup, rng) -> List[CheckResult]:
    """
    Delta vanishes on spacelike separated canonical forms, measured
    against the same pair moved into causal contact; the free-field
    commutator of the linked pair vanishes as well.
    """
    # pylint: disable=unused-argument
    first, far = _far_pair(setup)
    separated = spacelike_separated(
        setup.first.support, translate_piece(setup.second, FAR_SHIFT).support)
    overlap = pauli_jordan(first, translate_twoform(
        setup.second.coprimitive, OVERLAP_SHIFT), setup.spec, setup.threads)
    scale = abs(float(overlap.value))
    result = pauli_jordan(first, far, setup.spec, setup.threads)
    free = free_state(setup.spec, setup.threads).sigma(setup.first,
                                                       setup.second)
    return [_check('separated_supports', separated),
            _check('locality', _within(result, scale),
                   '{} against scale {:.3e}'.format(_describe(result),
                                                    scale)),
            _check('free_field_no_charge', _within(free, scale),
                   _describe(free))]


def _random_canonical(setup: HopfSetup, rng: np.random.Generator) \
        -> TwoForm:
    planes = ((1, 2), (1, 3), (2, 3))
    plane = planes[int(rng.integers(len(planes)))]
    axis = ({1, 2, 3} - set(plane)).pop()
    shift = np.concatenate([[0.0], rng.uniform(-0.5, 0.5, size=3)])
    return canonical_g(plane, axis, setup.alpha, setup.beta, setup.b,
                       translation=shift).coprimitive


def _oracle_ladder(config, setup) -> CheckResult:
    ratio = config.scan.ladder_ratio
    width = config.profiles.alpha.width
    values = []
    for k in range(3):
        ladder = HopfSetup.from_config(with_alpha_width(config,
                                                   width / ratio ** k))
        values.append(float(roberts(ladder.first.coprimitive,
                                    ladder.second.coprimitive, setup.spec,
                                    setup.threads).value))
    extrapolated, order = richardson_extrapolate(values, ratio)
    try:
        oracle = ROBERTS_ORACLE_CONSTANT * setup.alpha.amplitude \
            * setup.beta.amplitude \
            * reduced_roberts_oracle(setup.b, setup.separation)
    except ConventionError as ex:
        return _check('oracle', False, str(ex))
    return _check('oracle', math.isclose(extrapolated, oracle, rel_tol=0.05),
                  'extrapolated {:.6e} (order {:.2f}), oracle {:.6e}'
                  .format(extrapolated, order, oracle))


def suite_charge(config, setup, rng) -> List[CheckResult]:
    """Roberts term of the linked pair and its linking laws."""
    spec, threads = setup.spec, setup.threads
    first, second = setup.first.coprimitive, setup.second.coprimitive
    bare = roberts(first, second, spec, threads)
    swapped = roberts(second, first, spec, threads)
    results = [_check('roberts_nonzero', bare.is_nonzero(10.0),
                      _describe(bare)),
               _check('roberts_symmetric', _agree(bare, swapped),
                      _describe(swapped))]

    amplitude = 3.0
    scaled = roberts(first * amplitude, second, spec, threads)
    results.append(_check(
        'amplitude_linear', math.isclose(float(scaled.value),
                                         amplitude * float(bare.value),
                                         rel_tol=1e-12)))

    mixed = decompose(mixed_piece(setup.first, setup.electric,
                                  2.0 * setup.eta_star))
    report = topo_commutator(mixed, decompose(setup.second), spec, threads)
    via_state = topological_state(spec, threads).sigma(
        mixed, decompose(setup.second))
    results.append(_check('two_code_paths', _agree(report.result, via_state),
                          '{} vs {}'.format(_describe(report.result),
                                            _describe(via_state))))

    unlinked = HopfSetup.from_config(replace(config, loops=replace(
        config.loops, separation=10.0)))
    far = roberts(unlinked.first.coprimitive, unlinked.second.coprimitive,
                  spec, threads)
    results.append(_check('unlinked_vanishes', far.is_zero(),
                          _describe(far)))

    single, double = traversal_table(loop_smear(setup, True),
                                     setup.first_loop.traversed(1),
                                     loop_smear(setup, False),
                                     setup.second_loop.traversed(1), [1],
                                     [1, 2], spec, threads)
    results.append(_check(
        'traversal_scaling',
        math.isclose(double['value'], 2.0 * single['value'], rel_tol=0.01),
        '{:.6e} vs 2 x {:.6e}'.format(double['value'], single['value'])))

    widened = replace(setup, beta=replace(setup.beta,
                                          width=1.5 * setup.beta.width))
    coexact = coexact_roberts(
        loop_smear(setup, True), loop_smear(widened, True),
        setup.first_loop, second, spec, threads)
    results.append(_check('coexact_vanishes', coexact.is_zero(),
                          _describe(coexact)))

    worst = 0.0
    hodge_ok = True
    for _ in range(config.suites.random_pairs):
        pair = (_random_canonical(setup, rng), _random_canonical(setup, rng))
        plain = pauli_jordan(*pair, spec=spec, threads=threads)
        dual = pauli_jordan(pair[0].star(), pair[1].star(), spec, threads)
        hodge_ok = hodge_ok and _agree(plain, dual)
        worst = max(worst, abs(float(plain.value - dual.value)))
    results.append(_check('hodge_invariance', hodge_ok,
                          'max |difference| {:.3e}'.format(worst)))
    results.append(_oracle_ladder(config, setup))
    return results


def suite_states(config, setup, rng) -> List[CheckResult]:
    """Relation checks of the free, topological and multiplet states."""
    # pylint: disable=unused-argument
    spec, threads = setup.spec, setup.threads
    far = translate_piece(setup.second, FAR_SHIFT)
    mixed = decompose(mixed_piece(setup.first, setup.electric,
                                  2.0 * setup.eta_star))
    linked = decompose(setup.second)

    free = free_state(spec, threads)
    topological = topological_state(spec, threads)
    reports = [
        verify_relations(free, [NormalizationCheck(setup.first),
                                LocalityCheck([(setup.first, far)])],
                         charge=ChargeCheck(setup.first, setup.second,
                                            charged=False)),
        verify_relations(topological,
                         [NormalizationCheck(mixed),
                          LocalityCheck([(decompose(setup.first),
                                          decompose(far))])],
                         charge=ChargeCheck(mixed, linked, charged=True)),
    ]
    u_form, d_form = setup.doublets()
    reports.append(verify_relations(
        multiplet_state(1.0, spec, threads), [NormalizationCheck(u_form)],
        charge=ChargeCheck(u_form, d_form, charged=True)))

    results = []
    for report in reports:
        results.extend(replace(result, name='{} {}'.format(report.kind,
                                                           result.name))
                       for result in report.results)

    product = s_product(free, topological)
    a = 0.7
    expected = free.evaluate(a, mixed) * topological.evaluate(a, mixed)
    results.append(_check('s_product',
                          math.isclose(product.evaluate(a, mixed), expected,
                                       rel_tol=1e-12)))
    free_sigma = free.sigma(setup.first, setup.second)
    commutator = group_commutator(free, 1.0, setup.first, 1.0, setup.second)
    results.append(_check('free_group_commutator',
                          abs(commutator - 1.0)
                          <= free_sigma.error_estimate + 1e-12,
                          '{:.6f}'.format(commutator)))
    return results


def _basis_doublets(setup: HopfSetup) -> List[DoubletForm]:
    forms = [setup.first.coprimitive, setup.first.coprimitive.star(),
             setup.second.coprimitive]
    return [DoubletForm(form, TwoForm([])) for form in forms] \
        + [DoubletForm(TwoForm([]), form) for form in forms]


def zeta_gram(setup: HopfSetup, zeta: float,
              basis: Sequence[DoubletForm]) -> Tuple[np.ndarray, np.ndarray]:
    """Hermitian matrix of <e_a, e_b>_zeta over a doublet basis, with the
    matrix of error estimates."""
    size = len(basis)
    gram = np.zeros((size, size), dtype=complex)
    errors = np.zeros((size, size))
    for a in range(size):
        for b in range(a, size):
            result = zeta_inner(basis[a], basis[b], zeta, setup.spec,
                                setup.threads)
            gram[a, b], errors[a, b] = result.value, result.error_estimate
            gram[b, a], errors[b, a] = np.conj(result.value), \
                result.error_estimate
    return gram, errors


def suite_multiplet(config, setup, rng) -> List[CheckResult]:
    """
    Positivity and Cauchy-Schwarz of <., .>_zeta on random doublets from
    the span of a basis, SO(2) invariance, and the zeta commutator of the
    linked u/d pair.
    """
    basis = _basis_doublets(setup)
    zero, zero_err = zeta_gram(setup, 0.0, basis)
    one, one_err = zeta_gram(setup, 1.0, basis)
    results = []
    zetas = list(POSITIVITY_ZETAS)
    if config.zeta not in zetas:
        zetas.append(config.zeta)
    for zeta in zetas:
        gram = zero + zeta * (one - zero)
        errors = zero_err + abs(zeta) * (one_err + zero_err)
        lowest = float(np.linalg.eigvalsh(gram)[0])
        bound = float(np.linalg.norm(errors, 2))
        coefficients = rng.standard_normal(
            (config.suites.random_doublets, len(basis)))
        norms = np.einsum('na,ab,nb->n', coefficients, gram.real,
                          coefficients)
        slack = np.einsum('na,ab,nb->n', np.abs(coefficients), errors,
                          np.abs(coefficients))
        positive = lowest >= -bound and bool(np.all(norms >= -slack))
        cross = np.einsum('na,ab,nb->n', coefficients[:-1], gram,
                          coefficients[1:])
        schwarz = np.abs(cross) ** 2 <= norms[:-1] * norms[1:] \
            + slack[:-1] * np.abs(norms[1:]) + slack[1:] * np.abs(norms[:-1]) \
            + slack[:-1] * slack[1:]
        results.append(_check(
            'positivity zeta={:g}'.format(zeta), positive,
            'min eigenvalue {:.3e} (error bound {:.1e})'.format(lowest,
                                                                bound)))
        results.append(_check('cauchy_schwarz zeta={:g}'.format(zeta),
                              bool(np.all(schwarz))))

    doublet = DoubletForm(setup.first.coprimitive, setup.second.coprimitive,
                          'u+d')
    base = zeta_inner(doublet, doublet, 0.5, setup.spec, setup.threads)
    invariant = True
    for theta in rng.uniform(0.0, 2.0 * math.pi,
                             size=config.suites.rotations):
        rotated = so2_rotate(doublet, float(theta))
        invariant = invariant and _agree(
            base, zeta_inner(rotated, rotated, 0.5, setup.spec,
                             setup.threads))
    results.append(_check('so2_invariance', invariant))

    u_form, d_form = setup.doublets()
    full = zeta_commutator(u_form, d_form, 1.0, setup.spec, setup.threads)
    half = zeta_commutator(u_form, d_form, 0.5, setup.spec, setup.threads)
    results.append(_check('zeta_commutator_nonzero', full.is_nonzero(10.0),
                          _describe(full)))
    results.append(_check('zeta_commutator_linear',
                          _agree(half, full * 0.5),
                          '{} vs half of {}'.format(_describe(half),
                                                    _describe(full))))
    return results


SUITES: Dict[str, Suite] = OrderedDict([
    ('conventions', suite_conventions),
    ('exterior', suite_exterior),
    ('locality', suite_locality),
    ('charge', suite_charge),
    ('states', suite_states),
    ('multiplet', suite_multiplet),
])


def run_suites(config: ExperimentConfig, names: Sequence[str] = ()) \
        -> Dict[str, List[CheckResult]]:
    """
    Run the named suites (all when empty) with a generator seeded from
    the configuration.
    :raises KeyError: for unknown suite names
    """
    selected = list(names) or list(SUITES)
    unknown = [name for name in selected if name not in SUITES]
    if unknown:
        raise KeyError("Unknown suites: {}".format(', '.join(unknown)))
    setup = HopfSetup.from_config(config)
    rng = np.random.default_rng(config.seed)
    outcome: Dict[str, List[CheckResult]] = OrderedDict()
    for name in selected:
        logger.info("Running suite %s", name)
        try:
            outcome[name] = SUITES[name](config, setup, rng)
        except Exception as ex:  # pylint: disable=broad-except
            logger.error("Suite %s aborted: %s", name, ex)
            outcome[name] = [CheckResult(name, False, str(ex))]
    return outcome
