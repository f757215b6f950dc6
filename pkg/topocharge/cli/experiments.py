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
"""Experiments run by the command line: the Hopf charge, parameter scans,
linking numbers and traversal tables, with their CSV and JSON writers."""
import cmath
import csv
import datetime
import json
import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import __version__
from ..charge.potential import (ELECTRIC, decompose, eta_threshold,
                                mixed_piece, reduced_roberts_oracle,
                                richardson_extrapolate, topo_commutator,
                                traversal_table)
from ..charge.report import ChargeReport
from ..charge.states import topological_state
from ..exc import ConventionError, GeometryError
from ..exterior.conventions import ROBERTS_ORACLE_CONSTANT
from ..exterior.forms import TwoForm
from ..exterior.profiles import Profile1D
from ..loops.curves import CircleLoop
from ..loops.linking import gauss_linking
from ..loops.loop_functions import (CanonicalPiece, canonical_g,
                                    canonical_g0, canonical_loop,
                                    canonical_smear, cone_coprimitive)
from ..multiplet.doublet import (DoubletForm, zeta_commutator, zeta_inner)
from ..propagator.commutator import roberts
from ..propagator.quadrature import IntegralResult, QuadratureSpec
from .config import ExperimentConfig

logger = logging.getLogger('topocharge')

Row = Dict[str, Any]


def _axis_off(plane: Sequence[int]) -> int:
    return ({1, 2, 3} - set(plane)).pop()


@dataclass
class HopfSetup:
    """Canonical test forms and loops of a configured loop pair."""
    alpha: Profile1D
    beta: Profile1D
    b: Profile1D
    first: CanonicalPiece
    electric: CanonicalPiece
    second: CanonicalPiece
    first_loop: CircleLoop
    second_loop: CircleLoop
    spec: QuadratureSpec
    threads: int

    @classmethod
    def from_config(cls, config: ExperimentConfig) -> 'HopfSetup':
        """
        First form g^(ik) at the origin with its electric partner
        g^(0l), second form in the second plane shifted along axis 1.
        """
        profiles = config.profiles
        alpha, beta, b = (profiles.alpha.build(), profiles.beta.build(),
                          profiles.b.build())
        loops = config.loops
        first_plane = tuple(loops.first_plane)
        second_plane = tuple(loops.second_plane)
        first_axis = _axis_off(first_plane)
        shift = (0.0, loops.separation, 0.0, 0.0)
        return cls(
            alpha=alpha, beta=beta, b=b,
            first=canonical_g(first_plane, first_axis, alpha, beta, b),
            electric=canonical_g0(first_axis, first_plane, alpha, beta, b),
            second=canonical_g(second_plane, _axis_off(second_plane), alpha,
                               beta, b, translation=shift),
            first_loop=canonical_loop(first_plane).traversed(
                loops.first_traversal),
            second_loop=canonical_loop(second_plane, shift).traversed(
                loops.second_traversal),
            spec=config.quadrature.build(),
            threads=config.threads)

    @property
    def separation(self) -> float:
        """Shift of the second loop along axis 1."""
        return float(self.second_loop.center[1])

    @property
    def traversals(self) -> Tuple[int, int]:
        """Signed traversal counts of the two loops."""
        return self.first_loop.traversal, self.second_loop.traversal

    @property
    def eta_star(self) -> float:
        """Electric threshold of the first form mixed with its partner."""
        return eta_threshold(self.first.coprimitive,
                             self.electric.coprimitive)

    def linking(self) -> Tuple[Optional[int], Optional[float]]:
        """Linking number of the loop pair, (None, None) when the loops
        come too close for the Gauss integral."""
        try:
            linking = gauss_linking(self.first_loop, self.second_loop)
        except GeometryError as ex:
            logger.warning("No linking number: %s", ex)
            return None, None
        return linking.number, linking.raw

    def doublets(self) -> Tuple[DoubletForm, DoubletForm]:
        """Pure-u first form and pure-d second form."""
        return (DoubletForm.from_pieces(u=self.first, label='u'),
                DoubletForm.from_pieces(d=self.second, label='d'))

    def sample_doublets(self) -> List[DoubletForm]:
        """(G, *G) and (G, -*G) for the first co-primitive: their zeta
        norms are 2 <G, G>_0 (1 -+ zeta)."""
        form = self.first.coprimitive
        return [DoubletForm(form, form.star(), 'G+*G'),
                DoubletForm(form, -form.star(), 'G-*G')]


def _oracle(setup: HopfSetup) -> Optional[float]:
    try:
        return ROBERTS_ORACLE_CONSTANT * setup.alpha.amplitude \
            * setup.beta.amplitude \
            * reduced_roberts_oracle(setup.b, setup.separation)
    except ConventionError as ex:
        logger.info("Oracle not applicable: %s", ex)
        return None


def _combined(*results: IntegralResult) -> float:
    return float(sum(result.error_estimate for result in results))


def run_hopf(config: ExperimentConfig,
             setup: Optional[HopfSetup] = None) -> ChargeReport:
    """
    The charge experiment: sigma_T of g^(ik) + eta g^(0l) against the
    shifted g^(jk), with the bare Roberts term, the electric correction,
    the threshold eta*, the linking number and the oracle value.

    Traversal counts other than 1 are carried by the cone co-primitives
    of the traversed loops, rescaled to the canonical normalization.
    """
    setup = setup or HopfSetup.from_config(config)
    eta_star = setup.eta_star
    eta = 2.0 * eta_star if config.eta is None else config.eta
    mixed = mixed_piece(setup.first, setup.electric, eta)
    report = topo_commutator(decompose(mixed), decompose(setup.second),
                             setup.spec, setup.threads,
                             label='hopf e1={:g} eta={:g}'.format(
                                 setup.separation, eta))
    report.linking, report.linking_raw = setup.linking()

    bare = roberts(setup.first.coprimitive, setup.second.coprimitive,
                   setup.spec, setup.threads)
    correction = roberts(setup.electric.coprimitive,
                         setup.second.coprimitive, setup.spec,
                         setup.threads) * eta
    report.extras.update({'roberts': bare.real, 'correction': correction.real,
                          'eta': eta, 'eta_star': eta_star})
    oracle = _oracle(setup)
    if oracle is not None:
        report.extras['oracle'] = oracle
        report.extras['oracle_ratio'] = bare.real.value / oracle

    linked = report.linking not in (None, 0)
    report.checks['charge'] = bare.is_nonzero(10.0) if linked \
        else bare.is_zero()
    if report.branches[0] == ELECTRIC:
        gap = abs(report.value - bare.real.value - correction.real.value)
        report.checks['mixed_matches_roberts'] = \
            gap <= _combined(report.result, bare, correction)
        report.checks['correction_below_error'] = \
            abs(correction.real.value) <= max(
                correction.error_estimate, bare.error_estimate)

    if setup.traversals != (1, 1):
        scale = (2.0 * math.pi) ** -2
        first_cone = cone_coprimitive(loop_smear(setup, first=True),
                                      setup.first_loop)
        second_cone = cone_coprimitive(loop_smear(setup, first=False),
                                       setup.second_loop)
        traversed = roberts(first_cone, second_cone, setup.spec,
                            setup.threads) * scale
        count = setup.traversals[0] * setup.traversals[1]
        report.extras['traversal_roberts'] = traversed.real
        report.extras['traversal_ratio'] = \
            traversed.real.value / bare.real.value
        report.checks['traversal_scaling'] = math.isclose(
            report.extras['traversal_ratio'], count, rel_tol=0.01)
    logger.info("Hopf experiment:\n%s", report.summary())
    return report


def loop_smear(setup: HopfSetup, first: bool):
    """Canonical smear of the first or second loop of the setup, at the
    origin; the loop itself carries the translation."""
    plane = (setup.first_loop if first else setup.second_loop).plane
    return canonical_smear(setup.alpha, setup.beta, setup.b, plane,
                           _axis_off(plane))


def scan_values(config: ExperimentConfig,
                setup: Optional[HopfSetup] = None) -> List[float]:
    """
    Values of the scanned parameter: the configured ones, or a default
    range per parameter. The width ladder is geometric with the
    configured ratio, starting at the configured alpha width.
    """
    scan = config.scan
    if scan.values:
        return [float(value) for value in scan.values]
    if scan.param == 'eta':
        eta_star = (setup or HopfSetup.from_config(config)).eta_star
        return [factor * eta_star for factor in (0.5, 0.9, 1.1, 2.0)]
    if scan.param == 'zeta':
        return [-1.0, -0.5, 0.0, 0.5, 1.0]
    if scan.param == 'separation':
        return [0.75, 1.0, 1.25, 3.0, 10.0]
    if scan.param == 'width':
        width = config.profiles.alpha.width
        return [width / scan.ladder_ratio ** k for k in range(3)]
    return [0.5, 1.0, 2.0, 4.0]


def _scan_row(name: str, value: float, report: ChargeReport) -> Row:
    row: Row = {name: value}
    row.update(report.to_row())
    return row


def with_alpha_width(config: ExperimentConfig, width: float) \
        -> ExperimentConfig:
    """Config with the alpha width set and beta scaled alike."""
    profiles = config.profiles
    ratio = width / profiles.alpha.width
    new_profiles = replace(
        profiles, alpha=replace(profiles.alpha, width=width),
        beta=replace(profiles.beta, width=profiles.beta.width * ratio))
    return replace(config, profiles=new_profiles)


def run_scan(config: ExperimentConfig) -> Tuple[List[Row], Dict[str, Any]]:
    """
    One row per value of config.scan.param.
    :return: rows for the CSV, summary entries for the JSON report
    """
    param = config.scan.param
    setup = HopfSetup.from_config(config)
    values = scan_values(config, setup)
    logger.info("Scanning %s over %s", param, values)
    rows: List[Row] = []
    summary: Dict[str, Any] = {'param': param, 'values': values}

    if param == 'eta':
        for value in values:
            report = run_hopf(replace(config, eta=value), setup)
            rows.append(_scan_row('eta', value, report))
    elif param == 'separation':
        for value in values:
            moved = replace(config, loops=replace(config.loops,
                                                  separation=value))
            rows.append(_scan_row('separation', value, run_hopf(moved)))
    elif param == 'width':
        bare = []
        for value in values:
            report = run_hopf(with_alpha_width(config, value))
            bare.append(report.extras['roberts'].value)
            rows.append(_scan_row('width', value, report))
        summary.update(_ladder_summary(bare, setup, config.scan.ladder_ratio))
    elif param == 'zeta':
        rows = _zeta_rows(setup, values)
    else:
        rows = _amplitude_rows(setup, values)
    return rows, summary


def _ladder_summary(bare: Sequence[float], setup: HopfSetup,
                    ratio: float) -> Dict[str, Any]:
    if len(bare) != 3:
        return {}
    extrapolated, order = richardson_extrapolate(bare, ratio)
    summary: Dict[str, Any] = {'extrapolated': extrapolated,
                               'order': order}
    oracle = _oracle(setup)
    if oracle is not None:
        summary['oracle'] = oracle
        summary['oracle_ratio'] = extrapolated / oracle
    return summary


def _zeta_rows(setup: HopfSetup, values: Sequence[float]) -> List[Row]:
    first, second = setup.doublets()
    samples = setup.sample_doublets()
    rows = []
    for zeta in values:
        commutator = zeta_commutator(first, second, zeta, setup.spec,
                                     setup.threads)
        norms = [zeta_inner(sample, sample, zeta, setup.spec,
                            setup.threads).real for sample in samples]
        lowest = min(norms, key=lambda result: result.value)
        rows.append({'zeta': zeta,
                     'commutator': float(commutator.value),
                     'commutator_err': commutator.error_estimate,
                     'min_norm': float(lowest.value),
                     'min_norm_err': lowest.error_estimate,
                     'converged': commutator.converged and all(
                         norm.converged for norm in norms)})
    return rows


def _amplitude_rows(setup: HopfSetup, values: Sequence[float]) -> List[Row]:
    state = topological_state(setup.spec, setup.threads)
    first = decompose(mixed_piece(setup.first, setup.electric,
                                  2.0 * setup.eta_star))
    second = decompose(setup.second)
    sigma = state.sigma(first, second)
    norm = state.quadratic(first)
    rows = []
    for a in values:
        value = cmath.exp(1j * a * a * float(sigma.value))
        rows.append({'a': a,
                     'sigma': float(sigma.value),
                     'sigma_err': sigma.error_estimate,
                     'commutator_re': float(value.real),
                     'commutator_im': float(value.imag),
                     'omega_T': math.exp(-a * a * float(norm.value.real)
                                         / 2.0),
                     'converged': sigma.converged and norm.converged})
    return rows


def run_linking(config: ExperimentConfig) -> List[Row]:
    """Linking numbers of the loop pair for every traversal combination."""
    setup = HopfSetup.from_config(config)
    rows = []
    counts = config.loops.traversal_counts
    for n1 in counts:
        for n2 in counts:
            first = setup.first_loop.traversed(n1)
            second = setup.second_loop.traversed(n2)
            try:
                linking = gauss_linking(first, second)
                number, raw = linking.number, linking.raw
            except GeometryError as ex:
                logger.warning("Linking of %r and %r failed: %s", first,
                               second, ex)
                number, raw = '', ''
            rows.append({'first': repr(first), 'second': repr(second),
                         'n1': n1, 'n2': n2, 'linking': number,
                         'linking_raw': raw})
    return rows


def run_charge_table(config: ExperimentConfig) -> List[Row]:
    """Roberts term of the cone co-primitives for every traversal pair."""
    setup = HopfSetup.from_config(config)
    counts = config.loops.traversal_counts
    return traversal_table(
        loop_smear(setup, first=True), setup.first_loop.traversed(1),
        loop_smear(setup, first=False), setup.second_loop.traversed(1),
        counts, counts, setup.spec, setup.threads)


def output_header(command: str, config: ExperimentConfig) -> str:
    """The one line allowed to differ between identical runs."""
    created = datetime.datetime.now(datetime.timezone.utc) \
        .isoformat(timespec='seconds')
    return '# topocharge {} command={} threads={} seed={} created={}'.format(
        __version__, command, config.threads, config.seed, created)


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return value


def write_csv(path: Path, rows: Sequence[Row], header: str):
    """Header line, then one CSV row per result with repr floats."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fieldnames: List[str] = []
    for row in rows:
        fieldnames.extend(key for key in row if key not in fieldnames)
    with open(path, 'w', newline='', encoding='utf-8') as file:
        file.write(header + '\n')
        writer = csv.DictWriter(file, fieldnames=fieldnames, restval='')
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(value) for key, value in row.items()})
    logger.info("Wrote %d rows to %s", len(rows), path)


def _jsonable(obj):
    if isinstance(obj, IntegralResult):
        return {'value': _jsonable(obj.value),
                'error_estimate': obj.error_estimate,
                'nodes_used': obj.nodes_used, 'converged': obj.converged}
    if isinstance(obj, complex):
        return {'real': obj.real, 'imag': obj.imag}
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, TwoForm):
        return obj.label
    raise TypeError("Not serializable: {!r}".format(obj))


def save_json(path: Path, obj: Dict[str, Any]):
    """Report next to the CSV, keys sorted."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True,
                               default=_jsonable) + '\n', encoding='utf-8')
