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
"""
Quasi-free states given by their generating functionals.

A quasi-free state is fixed by a quadratic form q and its commutator form
sigma: omega(V(a, g)) = exp(-a^2 q(g) / 2) and
V(a1, g1) V(a2, g2) = exp(i a1 a2 sigma(g1, g2)) V(a2, g2) V(a1, g1).
"""
import abc
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..exterior.forms import OneForm, Piece, TwoForm
from ..propagator.commutator import inner0, pauli_jordan
from ..propagator.quadrature import IntegralResult, QuadratureSpec
from .potential import DecomposedOneForm, as_decomposed, build_GT

logger = logging.getLogger('topocharge')

FREE = 'free'
TOPOLOGICAL = 'topological'
MULTIPLET = 'multiplet'
PRODUCT = 'product'
TRIVIAL = 'trivial'

QuadraticForm = Callable[[Any], IntegralResult]
CommutatorForm = Callable[[Any, Any], IntegralResult]


def _zero(*_args) -> IntegralResult:
    return IntegralResult(0.0, 0.0, 0)


@dataclass
class GeneratingFunctional:
    """
    Descriptor of a quasi-free state.
    :param kind: 'free', 'topological', 'multiplet', 'product' or 'trivial'
    :param quadratic: g -> q(g) with error
    :param commutator: (g1, g2) -> sigma(g1, g2) with error
    :param parameters: e.g. zeta for the multiplet state
    """
    kind: str
    quadratic: QuadraticForm
    commutator: CommutatorForm
    parameters: Dict[str, Any] = field(default_factory=dict)

    def evaluate(self, a: float, g) -> float:
        """omega(V(a, g)) = exp(-a^2 q(g) / 2)."""
        if a == 0:
            return 1.0
        return self.evaluate_many([a], g)[0]

    def evaluate_many(self, amplitudes: Sequence[float], g) -> List[float]:
        """
        omega(V(a, g)) for several a with one evaluation of q(g). A
        negative q(g) is clamped to 0; beyond its error estimate that is
        logged as a warning.
        """
        result = self.quadratic(g)
        q_value = float(result.value.real)
        if q_value < 0.0:
            log = logger.warning if -q_value > result.error_estimate \
                else logger.debug
            log("Negative quadratic form q = %.3e +- %.1e in %s state, "
                "clamped to 0", q_value, result.error_estimate, self.kind)
            q_value = 0.0
        return [math.exp(-a * a * q_value / 2.0) for a in amplitudes]

    def sigma(self, first, second) -> IntegralResult:
        """Commutator form of the state."""
        return self.commutator(first, second)


def coprimitive_of(g) -> TwoForm:
    """Co-primitive of a TwoForm, piece, OneForm or DecomposedOneForm."""
    if isinstance(g, TwoForm):
        return g
    if isinstance(g, Piece):
        form = g.coprimitive
    elif isinstance(g, DecomposedOneForm):
        form = g.one_form.coprimitive()
    elif isinstance(g, OneForm):
        form = g.coprimitive()
    else:
        raise TypeError("No co-primitive for {!r}".format(g))
    if form is None:
        raise ValueError("Test form has no co-primitive attached")
    return form


def free_state(spec: QuadratureSpec = QuadratureSpec(),
               threads: int = 1) -> GeneratingFunctional:
    """omega_0 of the free field: q = <G, G>_0, sigma = Delta."""
    return GeneratingFunctional(
        FREE,
        lambda g: inner0(coprimitive_of(g), coprimitive_of(g), spec,
                         threads),
        lambda g1, g2: pauli_jordan(coprimitive_of(g1), coprimitive_of(g2),
                                    spec, threads))


def topological_state(spec: QuadratureSpec = QuadratureSpec(),
                      threads: int = 1) -> GeneratingFunctional:
    """omega_T: the free state composed with the topological potential."""
    def quadratic(g):
        form = build_GT(as_decomposed(g))
        return inner0(form, form, spec, threads)

    def commutator(g1, g2):
        return pauli_jordan(build_GT(as_decomposed(g1)),
                            build_GT(as_decomposed(g2)), spec, threads)
    return GeneratingFunctional(TOPOLOGICAL, quadratic, commutator)


def trivial_state() -> GeneratingFunctional:
    """State with q = 0 and sigma = 0, the unit of s_product."""
    return GeneratingFunctional(TRIVIAL, _zero, _zero)


def omega_0(a: float, g, spec: QuadratureSpec = QuadratureSpec(),
            threads: int = 1) -> float:
    """exp(-a^2 <G, G>_0 / 2)."""
    return free_state(spec, threads).evaluate(a, g)


def omega_T(a: float, g,  # pylint: disable=invalid-name
            spec: QuadratureSpec = QuadratureSpec(),
            threads: int = 1) -> float:
    """exp(-a^2 <G_T, G_T>_0 / 2)."""
    return topological_state(spec, threads).evaluate(a, g)


def sigma(state: GeneratingFunctional, first, second) -> IntegralResult:
    """sigma(g1, g2) = i <Omega, [A(g1), A(g2)] Omega> of the state."""
    return state.sigma(first, second)


def s_product(first: GeneratingFunctional,
              second: GeneratingFunctional) -> GeneratingFunctional:
    """Pointwise product of generating functionals: quadratic and
    commutator forms add."""
    return GeneratingFunctional(
        PRODUCT,
        lambda g: first.quadratic(g) + second.quadratic(g),
        lambda g1, g2: first.commutator(g1, g2) + second.commutator(g1, g2),
        {'factors': (first.kind, second.kind)})


def group_commutator(state: GeneratingFunctional, a1: float, g1, a2: float,
                     g2) -> complex:
    """
    Central value of V(a1, g1) V(a2, g2) V(a1, g1)^* V(a2, g2)^*,
    exp(i a1 a2 sigma(g1, g2)).
    """
    return cmath.exp(1j * a1 * a2 * float(state.sigma(g1, g2).value))


@dataclass
class CheckResult:
    """Outcome of one relation check."""
    name: str
    passed: bool
    detail: str = ''


class RelationCheck(abc.ABC):
    """A single check on a state, run by verify_relations."""
    name = 'check'

    @abc.abstractmethod
    def run(self, state: GeneratingFunctional) -> CheckResult:
        """Run the check; failures are reported, not raised."""


class NormalizationCheck(RelationCheck):
    """omega(V(0, g)) = 1, q(g) >= 0 within error so that omega(V(a, g))
    decreases in a^2, and omega(V(2a, g)) = omega(V(a, g))^4."""
    name = 'normalization'

    def __init__(self, form, amplitudes: Sequence[float] = (0.5, 1.0, 2.0),
                 tol: float = 1e-12):
        self.form = form
        self.amplitudes = tuple(amplitudes)
        self.tol = tol

    def run(self, state):
        if state.evaluate(0.0, self.form) != 1.0:
            return CheckResult(self.name, False, 'omega(V(0, g)) != 1')
        quadratic = state.quadratic(self.form)
        if quadratic.value.real < -quadratic.error_estimate:
            return CheckResult(self.name, False, 'q(g) = {:.3e} < 0'.format(
                float(quadratic.value.real)))
        a = self.amplitudes[0]
        values = state.evaluate_many(self.amplitudes + (2.0 * a,),
                                     self.form)
        single, double = values[0], values[-1]
        values = values[:-1]
        if abs(double - single ** 4) > self.tol:
            return CheckResult(self.name, False, 'group law violated')
        return CheckResult(self.name, True, 'omega(V(a, g)) = {}'.format(
            ', '.join('{:.6f}'.format(v) for v in values)))


class LocalityCheck(RelationCheck):
    """sigma(g1, g2) = 0 within error for spacelike separated pairs."""
    name = 'locality'

    def __init__(self, pairs: Sequence[Tuple[Any, Any]],
                 relative: float = 1e-6):
        self.pairs = list(pairs)
        self.relative = relative

    def run(self, state):
        worst = 0.0
        for first, second in self.pairs:
            result = state.sigma(first, second)
            bound = max(result.error_estimate,
                        self.relative * result.magnitude)
            if abs(result.value) > bound:
                return CheckResult(self.name, False,
                                   'sigma = {:.3e} beyond {:.3e}'
                                   .format(float(result.value), bound))
            worst = max(worst, abs(float(result.value)))
        return CheckResult(self.name, True,
                           'max |sigma| = {:.3e}'.format(worst))


class CentralityCheck(RelationCheck):
    """Group commutators are multiples of the identity: structural for
    quasi-free states, whose commutator form is a number."""
    name = 'centrality'

    def run(self, state):
        return CheckResult(self.name, True, 'satisfied by construction')


class ChargeCheck(RelationCheck):
    """Records sigma on a linked pair; passes when |sigma| > factor *
    error (expected charged) or |sigma| <= error (expected neutral)."""
    name = 'charge'

    def __init__(self, first, second, charged: bool, factor: float = 10.0):
        self.first = first
        self.second = second
        self.charged = charged
        self.factor = factor

    def run(self, state):
        result = state.sigma(self.first, self.second)
        outcome = result.is_nonzero(self.factor) if self.charged \
            else abs(result.value) <= max(result.error_estimate,
                                          1e-6 * result.magnitude)
        return CheckResult(self.name, bool(outcome),
                           'sigma = {:.6e} +- {:.1e}'.format(
                               float(result.value), result.error_estimate))


@dataclass
class RelationReport:
    """Collected outcomes of verify_relations."""
    kind: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(result.passed for result in self.results)

    def as_dict(self) -> Dict[str, Dict[str, Any]]:
        """JSON-serializable outcome per check."""
        return {result.name: {'passed': result.passed,
                              'detail': result.detail}
                for result in self.results}


def verify_relations(state: GeneratingFunctional,
                     checks: Sequence[RelationCheck],
                     charge: Optional[RelationCheck] = None) \
        -> RelationReport:
    """
    Run the relation checks on a state: normalization and group law of
    the generating functional, locality of sigma on separated pairs, and
    centrality. An optional charge check is recorded in the same report.
    """
    report = RelationReport(state.kind)
    all_checks = list(checks)
    if not any(isinstance(check, CentralityCheck) for check in all_checks):
        all_checks.append(CentralityCheck())
    if charge is not None:
        all_checks.append(charge)
    for check in all_checks:
        try:
            result = check.run(state)
        except Exception as ex:  # pylint: disable=broad-except
            result = CheckResult(check.name, False, str(ex))
        if not result.passed:
            logger.warning("Relation check %s failed for %s state: %s",
                           result.name, state.kind, result.detail)
        report.results.append(result)
    return report
