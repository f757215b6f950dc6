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
"""Result records of charge computations."""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from ..propagator.quadrature import IntegralResult


def _real(value) -> float:
    return float(getattr(value, 'real', value))


@dataclass
class ChargeReport:
    """
    Outcome of one commutator computation between two test forms.
    :param label: short description of the configuration
    :param branches: branch tag of each argument ('electric'/'magnetic')
    :param quantity: which distribution was evaluated, e.g. 'Delta' or
        'Delta(G1,*G2)'
    :param result: commutator value with its quadrature error
    :param linking: linking number of the underlying loops, if known
    :param linking_raw: raw Gauss integral behind linking
    :param kappa: class values of the two arguments, if known
    :param spacelike: whether the supports were verified spacelike
    :param checks: named pass/fail outcomes of additional checks
    :param extras: further numbers, each an IntegralResult or a float
    """
    label: str
    branches: Tuple[str, ...]
    quantity: str
    result: IntegralResult
    linking: Optional[int] = None
    linking_raw: Optional[float] = None
    kappa: Tuple[Optional[float], Optional[float]] = (None, None)
    spacelike: bool = True
    checks: Dict[str, bool] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> float:
        """Commutator value."""
        return float(self.result.value)

    @property
    def error(self) -> float:
        """Quadrature error estimate of the value."""
        return self.result.error_estimate

    @property
    def converged(self) -> bool:
        """True when every quadrature behind the report converged."""
        return self.result.converged and all(
            extra.converged for extra in self.extras.values()
            if isinstance(extra, IntegralResult))

    @property
    def passed(self) -> bool:
        """All recorded checks passed."""
        return all(self.checks.values())

    def to_row(self) -> Dict[str, Any]:
        """
        Flat CSV row; every quadrature-derived column x is followed by
        x_err.
        """
        row: Dict[str, Any] = {
            'label': self.label,
            'branches': '/'.join(self.branches),
            'quantity': self.quantity,
            'value': self.value,
            'value_err': self.error,
            'converged': self.converged,
            'linking': '' if self.linking is None else self.linking,
            'linking_raw': '' if self.linking_raw is None
            else self.linking_raw,
            'kappa1': '' if self.kappa[0] is None else self.kappa[0],
            'kappa2': '' if self.kappa[1] is None else self.kappa[1],
            'spacelike': self.spacelike,
        }
        for name, extra in sorted(self.extras.items()):
            if isinstance(extra, IntegralResult):
                row[name] = _real(extra.value)
                row[name + '_err'] = extra.error_estimate
            else:
                row[name] = extra
        for name, outcome in sorted(self.checks.items()):
            row['check_' + name] = outcome
        return row

    def summary(self) -> str:
        """Human-readable block."""
        lines = ['{}: {} = {:.6e} +- {:.1e}{}'.format(
            self.label, self.quantity, self.value, self.error,
            '' if self.converged else ' (NOT CONVERGED)')]
        lines.append('  branches: {}'.format(', '.join(self.branches)))
        if self.linking is not None:
            lines.append('  linking number: {} (raw {:.6f})'.format(
                self.linking, self.linking_raw))
        if any(k is not None for k in self.kappa):
            lines.append('  class values: {}'.format(', '.join(
                'n/a' if k is None else '{:.6e}'.format(k)
                for k in self.kappa)))
        if not self.spacelike:
            lines.append('  supports NOT verified spacelike separated')
        for name, extra in sorted(self.extras.items()):
            if isinstance(extra, IntegralResult):
                lines.append('  {}: {:.6e} +- {:.1e}'.format(
                    name, _real(extra.value),
                    extra.error_estimate))
            else:
                lines.append('  {}: {}'.format(name, extra))
        for name, outcome in sorted(self.checks.items()):
            lines.append('  [{}] {}'.format('PASS' if outcome else 'FAIL',
                                            name))
        return '\n'.join(lines)
