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
"""Command line of topocharge."""
import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .. import __version__
from ..exc import ConfigError, TopochargeException
from ..exterior.cache import TransformCache, get_cache, set_cache
from ..utils import CACHE_ENV_VAR, resolve_cache_dir
from .config import SCAN_PARAMETERS, ExperimentConfig, load_config
from .experiments import (output_header, run_charge_table, run_hopf,
                          run_linking, run_scan, save_json, write_csv)
from .suites import SUITES, run_suites

logger = logging.getLogger('topocharge')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def get_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per experiment."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH',
                        help='JSON configuration file')
    common.add_argument('--out', metavar='DIR', help='output directory')
    common.add_argument('--threads', type=int, metavar='N',
                        help='worker threads for momentum panels')
    common.add_argument('--cache', metavar='DIR',
                        help='transform cache directory (overrides {})'
                        .format(CACHE_ENV_VAR))
    common.add_argument('--seed', type=int, metavar='N',
                        help='seed of the randomized suites')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='more logging (-vv for debug)')

    parser = argparse.ArgumentParser(
        prog='topocharge',
        description='Topological charges of the free Maxwell field')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    verify = commands.add_parser('verify', parents=[common],
                                 help='run the verification suites')
    verify.add_argument('--suite', action='append', choices=list(SUITES),
                        help='run only this suite (repeatable)')
    commands.add_parser('hopf', parents=[common],
                        help='charge of the Hopf-linked pair')
    scan = commands.add_parser('scan', parents=[common],
                               help='scan one parameter of the experiment')
    scan.add_argument('--param', choices=SCAN_PARAMETERS,
                      help='parameter to scan')
    scan.add_argument('--values', type=float, nargs='+', metavar='X',
                      help='values of the parameter')
    commands.add_parser('linking', parents=[common],
                        help='linking numbers of the loop pair')
    commands.add_parser('charge-table', parents=[common],
                        help='Roberts term for every traversal pair')
    cache = commands.add_parser('cache', parents=[common],
                                help='inspect or clear the transform cache')
    cache.add_argument('--clear', action='store_true',
                       help='remove every cached table')
    return parser


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Defaults, then the config file, then flags; the cache directory
    falls back to the environment when no flag names it.
    :raises ConfigError: on invalid files or values
    """
    config = load_config(args.config)
    if args.out:
        config = replace(config, output=replace(config.output,
                                                directory=args.out))
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError("--threads must be positive")
        config = replace(config, threads=args.threads)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed must be non-negative")
        config = replace(config, seed=args.seed)
    if args.cache:
        config = replace(config, cache_dir=args.cache)
    elif os.environ.get(CACHE_ENV_VAR):
        config = replace(config, cache_dir=os.environ[CACHE_ENV_VAR])
    if getattr(args, 'param', None):
        config = replace(config, scan=replace(config.scan, param=args.param))
    if getattr(args, 'values', None):
        config = replace(config, scan=replace(config.scan,
                                              values=list(args.values)))
    return config


def _output(config: ExperimentConfig, name: str) -> Path:
    return Path(config.output.directory) / name


def _write(command: str, config: ExperimentConfig,
           rows: Sequence[Dict[str, Any]], results: Dict[str, Any]):
    write_csv(_output(config, config.output.csv_name), rows,
              output_header(command, config))
    save_json(_output(config, config.output.report_name),
              {'command': command, 'version': __version__,
               'config': config.to_dict(), 'results': results})


def cmd_verify(config: ExperimentConfig,
               names: Optional[List[str]] = None) -> int:
    """Run the suites, print a pass/fail table, write the JSON report."""
    outcome = run_suites(config, names or ())
    passed = True
    report: Dict[str, Any] = {}
    for suite, results in outcome.items():
        report[suite] = {result.name: {'passed': result.passed,
                                       'detail': result.detail}
                         for result in results}
        for result in results:
            passed = passed and result.passed
            print('[{}] {:<12} {:<36} {}'.format(
                'PASS' if result.passed else 'FAIL', suite, result.name,
                result.detail))
    save_json(_output(config, config.output.report_name),
              {'command': 'verify', 'version': __version__,
               'config': config.to_dict(), 'passed': passed,
               'results': report})
    print('verify: {}'.format('PASSED' if passed else 'FAILED'))
    return EXIT_OK if passed else EXIT_FAILURE


def cmd_hopf(config: ExperimentConfig) -> int:
    """The Hopf experiment; the report is written even when it fails."""
    report = run_hopf(config)
    _write('hopf', config, [report.to_row()],
           {'summary': report.summary(), 'row': report.to_row()})
    print(report.summary())
    return EXIT_OK if report.converged and report.passed else EXIT_FAILURE


def cmd_scan(config: ExperimentConfig) -> int:
    """One CSV row per value of the scanned parameter."""
    rows, summary = run_scan(config)
    _write('scan', config, rows, {'scan': summary, 'rows': rows})
    for key, value in sorted(summary.items()):
        print('{}: {}'.format(key, value))
    converged = all(row.get('converged', True) for row in rows)
    return EXIT_OK if converged else EXIT_FAILURE


def cmd_linking(config: ExperimentConfig) -> int:
    """Gauss linking numbers; fails if any pair has none."""
    rows = run_linking(config)
    _write('linking', config, rows, {'rows': rows})
    for row in rows:
        print('n1={n1} n2={n2} linking={linking} raw={linking_raw}'
              .format(**row))
    return EXIT_OK if all(row['linking'] != '' for row in rows) \
        else EXIT_FAILURE


def cmd_charge_table(config: ExperimentConfig) -> int:
    """Traversal table of the cone co-primitives."""
    rows = run_charge_table(config)
    _write('charge-table', config, rows, {'rows': rows})
    for row in rows:
        print('n1={n1} n2={n2} value={value:.6e} +- {value_err:.1e} '
              'ratio={ratio:.6f}'.format(**row))
    return EXIT_OK if all(row['converged'] for row in rows) \
        else EXIT_FAILURE


def cmd_cache(clear: bool) -> int:
    """Show or clear the transform cache."""
    cache = get_cache()
    if clear:
        removed = cache.clear()
        print('Removed {} entries from {}'.format(removed, cache.directory))
    else:
        print('{}: {} entries'.format(cache.directory, len(cache.entries())))
    return EXIT_OK


def _dispatch(args: argparse.Namespace, config: ExperimentConfig) -> int:
    commands: Dict[str, Callable[[], int]] = {
        'verify': lambda: cmd_verify(config, args.suite),
        'hopf': lambda: cmd_hopf(config),
        'scan': lambda: cmd_scan(config),
        'linking': lambda: cmd_linking(config),
        'charge-table': lambda: cmd_charge_table(config),
        'cache': lambda: cmd_cache(args.clear),
    }
    return commands[args.command]()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Start the command line
    """
    parser = get_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO,
               logging.DEBUG)[min(args.verbose, 2)],
        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        config = build_config(args)
    except ConfigError as ex:
        logger.error("%s", ex)
        return EXIT_USAGE
    set_cache(TransformCache(resolve_cache_dir(config.cache_dir)))
    try:
        return _dispatch(args, config)
    except TopochargeException as ex:
        logger.error("%s failed: %s", args.command, ex)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
