#!/usr/bin/env python3
#
# Copyright (C) 2026 Kinetica contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# SPDX-License-Identifier: Apache-2.0

'''
    kinetica.py
    Kinetica project, 2026

    Runs one verification scenario of the kinetic collision operators and
    writes its CSV tables and JSON summary.

    Arguments:
        - scenario name (lorentz-selftest, compatibility, equilibrium-check, conservation
          or its alias h-theorem, grazing, newtonian, semiclassical, kinetic-limit,
          linear-limit, relax, slab, generic-audit)

    Optional flags:
        - config [-c]: TOML configuration file. Defaults apply to every missing key
        - out [-o]: Output directory, overriding output.directory
        - seed [-s]: Seed, overriding quadrature.seed
        - threads [-t]: Worker threads (else KINETICA_THREADS, else 1)
        - pickle [-p]: Write the raw scenario result as a .pickle file
        - quiet [-q]: Suppress status lines and progress bars
        - verbose [-v]: Debug logging

    Returns:
        - exit status 0 if every check passed, 1 if a check failed, 2 on errors
'''

import logging
import os
import sys
import time

from lib.file_processing import ConfigError, apply_overrides, parse_config
from lib.model import KineticaError
from lib.scenarios import run_scenario
from lib.statistics import print_stat_footer

def resolve_threads(arg_threads:int = None):
    '''
        Thread count from the command line, else the KINETICA_THREADS environment variable, else 1
    '''

    if arg_threads is not None:
        return arg_threads
    env_threads = os.environ.get('KINETICA_THREADS', '')
    if env_threads:
        try:
            return int(env_threads)
        except ValueError:
            raise ConfigError(f'KINETICA_THREADS must be an integer, got {env_threads!r}')
    return 1

##################################################
#                 Main Function                  #
##################################################

def main(args):
    '''
        Main function: Parses the configuration, runs the scenario and reports its checks.
            Returns: exit status
    '''

    t_start = time.perf_counter()
    say = (lambda message: None) if args.quiet else print
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    say('Parsing configuration...')
    try:
        config = parse_config(args.config, args.scenario)
        apply_overrides(config, args.seed, args.out, resolve_threads(args.threads))
    except KineticaError as error:
        print(f'Configuration error: {error}', file=sys.stderr)
        return 2

    say(f'Running scenario {config.alias}...')
    status, result = run_scenario(config, args.quiet, args.pickle)

    if result is None:
        print(f'Scenario {config.alias} aborted; see {config["output"]["directory"]}/{config.alias}_summary.json',
              file=sys.stderr)
        return status

    say('Printing Statistical Footer...')
    if not args.quiet:
        print_stat_footer(result.statistics, config.alias, time.perf_counter() - t_start)
    return status

if __name__ == '__main__':
    import argparse
    # Create Argument Parser to take in commandline arguments
    parser = argparse.ArgumentParser(description='Runs a verification scenario of the Boltzmann- and '
                                                + 'Landau-type collision operators and writes CSV '
                                                + 'tables with a JSON summary.')
    parser.add_argument('scenario', help='Scenario to run')
    # Configuration and Overrides
    parser.add_argument('-c', '--config', default=None, help='TOML configuration file')
    parser.add_argument('-o', '--out', default=None, help='Output directory')
    parser.add_argument('-s', '--seed', type=int, default=None, help='Seed of the random streams')
    parser.add_argument('-t', '--threads', type=int, default=None, help='Worker threads')
    # Feature Flags
    parser.add_argument('-p', '--pickle', action='store_true',
                        help='Flag to write a .pickle file containing the raw scenario result')
    parser.add_argument('-q', '--quiet', action='store_true', help='Suppress status lines and progress bars')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    args = parser.parse_args()

    sys.exit(main(args))
