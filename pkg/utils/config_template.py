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
    config_template.py
    Kinetica project, 2026

    Writes a commented TOML configuration holding every default for a scenario,
    ready to be edited and passed to kinetica.py with --config.

    Arguments:
        - scenario name

    Optional flags:
        - out_file [-of]: Path of the written file. Default is <scenario>.toml

    Returns:
        - TOML file with one table per configuration section
'''

import sys

# Add the parent directory of this file (kinetica root) to the interpreter's path
sys.path.append(f'{"/".join(__file__.split("/")[:-1])}/..')

import toml

from lib.file_processing import DEFAULTS, SCENARIOS, default_config

# One-line descriptions written above each key
KEY_HELP = {
    'model.dynamics': 'classical or relativistic',
    'model.statistics': 'quantum (with alpha), wave, linear; or the tags maxwell, bose, fermi',
    'model.alpha': '-1 Fermi, 0 Boltzmann, +1 Bose',
    'model.d': 'momentum dimension, 2 or 3',
    'model.hbar': 'semiclassical parameter in (0, 1]',
    'kernel.angular': 'angular profile family: power, bump or constant',
    'kernel.nu': 'singularity strength of the power family',
    'kernel.epsilon': 'grazing rescaling of the profile, 0 disables it',
    'kernel.sigma': 'pair factor family: constant or power (sigma0 r^gamma)',
    'quadrature.method': 'deterministic or montecarlo',
    'quadrature.seed': 'seed of the Monte Carlo and random-sample streams',
    'run.operator': 'boltzmann, landau or both',
    'run.variants': 'operator variants such as relativistic-bose, or ["all"]; empty uses [model]',
    'run.halfwidth': 'momentum halfwidth of the solver grid',
    'run.conservative': 'least-squares moment correction of every operator evaluation',
    'run.collisions': 'collision step in slab runs',
    'run.l1_tol': 'bound on the Boltzmann-Landau L1 gap of relax with operator = both and kernel.epsilon > 0',
    'sweep.values': 'swept parameter values; empty uses the scenario default',
    'sweep.min_order': 'acceptance order of the sweep; 0 uses the scenario default',
}

def render_template(scenario:str):
    '''
        Renders the default configuration of a scenario as commented TOML
            Arguments: String of the scenario name
            Returns: String of the TOML text
    '''

    config = default_config(scenario)
    lines = [f'# Kinetica configuration for scenario {scenario}', f'scenario = "{scenario}"', '']

    # Write each table with its keys in declaration order
    for table in DEFAULTS:
        lines.append(f'[{table}]')
        for key in DEFAULTS[table]:
            help_text = KEY_HELP.get(f'{table}.{key}')
            if help_text:
                lines.append(f'# {help_text}')
            lines.append(toml.dumps({key: config[table][key]}).strip())
        lines.append('')

    return '\n'.join(lines)

##################################################
#                 Main Function                  #
##################################################

def main(args):
    '''
        Main Function: Writes the configuration template of the requested scenario
    '''

    outfile = args.out_file if args.out_file else f'{args.scenario}.toml'
    with open(outfile, 'w') as out_f:
        out_f.write(render_template(args.scenario))
    print(f'Wrote {outfile}')

if __name__ == '__main__':
    import argparse

    # Create argparser and parse argument variables
    parser = argparse.ArgumentParser(description='Writes a commented default configuration for a scenario')
    parser.add_argument('scenario', choices=SCENARIOS, help='Scenario the template is written for')
    parser.add_argument('-of', '--out_file', default='', help='Path of the written template')
    args = parser.parse_args()

    main(args)
