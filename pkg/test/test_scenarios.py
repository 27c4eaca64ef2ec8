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
    test_scenarios.py
    Kinetica project, 2026

    Tests of the scenario functions on small budgets. The limit sweeps and
    time evolutions only run with --full.
'''

import json
import os

import pytest

from lib.file_processing import ConfigError, default_config
from lib.scenarios import (SCENARIO_FUNCTIONS, VARIANTS, conservation, equilibrium_check, run_scenario, variant_model,
                           variant_models)

SMALL_QUADRATURE = {'halfwidth': 5.0, 'box_nodes': 8, 'box_panels': 2, 'theta_panels': 2, 'theta_order': 2,
                    'circle_nodes': 6, 'sphere_nodes': 16}

##################################################
#                 Test Functions                 #
##################################################

def test_every_scenario_registered():
    '''
        Every scenario name has a function
    '''

    from lib.file_processing import SCENARIOS
    assert set(SCENARIO_FUNCTIONS) == set(SCENARIOS)

def test_variants():
    '''
        Variant names map to dynamics and statistics; 'all' expands to every variant
    '''

    config = small_config('equilibrium-check')
    model = variant_model('relativistic-bose', config)
    assert model.dynamics == 'relativistic' and model.tag == 'bose'
    assert variant_model('classical-linear', config).statistics == 'linear'
    with pytest.raises(ConfigError):
        variant_model('quantum-bose', config)

    assert len(variant_models(config)) == len(VARIANTS) == 10
    config['run']['variants'] = []
    assert [name for name, _ in variant_models(config)] == ['classical-maxwell']

@pytest.mark.parametrize('scenario, variants', [('equilibrium-check', ['all']), ('conservation', ['all']),
                                                ('h-theorem', ['all']), ('grazing', ['all']), ('relax', []),
                                                ('newtonian', [])])
def test_variant_defaults(scenario, variants):
    '''
        The operator checks and the grazing sweep cover every variant unless the file narrows them
    '''

    assert default_config(scenario)['run']['variants'] == variants

def test_equilibrium_check():
    '''
        The Boltzmann operator vanishes at the matched equilibria
    '''

    config = small_config('equilibrium-check', run={'variants': ['classical-maxwell', 'classical-fermi']})
    result = equilibrium_check(config, quiet=True)

    columns, rows = result.tables['equilibrium']
    assert columns[0] == 'variant' and len(rows) == 2
    for name in ('classical-maxwell', 'classical-fermi'):
        assert result.statistics.checks[f'{name}.boltzmann.sup_norm']['passed']

def test_conservation():
    '''
        Weak forms of the invariants vanish for both operators, the dissipation is nonnegative and both
        operators carry the strong-vs-weak and entropy-pairing cross-checks
    '''

    config = small_config('conservation', run={'variants': ['classical-maxwell'], 'fixtures': ['bimodal'],
                                               'operator': 'both'})
    result = conservation(config, quiet=True)

    _, rows = result.tables['conservation']
    assert len(rows) == 15
    checks = result.statistics.checks
    for operator in ('boltzmann', 'landau'):
        label = f'classical-maxwell.bimodal.{operator}'
        for invariant in ('const(1.0)', 'p0', 'p1', 'energy', 'dissipation'):
            assert checks[f'{label}.{invariant}']['passed'], (label, invariant)
        for cross_check in ('strong_vs_weak', 'entropy_pairing'):
            assert checks[f'{label}.{cross_check}']['tolerance'] <= 1e-5, (label, cross_check)

def test_collisionless_slab(out_dir):
    '''
        A collisionless slab passes the Poisson checks and the audit, and writes its files
    '''

    config = small_config('slab', out_dir, run={'collisions': False, 'nodes': 8, 'slab_nodes': 16, 't_end': 0.2,
                                                'dt': 0.05, 'fixtures': ['bimodal']})
    status, result = run_scenario(config, quiet=True)

    assert status == 0, str(result.statistics)
    assert sorted(result.tables) == ['monitors', 'poisson']
    assert [row[0] for row in result.tables['poisson'][1]] == ['bimodal', 'equilibrium']
    assert len(result.tables['monitors'][1]) == 5
    with open(os.path.join(out_dir, 'slab_summary.json')) as in_f:
        summary = json.load(in_f)
    assert summary['status'] == 'pass'
    assert summary['tables'] == ['slab_poisson.csv', 'slab_monitors.csv']

@pytest.mark.parametrize('name, table', [('semiclassical', 'semiclassical'), ('kinetic-limit', 'kinetic'),
                                         ('linear-limit', 'linear')])
def test_limit_scenarios(full, out_dir, name, table):
    '''
        Limit sweeps write their tables and pass the expansion oracles
    '''

    if not full:
        pytest.skip('Limit sweeps run with --full')

    config = small_config(name, out_dir, run={'samples': 200}, sweep={'values': [0.4, 0.2, 0.1]})
    _, result = run_scenario(config, quiet=True)
    assert result is not None
    assert table in result.tables
    assert result.statistics.checks[f'{table}.expansion']['passed']

def test_grazing_scenario(full, out_dir):
    '''
        The grazing scenario writes the sweep and both lemma tables of every variant
    '''

    if not full:
        pytest.skip('Grazing sweep runs with --full')

    config = small_config('grazing', out_dir, kernel={'angular': 'constant'}, sweep={'values': [0.4, 0.2, 0.1]},
                          run={'variants': ['classical-maxwell', 'relativistic-bose']})
    _, result = run_scenario(config, quiet=True)
    assert result is not None
    assert sorted(result.tables) == ['grazing_classical-maxwell', 'grazing_relativistic-bose',
                                     'lemma_classical-maxwell_0', 'lemma_classical-maxwell_1',
                                     'lemma_relativistic-bose_0', 'lemma_relativistic-bose_1']
    for name in ('classical-maxwell', 'relativistic-bose'):
        for index in (0, 1):
            assert result.statistics.checks[f'lemma_{name}_{index}.ratio_defect']['passed'], (name, index)

def test_relax_scenario(full, out_dir):
    '''
        A short relaxation completes and records the monitors and the step-doubling ratio
    '''

    if not full:
        pytest.skip('Relaxation runs with --full')

    config = small_config('relax', out_dir, kernel={'angular': 'constant'},
                          run={'nodes': 8, 't_end': 0.1, 'dt': 0.02})
    status, result = run_scenario(config, quiet=True)
    with open(os.path.join(out_dir, 'relax_summary.json')) as in_f:
        summary = json.load(in_f)

    assert status in (0, 1), summary.get('error')
    assert summary['status'] in ('pass', 'fail')
    assert len(result.tables['monitors_boltzmann'][1]) == 6
    assert 'boltzmann_richardson' in result.reports
    checks = result.statistics.checks
    assert checks['boltzmann.energy_drift']['passed']
    assert checks['boltzmann.entropy_production']['passed']

def test_relax_landau_boltzmann_gap(full, out_dir):
    '''
        With a rescaled kernel the Boltzmann and Landau end states stay within run.l1_tol
    '''

    if not full:
        pytest.skip('Relaxation runs with --full')

    config = small_config('relax', out_dir, kernel={'angular': 'constant', 'epsilon': 0.2},
                          run={'operator': 'both', 'nodes': 8, 't_end': 0.1, 'dt': 0.02})
    status, result = run_scenario(config, quiet=True)

    assert status in (0, 1)
    assert sorted(result.tables) == ['monitors_boltzmann', 'monitors_landau']
    check = result.statistics.checks['landau_boltzmann_l1']
    assert check['passed'], check
    assert result.reports['landau_boltzmann_l1'] < config['run']['l1_tol']

##################################################
#            Helper Classes/Functions            #
##################################################

def small_config(scenario:str, directory:str = None, **tables):
    '''
        Default configuration of a scenario on the small quadrature, with table updates
    '''

    config = default_config(scenario)
    config['quadrature'].update(SMALL_QUADRATURE)
    for table, values in tables.items():
        config[table].update(values)
    if directory is not None:
        config['output']['directory'] = directory
    return config
