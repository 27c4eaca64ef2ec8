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
    file_processing.py
    Kinetica project, 2026

    Reading scenario configurations (TOML) and writing scenario outputs:
    CSV tables, JSON summaries and raw pickles.
'''

import copy
import csv
import hashlib
import json
import math
import os
import pickle

import numpy as np
import toml

from lib import __version__
from lib.distribution import FIXTURES
from lib.kernels import ANGULAR_FAMILIES, AngularProfile, KernelSpec, NormalizationError, SIGMA_FAMILIES, angular_normalize
from lib.model import KineticaError, ModelError, ModelSpec, PhysicalConstants
from lib.quadrature import QuadratureError, QuadratureSpec

class ConfigError(KineticaError):
    '''
        Raised for unreadable or invalid configuration files
    '''
    pass

SCENARIOS = ('lorentz-selftest', 'compatibility', 'equilibrium-check', 'conservation', 'grazing', 'newtonian',
             'semiclassical', 'kinetic-limit', 'linear-limit', 'relax', 'slab', 'generic-audit')

# Alternative scenario names and the scenario they run
ALIASES = {'h-theorem': 'conservation'}

# Statistics tags accepted in place of statistics = 'quantum' plus alpha
STATISTICS_TAGS = {'maxwell': ('quantum', 0), 'bose': ('quantum', 1), 'fermi': ('quantum', -1)}

DEFAULTS = {
    'model': {'dynamics': 'classical', 'statistics': 'quantum', 'alpha': 0, 'd': 2,
              'm': 1.0, 'c': 1.0, 'hbar': 1.0},
    'kernel': {'angular': 'power', 'nu': 1.0, 'theta0': 1e-3, 'epsilon': 0.0,
               'sigma': 'constant', 'sigma0': 1.0, 'gamma': 0.0},
    'quadrature': {'halfwidth': 8.0, 'box_nodes': 24, 'box_panels': 3, 'theta_panels': 8, 'theta_order': 4,
                   'circle_nodes': 16, 'sphere_nodes': 64, 'method': 'deterministic', 'mc_samples': 200000,
                   'seed': 0},
    'run': {'operator': 'boltzmann', 'variants': [], 'fixtures': ['bimodal', 'perturbed'], 'initial': 'bimodal',
            'samples': 10000, 'tolerance': 1e-8, 'nodes': 16, 'halfwidth': 4.0, 't_end': 5.0, 'dt': 0.05,
            'conservative': True, 'collisions': False, 'slab_nodes': 64, 'slab_length': 2.0 * math.pi, 'amplitude': 0.1,
            'l1_tol': 0.1},
    'sweep': {'values': [], 'min_order': 0.0, 'theta': [0.2, 0.1, 0.05, 0.025], 'pairs': 64, 'noise': False},
    'output': {'directory': 'kinetica_out', 'pickle': False},
}

# Defaults that differ by scenario
SCENARIO_DEFAULTS = {
    'equilibrium-check': {'run': {'variants': ['all']}},
    'conservation': {'run': {'variants': ['all']}},
    'grazing': {'run': {'variants': ['all']}},
}

class ScenarioConfig:
    '''
        Validated configuration of one scenario run
            Attributes:
                scenario - scenario name (aliases resolved)

                alias - name the scenario was requested under

                sections - dict of the model, kernel, quadrature, run, sweep and output tables
    '''

    def __init__(self, scenario:str, sections:dict, alias:str = None):
        self.scenario = scenario
        self.alias = alias if alias is not None else scenario
        self.sections = sections

    def __repr__(self):
        return f'ScenarioConfig({self.alias}, seed={self.seed})'

    def __getitem__(self, table:str):
        return self.sections[table]

    @property
    def seed(self):
        return self.sections['quadrature']['seed']

    @property
    def threads(self):
        return self.sections['run'].get('threads', 1)

    def as_dict(self):
        return dict(copy.deepcopy(self.sections), scenario=self.alias)

    def model_spec(self, **changes):
        '''
            ModelSpec of the [model] table with optional field replacements
        '''

        table = self.sections['model']
        constants = PhysicalConstants(table['m'], table['c'], table['hbar'])
        model = ModelSpec(table['dynamics'], table['statistics'], table['alpha'], table['d'], constants)
        return model.replace(**changes) if changes else model

    def kernel_spec(self, model:ModelSpec):
        '''
            KernelSpec of the [kernel] table for a model; the angular profile is normalized
        '''

        table = self.sections['kernel']
        profile = angular_normalize(AngularProfile(table['angular'], model.d, table['nu'], table['theta0']))
        spec = KernelSpec(model, profile, table['sigma'], table['sigma0'], table['gamma'])
        return spec.with_epsilon(table['epsilon']) if table['epsilon'] > 0 else spec

    def quadrature_spec(self):
        return QuadratureSpec(**self.sections['quadrature'])

def _check_type(field:str, value, default):
    if isinstance(default, bool):
        valid = isinstance(value, bool)
    elif isinstance(default, float):
        valid = isinstance(value, (int, float)) and not isinstance(value, bool)
    elif isinstance(default, int):
        valid = isinstance(value, int) and not isinstance(value, bool)
    elif isinstance(default, list):
        valid = isinstance(value, list)
    else:
        valid = isinstance(value, str)
    if not valid:
        raise ConfigError(f'{field}: expected {type(default).__name__}, got {value!r}')
    return float(value) if isinstance(default, float) else value

def _merge(raw:dict, scenario:str):
    sections = copy.deepcopy(DEFAULTS)
    for table, values in SCENARIO_DEFAULTS.get(scenario, {}).items():
        sections[table].update(copy.deepcopy(values))
    # Iterate through the tables given in the file
    for table, values in raw.items():
        if table not in DEFAULTS:
            raise ConfigError(f'{table}: unknown configuration table')
        if not isinstance(values, dict):
            raise ConfigError(f'{table}: expected a table')
        for key, value in values.items():
            if key not in DEFAULTS[table]:
                raise ConfigError(f'{table}.{key}: unknown configuration key')
            sections[table][key] = _check_type(f'{table}.{key}', value, DEFAULTS[table][key])
    return sections

def _validate(sections:dict):
    model = sections['model']
    if model['statistics'] in STATISTICS_TAGS:
        model['statistics'], model['alpha'] = STATISTICS_TAGS[model['statistics']]

    kernel = sections['kernel']
    if kernel['angular'] not in ANGULAR_FAMILIES:
        raise ConfigError(f'kernel.angular: expected one of {ANGULAR_FAMILIES}, got {kernel["angular"]!r}')
    if kernel['sigma'] not in SIGMA_FAMILIES:
        raise ConfigError(f'kernel.sigma: expected one of {SIGMA_FAMILIES}, got {kernel["sigma"]!r}')
    if not 0 <= kernel['epsilon'] <= 1:
        raise ConfigError(f'kernel.epsilon: must lie in [0, 1] (0 disables rescaling), got {kernel["epsilon"]}')

    run = sections['run']
    if run['operator'] not in ('boltzmann', 'landau', 'both'):
        raise ConfigError(f'run.operator: expected boltzmann, landau or both, got {run["operator"]!r}')
    if not run['dt'] > 0 or not run['t_end'] > 0:
        raise ConfigError('run.dt and run.t_end must be positive')
    if not run['l1_tol'] > 0:
        raise ConfigError(f'run.l1_tol: must be positive, got {run["l1_tol"]}')
    for name in run['fixtures'] + [run['initial']]:
        if name not in FIXTURES:
            raise ConfigError(f'run.fixtures: unknown fixture {name!r}; expected one of {FIXTURES}')

    sweep = sections['sweep']
    if any(not isinstance(v, (int, float)) or isinstance(v, bool) for v in sweep['values'] + sweep['theta']):
        raise ConfigError('sweep.values and sweep.theta must be lists of numbers')

    # Building the objects runs their own field checks
    config = ScenarioConfig('validation', sections)
    try:
        config.kernel_spec(config.model_spec())
        config.quadrature_spec()
    except (ModelError, NormalizationError, QuadratureError) as error:
        raise ConfigError(str(error)) from error
    return sections

def default_config(scenario:str):
    '''
        Configuration of a scenario with every default applied
    '''
    return parse_config(None, scenario)

def parse_config(path:str = None, scenario:str = None):
    '''
        Reads and validates a scenario configuration
            Arguments: path of a TOML file (None for defaults only), scenario name overriding
                       the file's top-level scenario key
            Returns: ScenarioConfig with defaults filled
    '''

    raw = {}
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigError(f'Configuration file not found: {path}')
        try:
            raw = toml.load(path)
        except toml.TomlDecodeError as error:
            raise ConfigError(f'{path}: parse error at line {error.lineno} column {error.colno}: {error.msg}') from error

    file_scenario = raw.pop('scenario', None)
    name = scenario if scenario is not None else file_scenario
    if name is None:
        raise ConfigError('scenario: no scenario given on the command line or in the file')
    resolved = ALIASES.get(name, name)
    if resolved not in SCENARIOS:
        raise ConfigError(f'scenario: expected one of {SCENARIOS + tuple(ALIASES)}, got {name!r}')

    return ScenarioConfig(resolved, _validate(_merge(raw, resolved)), name)

def apply_overrides(config:ScenarioConfig, seed:int = None, out:str = None, threads:int = None):
    '''
        Command-line overrides: seed, output directory and thread count
    '''

    if seed is not None:
        config['quadrature']['seed'] = int(seed)
    if out is not None:
        config['output']['directory'] = out
    if threads is not None:
        if threads < 1:
            raise ConfigError(f'threads: must be at least 1, got {threads}')
        config['run']['threads'] = int(threads)
    return config

def config_hash(config:ScenarioConfig):
    '''
        SHA-256 of the canonical JSON form of a configuration (thread count excluded)
    '''

    canonical = config.as_dict()
    canonical['run'].pop('threads', None)
    text = json.dumps(canonical, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode()).hexdigest()

####################################
#          Output Writers          #
####################################

def _cell(value):
    if value is None:
        return ''
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer, np.bool_)):
        return str(value.item())
    return str(value)

def write_csv(path:str, columns, rows):
    '''
        Writes an RFC-4180 table with a header row; floats keep full repr precision
            Arguments: output path, column names, rows as lists or as dicts keyed by column
    '''

    with open(path, 'w', newline='') as out_f:
        writer = csv.writer(out_f, lineterminator='\r\n')
        writer.writerow(columns)
        for row in rows:
            values = [row.get(name) for name in columns] if isinstance(row, dict) else row
            writer.writerow([_cell(v) for v in values])

def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    return str(value)

def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {key: _finite(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value

def write_summary(path:str, summary:dict):
    '''
        Writes a JSON summary; non-finite floats are written as strings
    '''

    with open(path, 'w') as out_f:
        json.dump(_finite(json.loads(json.dumps(summary, default=_json_default))), out_f, indent=2, sort_keys=True)
        out_f.write('\n')

def pickle_result(path:str, result):
    '''
        Serializes a raw scenario result next to its CSV files
    '''

    with open(path, 'wb') as out_f:
        pickle.dump(result, out_f)

def summary_header(config:ScenarioConfig):
    '''
        Fields shared by every summary: scenario, version, config hash and seed
    '''

    return {'scenario': config.alias, 'version': __version__, 'config_hash': config_hash(config),
            'seed': config.seed, 'config': config.as_dict()}
