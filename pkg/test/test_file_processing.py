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
    test_file_processing.py
    Kinetica project, 2026

    Unit tests of configuration parsing and of the CSV/JSON writers.
'''

import json
import math
import os

import pytest

from lib.file_processing import (ConfigError, DEFAULTS, apply_overrides, config_hash, default_config, parse_config,
                                 write_csv, write_summary)

##################################################
#                 Test Functions                 #
##################################################

def test_defaults():
    '''
        Omitted keys take their defaults and the model builds
    '''

    config = default_config('grazing')
    assert config.scenario == 'grazing'
    assert config['quadrature']['halfwidth'] == DEFAULTS['quadrature']['halfwidth']
    assert config['run']['fixtures'] == ['bimodal', 'perturbed']
    model = config.model_spec()
    assert model.tag == 'maxwell' and model.d == 2
    assert config.kernel_spec(model).epsilon is None

def test_file_values(out_dir):
    '''
        File values override defaults; the scenario name comes from the file or the caller
    '''

    path = write_config(out_dir, 'scenario = "newtonian"\n[model]\nstatistics = "bose"\nd = 3\n'
                                 '[sweep]\nvalues = [10.0, 20.5]\n[quadrature]\nhalfwidth = 6\n')
    config = parse_config(path)
    assert config.scenario == 'newtonian'
    assert config['model']['statistics'] == 'quantum' and config['model']['alpha'] == 1
    assert config['quadrature']['halfwidth'] == 6.0 and isinstance(config['quadrature']['halfwidth'], float)
    assert config['sweep']['values'] == [10.0, 20.5]
    assert parse_config(path, 'compatibility').scenario == 'compatibility'

def test_scenario_variant_defaults(out_dir):
    '''
        Operator checks default to every variant; a file can narrow the list back to the [model] table
    '''

    assert default_config('conservation')['run']['variants'] == ['all']
    assert default_config('relax')['run']['variants'] == []
    path = write_config(out_dir, 'scenario = "grazing"\n[run]\nvariants = []\n')
    assert parse_config(path)['run']['variants'] == []
    assert DEFAULTS['run']['variants'] == []

def test_alias():
    '''
        Aliases run their scenario and keep the requested name
    '''

    config = default_config('h-theorem')
    assert config.scenario == 'conservation'
    assert config.alias == 'h-theorem'
    assert config.as_dict()['scenario'] == 'h-theorem'

@pytest.mark.parametrize('text, message', [
    ('scenario = "relax"\n[modle]\nd = 2\n', 'modle: unknown configuration table'),
    ('scenario = "relax"\n[model]\ndimension = 2\n', 'model.dimension: unknown configuration key'),
    ('scenario = "relax"\n[model]\nd = "two"\n', 'model.d: expected int'),
    ('scenario = "relax"\n[run]\nconservative = 1\n', 'run.conservative: expected bool'),
    ('scenario = "relax"\n[kernel]\nangular = "cosine"\n', 'kernel.angular'),
    ('scenario = "relax"\n[run]\ninitial = "shifted"\n', 'unknown fixture'),
    ('scenario = "relax"\n[run]\ndt = -0.1\n', 'must be positive'),
    ('scenario = "drift"\n', 'scenario: expected one of'),
    ('[model]\nd = 2\n', 'no scenario given'),
])
def test_invalid_files(out_dir, text, message):
    '''
        Invalid files raise ConfigError naming the offending field
    '''

    path = write_config(out_dir, text)
    with pytest.raises(ConfigError) as error:
        parse_config(path)
    assert message in str(error.value)

def test_parse_error_position(out_dir):
    '''
        TOML syntax errors report a line and column
    '''

    path = write_config(out_dir, 'scenario = "relax\n[model]\n')
    with pytest.raises(ConfigError) as error:
        parse_config(path)
    assert 'parse error at line' in str(error.value)
    assert 'column' in str(error.value)

def test_missing_file(out_dir):
    '''
        A missing file raises ConfigError
    '''

    with pytest.raises(ConfigError):
        parse_config(os.path.join(out_dir, 'absent.toml'))

def test_overrides_and_hash():
    '''
        Seed and output overrides change the hash; the thread count does not
    '''

    config = default_config('compatibility')
    reference = config_hash(config)
    assert len(reference) == 64

    apply_overrides(config, threads=4)
    assert config.threads == 4
    assert config_hash(config) == reference

    apply_overrides(config, seed=7, out='elsewhere')
    assert config.seed == 7
    assert config['output']['directory'] == 'elsewhere'
    assert config_hash(config) != reference

    with pytest.raises(ConfigError):
        apply_overrides(config, threads=0)

def test_write_csv(out_dir):
    '''
        CSV tables use CRLF line ends and full float precision
    '''

    path = os.path.join(out_dir, 'table.csv')
    write_csv(path, ['name', 'value', 'flag'], [['a', 0.1, True], {'name': 'b', 'value': 1 / 3}])
    with open(path, 'rb') as in_f:
        text = in_f.read().decode()
    assert text.split('\r\n') == ['name,value,flag', 'a,0.1,True', f'b,{1 / 3!r},', '']

def test_write_summary(out_dir):
    '''
        Summaries are valid JSON with non-finite floats written as strings
    '''

    path = os.path.join(out_dir, 'summary.json')
    write_summary(path, {'passed': True, 'error': math.inf, 'order': math.nan, 'values': [1.5, -math.inf]})
    with open(path) as in_f:
        summary = json.load(in_f)
    assert summary == {'passed': True, 'error': 'inf', 'order': 'nan', 'values': [1.5, '-inf']}

##################################################
#            Helper Classes/Functions            #
##################################################

def write_config(directory, text:str):
    '''
        Writes a configuration file and returns its path
    '''

    path = os.path.join(directory, 'config.toml')
    with open(path, 'w') as out_f:
        out_f.write(text)
    return path
