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
    conftest.py
    Kinetica project, 2026

    Simple pytest configuration script for running unit tests on Kinetica
'''

import os
import sys

import pytest

# Add the kinetica root directory to the module import path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from lib.kernels import AngularProfile, KernelSpec, angular_normalize
from lib.model import ModelSpec, PhysicalConstants
from lib.quadrature import QuadratureSpec

def pytest_addoption(parser):
    parser.addoption('--full', action='store_true', default=False,
                     help='Flag to also run the slow operator-level scenario tests')
    parser.addoption('--keep_files', action='store_true', default=False,
                     help='Flag to not delete testing files when tests finish')

@pytest.fixture
def full(request):
    return request.config.getoption('--full')

@pytest.fixture
def keep_files(request):
    return request.config.getoption('--keep_files')

@pytest.fixture
def out_dir(tmp_path, keep_files):
    '''
        Output directory of a test; kept under ./test_output with --keep_files
    '''

    if keep_files:
        path = os.path.join('test_output', os.path.basename(str(tmp_path)))
        os.makedirs(path, exist_ok=True)
        return path
    return str(tmp_path)

@pytest.fixture
def small_quadrature():
    return QuadratureSpec(halfwidth=5.0, box_nodes=8, box_panels=2, theta_panels=4, theta_order=3,
                          circle_nodes=6, sphere_nodes=16)

@pytest.fixture
def classical_model():
    return ModelSpec('classical', 'quantum', 0, 2)

@pytest.fixture
def relativistic_model():
    return ModelSpec('relativistic', 'quantum', 0, 2, PhysicalConstants(1.0, 2.0))

@pytest.fixture
def smooth_kernel(classical_model):
    '''
        Constant sigma with the normalized constant angular profile
    '''
    return KernelSpec(classical_model, angular_normalize(AngularProfile('constant', 2)))
