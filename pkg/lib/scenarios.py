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
    scenarios.py
    Kinetica project, 2026

    Scenario runners behind the command line: each scenario evaluates one
    family of checks, records them in a Statistics ledger and returns tables
    that run_scenario writes as CSV next to a JSON summary.
'''

import logging
import os
import time

import numpy as np
from tqdm import tqdm

from lib.boltzmann import (compatibility_sweep, dissipation_potential, entropy_dissipation, evaluate_Q_grid,
                           named_row, named_triple, random_tuples, strong_pairing, weak_form, weak_form_scale)
from lib.distribution import (collision_invariants, entropy_variation, fixture, gaussian_field,
                              matched_equilibrium)
from lib.file_processing import (ConfigError, ScenarioConfig, pickle_result, summary_header, write_csv,
                                 write_summary)
from lib.generic import generic_energy_entropy_audit, poisson_checks
from lib.kinematics import lorentz_audit
from lib.landau import evaluate_QL_grid, landau_dissipation, landau_strong_pairing, landau_weak_form
from lib.limits import (grazing_lemma_pointwise, grazing_sweep, kinetic_expansion_defect, kinetic_limit_check,
                        linear_expansion_defect, linear_limit_check, newtonian_sweep,
                        semiclassical_expansion_defect, semiclassical_sweep)
from lib.model import KineticaError, ModelSpec, PhysicalConstants
from lib.quadrature import box_rule, stream
from lib.solver import Solver
from lib.statistics import Statistics

logger = logging.getLogger(__name__)

# Statistics of the operator variants, by tag
VARIANT_STATISTICS = {'maxwell': ('quantum', 0), 'bose': ('quantum', 1), 'fermi': ('quantum', -1),
                      'wave': ('wave', 0), 'linear': ('linear', 0)}
VARIANTS = tuple(f'{dynamics}-{tag}' for dynamics in ('classical', 'relativistic') for tag in VARIANT_STATISTICS)

# Row and weight-triple pairs of the compatibility scenario
COMPATIBILITY_PAIRS = (('maxwell', 'maxwell-cosh'), ('maxwell', 'maxwell-logmean'), ('bose', 'bose-cosh'),
                       ('bose', 'bose-logmean'), ('fermi', 'fermi-cosh'), ('fermi', 'fermi-logmean'),
                       ('wave', 'wave-quadratic'), ('linear', 'linear-quadratic'))

LORENTZ_TOLERANCES = {'inverse': 1e-12, 'boost_time': 1e-10, 'boost_space': 1e-10, 'momentum': 1e-12,
                      'energy': 1e-12, 'on_shell': 1e-10, 'angle': 1e-10, 'projection': 1e-10}

EQUILIBRIUM_TOL = 1e-5
ORACLE_TOL = 1e-12
# Strong pairings against the weak forms and the dissipation
CROSS_CHECK_TOL = 1e-5

class ScenarioResult:
    '''
        Everything a scenario produced
            Attributes:
                scenario - scenario name

                tables - dict of table name -> (columns, rows) written as CSV

                statistics - Statistics ledger of the checks

                reports - JSON-ready dict of scenario-specific results
    '''

    __slots__ = ('scenario', 'tables', 'statistics', 'reports')

    def __init__(self, scenario:str):
        self.scenario = scenario
        self.tables = {}
        self.statistics = Statistics()
        self.reports = {}

    def __repr__(self):
        return f'ScenarioResult({self.scenario}, passed={self.statistics.passed})'

    def add_table(self, name:str, columns, rows):
        self.tables[name] = (list(columns), list(rows))

    def add_sweep(self, name:str, report):
        '''
            Records a SweepReport: its table, summary and one check per error series
        '''

        rows = report.rows()
        self.add_table(name, list(rows[0]), rows)
        self.reports[name] = report.summary()
        for series in report.series:
            self.statistics.check(f'{name}.{series}', report.series_passed(series), report.order(series),
                                  report.min_order)

def _progress(total:int, description:str, quiet:bool):
    bar = tqdm(total=total, disable=quiet)
    bar.set_description(description)
    return bar

def variant_model(name:str, config:ScenarioConfig):
    '''
        ModelSpec of a variant name such as relativistic-bose, with the constants of the config
    '''

    dynamics, _, tag = name.partition('-')
    if name not in VARIANTS:
        raise ConfigError(f'run.variants: unknown variant {name!r}; expected one of {VARIANTS} or "all"')
    statistics, alpha = VARIANT_STATISTICS[tag]
    return config.model_spec(dynamics=dynamics, statistics=statistics, alpha=alpha)

def variant_models(config:ScenarioConfig):
    '''
        Models listed in run.variants; the [model] table alone when the list is empty
    '''

    names = config['run']['variants']
    if not names:
        model = config.model_spec()
        return [(f'{model.dynamics}-{model.tag}', model)]
    if names == ['all']:
        names = list(VARIANTS)
    return [(name, variant_model(name, config)) for name in names]

def _operators(config:ScenarioConfig):
    operator = config['run']['operator']
    return ['boltzmann', 'landau'] if operator == 'both' else [operator]

def _sweep_values(config:ScenarioConfig, default):
    values = config['sweep']['values']
    return [float(v) for v in values] if values else list(default)

def _min_order(config:ScenarioConfig, default:float):
    return config['sweep']['min_order'] or default

def _test_field(model:ModelSpec):
    center = np.zeros(model.d)
    center[0] = 0.4
    return gaussian_field(center, 1.2)

##################################################
#              Algebraic Scenarios               #
##################################################

def lorentz_selftest(config:ScenarioConfig, quiet:bool = False):
    '''
        Frame, boost and parametrization defects over m, c in {0.5, 1, 2} and d in {2, 3}
    '''

    result = ScenarioResult('lorentz-selftest')
    samples = config['run']['samples']
    keys = list(LORENTZ_TOLERANCES)
    rows = []

    bar = _progress(18, 'Auditing Lorentz frames', quiet)
    for d in (2, 3):
        for m in (0.5, 1.0, 2.0):
            for c in (0.5, 1.0, 2.0):
                audit = lorentz_audit(PhysicalConstants(m, c), d, samples, config.seed)
                rows.append([m, c, d] + [audit[key] for key in keys])
                bar.update(1)
    bar.close()

    result.add_table('defects', ['m', 'c', 'd'] + keys, rows)
    for index, key in enumerate(keys):
        worst = max(row[3 + index] for row in rows)
        result.statistics.check_below(f'lorentz.{key}', worst, LORENTZ_TOLERANCES[key])
    result.reports['samples'] = samples
    return result

def compatibility(config:ScenarioConfig, quiet:bool = False):
    '''
        Compatibility of every row with its weight triples for n = 2 and 3, with the kappa values
    '''

    result = ScenarioResult('compatibility')
    samples = min(config['run']['samples'], 1000)
    rows = []

    bar = _progress(2 * len(COMPATIBILITY_PAIRS), 'Checking compatibility', quiet)
    for n in (2, 3):
        for row_name, triple_name in COMPATIBILITY_PAIRS:
            triple = named_triple(triple_name)
            report = compatibility_sweep(named_row(row_name, n), triple, samples, config.seed)
            expected = 1.0 / n if row_name in ('wave', 'linear') else 1.0
            rows.append([row_name, triple_name, n, report['kappa'], expected, report['max_residual'],
                         report['max_kappa_deviation']])

            label = f'{triple_name}.n{n}'
            result.statistics.check_below(f'{label}.residual', report['max_residual'], 1e-10)
            result.statistics.check_below(f'{label}.kappa', abs(report['kappa'] - expected), 1e-10)
            bar.update(1)
    bar.close()

    result.add_table('kappa', ['row', 'triple', 'n', 'kappa', 'expected_kappa', 'max_residual',
                               'max_kappa_deviation'], rows)
    result.reports['kappa'] = {f'{row[1]}.n{row[2]}': row[3] for row in rows}
    return result

##################################################
#             Operator-Level Scenarios           #
##################################################

def _output_nodes(model:ModelSpec, halfwidth:float):
    axis = np.linspace(-0.25 * halfwidth, 0.25 * halfwidth, 5 if model.d == 2 else 3)
    return np.stack(np.meshgrid(*([axis] * model.d), indexing='ij'), axis=-1).reshape(-1, model.d)

def _operator_values(f, nodes, model, spec, quadrature, operator:str, threads:int):
    if operator == 'landau':
        return evaluate_QL_grid(f, nodes, model, spec, quadrature, threads)
    return evaluate_Q_grid(f, nodes, model, spec, quadrature, threads)[0]

def equilibrium_check(config:ScenarioConfig, quiet:bool = False):
    '''
        Sup-norm of the operators at the matched equilibrium, at the configured and doubled budgets
    '''

    result = ScenarioResult('equilibrium-check')
    quadrature = config.quadrature_spec()
    refined = quadrature.refined()
    threads = config.threads
    rows = []

    variants = variant_models(config)
    operators = _operators(config)
    bar = _progress(len(variants) * len(operators), 'Evaluating equilibria', quiet)
    for name, model in variants:
        spec = config.kernel_spec(model)
        f = matched_equilibrium(model)
        nodes = _output_nodes(model, quadrature.halfwidth)
        for operator in operators:
            sup = float(np.max(np.abs(_operator_values(f, nodes, model, spec, quadrature, operator, threads))))
            sup_refined = float(np.max(np.abs(_operator_values(f, nodes, model, spec, refined, operator, threads))))
            ratio = sup / sup_refined if sup_refined > 0 else float('inf')
            rows.append([name, operator, f.name, sup, sup_refined, ratio])

            label = f'{name}.{operator}'
            result.statistics.check_below(f'{label}.sup_norm', sup, EQUILIBRIUM_TOL)
            result.statistics.check(f'{label}.refinement', ratio >= 3.0 or sup_refined <= ORACLE_TOL,
                                    ratio, 3.0)
            bar.update(1)
    bar.close()

    result.add_table('equilibrium', ['variant', 'operator', 'equilibrium', 'sup_norm', 'sup_norm_refined',
                                     'refinement_ratio'], rows)
    return result

def _boltzmann_conservation(result, label, f, model, spec, quadrature, tolerance, threads):
    scale = weak_form_scale(f, model, spec, quadrature, threads=threads)
    rows = []
    for phi in collision_invariants(model):
        value = weak_form(f, phi, model, spec, quadrature, threads=threads)
        rows.append((phi.name, value, abs(value) / scale))
        result.statistics.check_below(f'{label}.{phi.name}', abs(value) / scale, tolerance)

    dissipation = entropy_dissipation(f, model, spec, quadrature, threads)
    dh = entropy_variation(f, model)
    pairing = weak_form(f, dh, model, spec, quadrature, threads=threads)
    potential = dissipation_potential(f, dh, model, spec, quadrature, threads=threads)
    result.statistics.check_above(f'{label}.dissipation', dissipation, -ORACLE_TOL * scale)
    result.statistics.check_below(f'{label}.entropy_pairing', pairing, ORACLE_TOL * max(scale, abs(dissipation)))

    phi = _test_field(model)
    weak = weak_form(f, phi, model, spec, quadrature, threads=threads)
    strong = strong_pairing(f, phi, model, spec, quadrature, threads=threads)
    gap = abs(strong - weak) / max(abs(weak), scale)
    result.statistics.check_below(f'{label}.strong_vs_weak', gap, CROSS_CHECK_TOL)
    rows.append(('dissipation', dissipation, None))
    rows.append(('entropy_pairing', pairing, None))
    rows.append(('dissipation_potential', potential, None))
    rows.append(('strong_vs_weak', strong - weak, gap))
    return rows

def _landau_conservation(result, label, f, model, spec, quadrature, tolerance, threads):
    phi = _test_field(model)
    dissipation = landau_dissipation(f, model, spec, quadrature, threads=threads)
    weak = landau_weak_form(f, phi, model, spec, quadrature, threads=threads)
    scale = max(abs(dissipation), abs(weak), np.finfo(float).tiny)
    rows = []
    for invariant in collision_invariants(model):
        value = landau_weak_form(f, invariant, model, spec, quadrature, threads=threads)
        rows.append((invariant.name, value, abs(value) / scale))
        result.statistics.check_below(f'{label}.{invariant.name}', abs(value) / scale, tolerance)

    result.statistics.check_above(f'{label}.dissipation', dissipation, -ORACLE_TOL * scale)

    # Both cross-checks pair the strong form on the box nodes
    nodes, _ = box_rule(quadrature, model.d)
    values = evaluate_QL_grid(f, nodes, model, spec, quadrature, threads)
    strong = landau_strong_pairing(f, phi, model, spec, quadrature, values=values)
    pairing = landau_strong_pairing(f, entropy_variation(f, model), model, spec, quadrature, values=values)
    gap = abs(strong - weak) / scale
    entropy_gap = abs(pairing + dissipation) / scale
    result.statistics.check_below(f'{label}.strong_vs_weak', gap, CROSS_CHECK_TOL)
    result.statistics.check_below(f'{label}.entropy_pairing', entropy_gap, CROSS_CHECK_TOL)
    rows.append(('dissipation', dissipation, None))
    rows.append(('entropy_pairing', pairing, entropy_gap))
    rows.append(('strong_vs_weak', strong - weak, gap))
    return rows

def conservation(config:ScenarioConfig, quiet:bool = False):
    '''
        Weak-form conservation, entropy dissipation and strong-vs-weak cross-checks on the fixtures
    '''

    result = ScenarioResult('conservation')
    quadrature = config.quadrature_spec()
    tolerance = config['run']['tolerance']
    threads = config.threads
    rows = []

    variants = variant_models(config)
    fixtures = config['run']['fixtures']
    operators = _operators(config)
    bar = _progress(len(variants) * len(fixtures) * len(operators), 'Checking conservation', quiet)
    for name, model in variants:
        spec = config.kernel_spec(model)
        for fixture_name in fixtures:
            f = fixture(fixture_name, model)
            for operator in operators:
                label = f'{name}.{fixture_name}.{operator}'
                check = _landau_conservation if operator == 'landau' else _boltzmann_conservation
                for quantity, value, relative in check(result, label, f, model, spec, quadrature, tolerance, threads):
                    rows.append([name, fixture_name, operator, quantity, value, relative])
                bar.update(1)
    bar.close()

    result.add_table('conservation', ['variant', 'fixture', 'operator', 'quantity', 'value', 'relative'], rows)
    return result

##################################################
#                Limit Scenarios                 #
##################################################

def grazing(config:ScenarioConfig, quiet:bool = False):
    '''
        Weak-form grazing sweep and the pointwise small-angle lemma for each variant
    '''

    result = ScenarioResult('grazing')
    quadrature = config.quadrature_spec()
    eps_list = _sweep_values(config, (0.8, 0.4, 0.2, 0.1))
    variants = variant_models(config)

    bar = _progress(len(variants) * len(eps_list), 'Sweeping grazing parameter', quiet)
    for name, model in variants:
        spec = config.kernel_spec(model)
        f = fixture(config['run']['initial'], model)
        phi = _test_field(model)
        report = grazing_sweep(f, phi, model, spec, quadrature, eps_list, _min_order(config, 0.8), config.threads,
                               config['sweep']['noise'], bar)
        result.add_sweep(f'grazing_{name}', report)

        p = np.zeros(model.d)
        ps = np.zeros(model.d)
        p[0], ps[0] = 1.0, -0.5
        ps[1] = 0.4
        for index, kappa in enumerate(((1.0, 0.0), (1.0, 0.5))):
            lemma = grazing_lemma_pointwise(kappa, f, phi, p, ps, config['sweep']['theta'], model, quadrature)
            result.add_sweep(f'lemma_{name}_{index}', lemma)
    bar.close()
    return result

def newtonian(config:ScenarioConfig, quiet:bool = False):
    '''
        Kinematic and weak-form gaps between relativistic and classical dynamics over c
    '''

    result = ScenarioResult('newtonian')
    model = config.model_spec()
    spec = config.kernel_spec(model.replace(dynamics='classical'))
    quadrature = config.quadrature_spec()
    f = fixture(config['run']['initial'], model.replace(dynamics='classical'))
    c_list = _sweep_values(config, (5.0, 10.0, 20.0, 40.0))

    bar = _progress(len(c_list), 'Sweeping speed of light', quiet)
    report = newtonian_sweep(f, _test_field(model), model, spec, quadrature, c_list, config['sweep']['pairs'],
                             _min_order(config, 1.8), config.threads, config.seed, bar)
    bar.close()
    result.add_sweep('newtonian', report)
    return result

def _oracle_tuples(config:ScenarioConfig):
    return random_tuples(stream(config.seed, 1), min(config['run']['samples'], 1000), 2, 'maxwell')

def semiclassical(config:ScenarioConfig, quiet:bool = False):
    '''
        Operator gap between the hbar-scaled and classical quantum statistics, with the expansion oracle
    '''

    result = ScenarioResult('semiclassical')
    model = config.model_spec()
    if model.statistics != 'quantum' or model.alpha == 0:
        logger.info('Semiclassical sweep needs alpha = +-1; using Bose statistics')
        model = model.replace(statistics='quantum', alpha=1)
    spec = config.kernel_spec(model)
    f = fixture(config['run']['initial'], model)
    hbar_list = _sweep_values(config, (0.8, 0.4, 0.2, 0.1))

    bar = _progress(len(hbar_list), 'Sweeping hbar', quiet)
    report = semiclassical_sweep(f, _test_field(model), model, spec, config.quadrature_spec(), hbar_list,
                                 _min_order(config, 0.9), config.threads, bar)
    bar.close()
    result.add_sweep('semiclassical', report)

    tuples = _oracle_tuples(config)
    defect = max(float(np.max(semiclassical_expansion_defect(tuples, model.alpha, hbar))) for hbar in hbar_list)
    result.statistics.check_below('semiclassical.expansion', defect, ORACLE_TOL)
    result.reports['expansion_defect'] = defect
    return result

def kinetic_limit(config:ScenarioConfig, quiet:bool = False):
    '''
        Scaled Bose operator against the wave operator, with the expansion oracle
    '''

    result = ScenarioResult('kinetic-limit')
    model = config.model_spec(statistics='wave', alpha=0)
    spec = config.kernel_spec(model)
    f = fixture(config['run']['initial'], model)
    eps_list = _sweep_values(config, (0.8, 0.4, 0.2, 0.1))

    bar = _progress(len(eps_list), 'Sweeping kinetic parameter', quiet)
    report = kinetic_limit_check(f, _test_field(model), model, spec, config.quadrature_spec(), eps_list,
                                 _min_order(config, 0.9), config.threads, bar)
    bar.close()
    result.add_sweep('kinetic', report)

    tuples = _oracle_tuples(config)
    defect = max(float(np.max(kinetic_expansion_defect(tuples, eps))) for eps in eps_list)
    result.statistics.check_below('kinetic.expansion', defect, ORACLE_TOL)
    result.reports['expansion_defect'] = defect
    return result

def linear_limit(config:ScenarioConfig, quiet:bool = False):
    '''
        Perturbations of the constant state against the linear operator, with the expansion oracle
    '''

    result = ScenarioResult('linear-limit')
    model = config.model_spec(statistics='linear', alpha=0)
    spec = config.kernel_spec(model)
    f_pert = fixture(config['run']['initial'], model)
    eps_list = _sweep_values(config, (0.8, 0.4, 0.2, 0.1))

    bar = _progress(len(eps_list), 'Sweeping perturbation size', quiet)
    report = linear_limit_check(f_pert, _test_field(model), model, spec, config.quadrature_spec(), eps_list,
                                _min_order(config, 0.9), config.threads, bar)
    bar.close()
    result.add_sweep('linear', report)

    tuples = _oracle_tuples(config)
    defect = max(float(np.max(linear_expansion_defect(tuples, eps))) for eps in eps_list)
    result.statistics.check_below('linear.expansion', defect, ORACLE_TOL)
    result.reports['expansion_defect'] = defect
    return result

##################################################
#                Time Evolution                  #
##################################################

def _solver(config:ScenarioConfig, model:ModelSpec, operator:str, collisions:bool = True):
    run = config['run']
    quadrature = config.quadrature_spec().replace(halfwidth=run['halfwidth'])
    return Solver(model, config.kernel_spec(model), quadrature, operator, run['nodes'], config.threads,
                  run['conservative'], collisions, run['slab_nodes'], run['slab_length'])

def _run(solver:Solver, initial, config:ScenarioConfig, quiet:bool, description:str, dt:float = None):
    run = config['run']
    dt = run['dt'] if dt is None else dt
    steps = max(1, int(np.ceil(run['t_end'] / dt - 1e-9)))
    bar = _progress(steps, description, quiet)
    state, series = solver.run(initial, run['t_end'], dt, progress=bar)
    bar.close()
    return state, series

def relax(config:ScenarioConfig, quiet:bool = False):
    '''
        Homogeneous relaxation with monitors, the dissipation decay and the RK4 step-doubling ratio
    '''

    result = ScenarioResult('relax')
    model = config.model_spec()
    run = config['run']
    states = {}

    for operator in _operators(config):
        solver = _solver(config, model, operator)
        initial = solver.initial_state(fixture(run['initial'], model))
        state, series = _run(solver, initial, config, quiet, f'Relaxing ({operator})')
        states[operator] = (solver, state)
        result.add_table(f'monitors_{operator}', series.columns, series.rows())

        audit = generic_energy_entropy_audit(series)
        D = series.column('dissipation')
        result.statistics.check_below(f'{operator}.energy_drift', audit['energy_drift'], audit['energy_tol'])
        result.statistics.check_above(f'{operator}.entropy_production', audit['min_scaled_production'],
                                      -audit['entropy_rtol'])
        result.statistics.check_below(f'{operator}.dissipation_decay', D[-1] / D[0] if D[0] > 0 else 0.0, 1e-2)
        result.reports[operator] = audit

        ratio = solver.richardson_ratio(initial, run['dt'], 2)
        result.statistics.check(f'{operator}.richardson', 8.0 <= ratio <= 32.0, ratio, [8.0, 32.0])
        result.reports[f'{operator}_richardson'] = ratio

    if len(states) == 2:
        solver, boltzmann_state = states['boltzmann']
        gap = solver.l1_distance(boltzmann_state, states['landau'][1])
        epsilon = config['kernel']['epsilon']
        result.reports['landau_boltzmann_l1'] = gap
        result.reports['epsilon'] = epsilon
        if epsilon > 0:
            result.statistics.check_below('landau_boltzmann_l1', gap, run['l1_tol'])
        else:
            logger.info('Boltzmann-Landau L1 gap %.6g reported only; set kernel.epsilon to check it', gap)
    return result

def _slab_dt(solver:Solver, dt:float):
    speed = float(np.max(np.abs(solver.velocity)))
    limit = 0.9 * solver.dq / speed
    if dt > limit:
        logger.info('Slab step reduced from %g to %g by the transport bound', dt, limit)
    return min(dt, limit)

def _poisson(result:ScenarioResult, solver:Solver, config:ScenarioConfig, model:ModelSpec):
    rows = []
    names = list(dict.fromkeys(config['run']['fixtures'] + [config['run']['initial'], 'equilibrium']))
    for name in names:
        state = solver.slab_state(fixture(name, model), config['run']['amplitude'])
        report = poisson_checks(state, solver)
        rows.append([name] + [report[key] for key in ('antisymmetry', 'constant', 'energy', 'entropy',
                                                      'velocity_stencil_error', 'chain_rule_error')])
        result.statistics.check(f'poisson.{name}', report['passed'], max(report['antisymmetry'], report['entropy']),
                                report['tolerance'])
        result.statistics.check_below(f'poisson.{name}.velocity_stencil', report['velocity_stencil_error'],
                                      report['stencil_tolerance'])
    result.add_table('poisson', ['fixture', 'antisymmetry', 'constant', 'energy', 'entropy',
                                 'velocity_stencil_error', 'chain_rule_error'], rows)

def slab(config:ScenarioConfig, quiet:bool = False):
    '''
        Periodic slab run with the Poisson operator checks and the transport energy/entropy audit
    '''

    result = ScenarioResult('slab')
    model = config.model_spec()
    run = config['run']
    solver = _solver(config, model, 'boltzmann' if run['operator'] == 'both' else run['operator'], run['collisions'])
    _poisson(result, solver, config, model)

    initial = solver.slab_state(fixture(run['initial'], model), run['amplitude'])
    dt = _slab_dt(solver, run['dt'])
    steps = max(1, int(np.ceil(run['t_end'] / dt - 1e-9)))
    bar = _progress(steps, 'Transporting slab', quiet)
    state, series = solver.run(initial, run['t_end'], dt, audit=run['collisions'], progress=bar)
    bar.close()
    result.add_table('monitors', series.columns, series.rows())

    audit = generic_energy_entropy_audit(series)
    result.statistics.check_below('slab.energy_drift', audit['energy_drift'], audit['energy_tol'])
    if not run['collisions']:
        result.statistics.check_below('slab.entropy_variation', audit['entropy_variation'], 1e-8)
    result.reports['audit'] = audit
    return result

def generic_audit(config:ScenarioConfig, quiet:bool = False):
    '''
        First and second law audit of a relaxation run, an equilibrium run and a collisionless slab
    '''

    result = ScenarioResult('generic-audit')
    model = config.model_spec()
    run = config['run']
    operator = 'boltzmann' if run['operator'] == 'both' else run['operator']

    solver = _solver(config, model, operator)
    rows = []
    for name in (run['initial'], 'equilibrium'):
        _, series = _run(solver, solver.initial_state(fixture(name, model)), config, quiet, f'Evolving {name}')
        audit = generic_energy_entropy_audit(series)
        rows.append([name, audit['energy_drift'], audit['min_entropy_production'], audit['min_scaled_production'],
                     audit['entropy_variation']])
        result.statistics.check(f'{name}.audit', audit['passed'], audit['energy_drift'], audit['energy_tol'])

    transport = _solver(config, model, operator, collisions=False)
    _poisson(result, transport, config, model)
    initial = transport.slab_state(fixture(run['initial'], model), run['amplitude'])
    _, series = transport.run(initial, run['t_end'], _slab_dt(transport, run['dt']), audit=False)
    audit = generic_energy_entropy_audit(series)
    rows.append(['slab', audit['energy_drift'], audit['min_entropy_production'], audit['min_scaled_production'],
                 audit['entropy_variation']])
    result.statistics.check_below('slab.energy_drift', audit['energy_drift'], audit['energy_tol'])
    result.statistics.check_below('slab.entropy_variation', audit['entropy_variation'], 1e-8)

    result.add_table('audit', ['run', 'energy_drift', 'min_entropy_production', 'min_scaled_production',
                               'entropy_variation'], rows)
    return result

##################################################
#                 Scenario Runner                #
##################################################

SCENARIO_FUNCTIONS = {
    'lorentz-selftest': lorentz_selftest,
    'compatibility': compatibility,
    'equilibrium-check': equilibrium_check,
    'conservation': conservation,
    'grazing': grazing,
    'newtonian': newtonian,
    'semiclassical': semiclassical,
    'kinetic-limit': kinetic_limit,
    'linear-limit': linear_limit,
    'relax': relax,
    'slab': slab,
    'generic-audit': generic_audit,
}

def _diagnostics(error:KineticaError):
    for name in ('diagnostics', 'events'):
        value = getattr(error, name, None)
        if value:
            return value
    if hasattr(error, 'suggested_dt'):
        return {'suggested_dt': error.suggested_dt}
    return {}

def run_scenario(config:ScenarioConfig, quiet:bool = False, pickle_flag:bool = False):
    '''
        Runs one scenario and writes its CSV tables and JSON summary
            Arguments: ScenarioConfig, quiet flag, whether to pickle the raw result
            Returns: tuple (exit status, ScenarioResult or None); 0 all checks pass,
                     1 a check failed, 2 a library error aborted the run
    '''

    directory = config['output']['directory']
    os.makedirs(directory, exist_ok=True)
    prefix = os.path.join(directory, config.alias)
    summary = summary_header(config)

    t_start = time.perf_counter()
    try:
        result = SCENARIO_FUNCTIONS[config.scenario](config, quiet)
    except KineticaError as error:
        summary.update({'status': 'error', 'elapsed_seconds': time.perf_counter() - t_start,
                        'error': {'type': type(error).__name__, 'message': str(error),
                                  'diagnostics': _diagnostics(error)}})
        write_summary(f'{prefix}_summary.json', summary)
        logger.error('%s: %s', type(error).__name__, error)
        return 2, None

    tables = []
    for name, (columns, rows) in result.tables.items():
        path = f'{prefix}_{name}.csv'
        write_csv(path, columns, rows)
        tables.append(os.path.basename(path))

    passed = result.statistics.passed
    summary.update({'status': 'pass' if passed else 'fail', 'elapsed_seconds': time.perf_counter() - t_start,
                    'tables': tables, 'statistics': result.statistics.as_dict(), 'reports': result.reports})
    write_summary(f'{prefix}_summary.json', summary)

    if pickle_flag or config['output']['pickle']:
        pickle_result(f'{prefix}.pickle', result)

    return (0 if passed else 1), result
