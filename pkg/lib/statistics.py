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
    statistics.py
    Kinetica project, 2026

    Bookkeeping of the acceptance checks of a scenario run and the
    statistics footer printed at its end
'''

import math

class Statistics:
    '''
        Class to store the outcome of every acceptance check of a run
            Attributes:
                stats - Counters of the checks run, passed and failed

                order - Check names in the order they were recorded

                checks - Dict of check name -> {passed, value, tolerance}
    '''

    def __init__(self):
        self.stats = {'Checks Run': 0, 'Checks Passed': 0, 'Checks Failed': 0}
        self.order = []
        self.checks = {}

    def __str__(self):

        printout = ''
        for stat, value in self.stats.items():
            # Percent of the checks run for everything but the parent counter
            if stat != 'Checks Run' and self.stats['Checks Run']:
                percent = round((value / self.stats['Checks Run']) * 100, 2)
                printout += f'{stat}: {value} ({percent}%)\n'
            else:
                printout += f'{stat}: {value}\n'

        failed = [name for name in self.order if not self.checks[name]['passed']]
        if failed:
            printout += '\nFailed Checks:\n'
            for name in failed:
                check = self.checks[name]
                printout += f'\t{name}: value {check["value"]}, tolerance {check["tolerance"]}\n'
        return printout

    @property
    def passed(self):
        return self.stats['Checks Failed'] == 0

    def check(self, name:str, passed:bool, value = None, tolerance = None):
        '''
            Records one check; a repeated name replaces the earlier record
                Arguments: check name, outcome, measured value and tolerance for the report
                Returns: the outcome
        '''

        passed = bool(passed)
        if name in self.checks:
            previous = self.checks[name]['passed']
            self.stats['Checks Passed' if previous else 'Checks Failed'] -= 1
        else:
            self.order.append(name)
            self.stats['Checks Run'] += 1

        self.checks[name] = {'passed': passed, 'value': value, 'tolerance': tolerance}
        self.stats['Checks Passed' if passed else 'Checks Failed'] += 1
        return passed

    def check_below(self, name:str, value:float, tolerance:float):
        '''
            Records value <= tolerance; NaN fails
        '''
        value = float(value)
        return self.check(name, not math.isnan(value) and value <= tolerance, value, tolerance)

    def check_above(self, name:str, value:float, bound:float):
        value = float(value)
        return self.check(name, not math.isnan(value) and value >= bound, value, bound)

    def update(self, other):
        '''
            Adds the checks of another Statistics object under their own names
        '''

        for name in other.order:
            check = other.checks[name]
            self.check(name, check['passed'], check['value'], check['tolerance'])

    def as_dict(self):
        return {'counts': dict(self.stats), 'checks': {name: self.checks[name] for name in self.order}}

def print_stat_footer(statistics:Statistics, scenario:str, elapsed_time:float, outfile = None):
    '''
        Prints the statistics footer of a scenario run
            Arguments: Statistics of the run, scenario name, elapsed seconds and an optional
                       open text file to write to instead of standard output
            Returns: the footer text
    '''

    scenario_str = f'Scenario: {scenario}'
    beg_div = '=' * 70
    offset = ' ' * (35 - int(len(scenario_str) / 2))
    cls_div = '-' * 70

    min_elapsed = int(elapsed_time / 60)
    footer = (f'\n{beg_div}\n{offset}{scenario_str}\n'
              f'\t\t\t\tTotal time elapsed: {round(elapsed_time, 2)} sec\t({min_elapsed} min)\n'
              f'{cls_div}\n\n{statistics}')

    if outfile is not None:
        outfile.write(footer)
    else:
        print(footer)
    return footer
