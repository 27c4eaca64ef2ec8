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
    summary_table.py
    Kinetica project, 2026

    Prints one line per JSON summary found in an output directory: scenario,
    status, check counts, elapsed time and configuration hash.

    Arguments:
        - output directory of one or more kinetica.py runs

    Returns:
        - table printed to standard output
'''

import glob
import json
import os

def read_summaries(directory:str):
    '''
        Loads every *_summary.json file of a directory, sorted by file name
            Arguments: String of the directory path
            Returns: List of (file name, summary dict) tuples
    '''

    summaries = []
    for path in sorted(glob.glob(os.path.join(directory, '*_summary.json'))):
        with open(path) as s_f:
            summaries.append((os.path.basename(path), json.load(s_f)))
    return summaries

def format_table(summaries):
    '''
        Formats summaries as aligned text columns
    '''

    header = ['scenario', 'status', 'run', 'passed', 'failed', 'seconds', 'config_hash']
    rows = [header]
    for _, summary in summaries:
        counts = summary.get('statistics', {}).get('counts', {})
        rows.append([str(summary.get('scenario', '?')), str(summary.get('status', '?')),
                     str(counts.get('Checks Run', '')), str(counts.get('Checks Passed', '')),
                     str(counts.get('Checks Failed', '')), f'{summary.get("elapsed_seconds", 0.0):.2f}',
                     str(summary.get('config_hash', ''))[:12]])

    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return '\n'.join('  '.join(cell.ljust(width) for cell, width in zip(row, widths)) for row in rows)

def main(args):
    '''
        Main Function: Prints the summary table of a directory
    '''

    summaries = read_summaries(args.directory)
    if not summaries:
        print(f'No summaries found in {args.directory}')
        return
    print(format_table(summaries))

if __name__ == '__main__':
    import argparse

    # Create argparser and parse argument variables
    parser = argparse.ArgumentParser(description='Tabulates the JSON summaries of an output directory')
    parser.add_argument('directory', help='Output directory of kinetica.py runs')
    args = parser.parse_args()

    main(args)
