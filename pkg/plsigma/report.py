"""Writing check results and tables, and telling the user about them.

All user-visible text goes through emit(); all files go through a
Reporter, which knows the output directory and remembers what it wrote.

Reports are deterministic: keys are sorted, floats are written so they
round-trip exactly, and nothing time- or host-dependent goes in.  Two runs
with the same config and seed give byte-identical files.
"""
import hashlib
import json
import os

import numpy as np

from . import __version__


def emit(txt):
    """This is a function so tests can override it."""
    print(txt)


def _jsonable(value):
    """Recursively turn namedtuples, numpy values and tuples into JSON."""
    if hasattr(value, '_asdict'):
        return {k: _jsonable(v) for k, v in value._asdict().items()}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not np.isfinite(value):
            # JSON has no inf or nan.
            return repr(value)
        return value
    return value


def canonical_json(value):
    """Sorted keys, fixed separators; floats via repr, so exact."""
    return json.dumps(_jsonable(value), sort_keys=True, indent=2,
                      separators=(',', ': '), allow_nan=False) + '\n'


def config_hash(config_dict):
    text = json.dumps(_jsonable(config_dict), sort_keys=True,
                      separators=(',', ':'), allow_nan=False)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class Report(object):
    """Everything one command found out, ready to be written as JSON."""
    def __init__(self, command, config_dict, seed):
        self.command = command
        self.config_hash = config_hash(config_dict)
        self.model = config_dict.get('name')
        self.seed = seed
        self.checks = []
        self.convergence = {}
        self.notes = []

    def add_checks(self, reports):
        self.checks.extend(reports)

    def add_failure(self, check_name, error):
        """Record an error that stopped a check from running at all."""
        self.checks.append({
            'check_name': check_name, 'max_defect': float('inf'),
            'tolerance': 0.0, 'passed': False,
            'witness': dict(error.details, error=error.message)})

    @property
    def passed(self):
        return all(_get(c, 'passed') for c in self.checks)

    def to_dict(self):
        return {
            'tool_version': __version__,
            'command': self.command,
            'model': self.model,
            'config_hash': self.config_hash,
            'seed': self.seed,
            'checks': self.checks,
            'convergence': self.convergence,
            'notes': self.notes,
            'passed': self.passed,
        }


def _get(check, field):
    if isinstance(check, dict):
        return check[field]
    return getattr(check, field)


def format_check(check):
    """One line per check, ERROR: with the witness for failures."""
    name = _get(check, 'check_name')
    defect = _get(check, 'max_defect')
    tolerance = _get(check, 'tolerance')
    if _get(check, 'passed'):
        return "ok   %-28s %.3e <= %.3e" % (name, defect, tolerance)
    return ("ERROR:%s: defect %.3e exceeds %.3e\n    on %s"
            % (name, defect, tolerance,
               json.dumps(_jsonable(_get(check, 'witness')),
                          sort_keys=True)))


class Reporter(object):
    """Writes output files under one directory and reports on checks."""
    def __init__(self, output_dir='.', verbose=False):
        self.output_dir = output_dir
        self.verbose = verbose
        self.written = []

    def _path(self, filename):
        path = os.path.join(self.output_dir, filename)
        try:
            os.makedirs(os.path.dirname(os.path.abspath(path)))
        except (IOError, OSError):  # hopefully "directory already exists"
            pass
        return path

    def write_file(self, filename, text):
        path = self._path(filename)
        with open(path, 'w') as f:
            f.write(text)
        self.written.append(path)
        return path

    def write_json(self, filename, value):
        return self.write_file(filename, canonical_json(value))

    def write_csv(self, filename, header, rows):
        """rows: a 2-d array of numbers, written with 17 digits."""
        path = self._path(filename)
        np.savetxt(path, np.atleast_2d(np.asarray(rows, dtype=float)),
                   fmt='%.17g', delimiter=',', header=','.join(header),
                   comments='')
        self.written.append(path)
        return path

    def handle_report(self, report):
        for check in report.checks:
            if self.verbose or not _get(check, 'passed'):
                emit(format_check(check))
        for note in report.notes:
            emit("WARNING:%s" % note)
        emit("%s %s: %s" % (report.command, report.model,
                            'PASSED' if report.passed else 'FAILED'))

    def handle_error(self, error, where):
        emit("ERROR:%s\n    on %s" % (error, where))
