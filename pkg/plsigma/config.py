"""Reading model configs and converting them to a canonical form.

A model config is a JSON object:
    {
      "name": "example_beta",
      "dimension": 2,
      "bracket": [[0, 1, 1, 1.0]],            # [T_0, T_1] = 1.0 T_1
      "cocommutator": [[0, 1, 1, 1.0]],       # f^{01}_1 = 1.0
      "r_matrix": [[1, 2, 1.0], ...],          # optional, r^{12} = 1.0
      "tolerances": {"tol": 1e-10, ...},       # optional
      "sampling": {"seed": 0, "points": 100, "box": 1.0},   # optional
      "lattice": {"sizes": [17, 33, 65], "x0": [0.0, 0.5],
                  "gauge_amplitude": 0.5},     # optional
      "representation": [[[1.0, 0.0], [0.0, 0.0]],
                         [[0.0, 1.0], [0.0, 0.0]]]   # optional
    }
"representation" is a faithful matrix representation of the dual algebra,
one square matrix per basis vector, with [rho_i, rho_j] = f^{ij}_k rho_k.
The simulate command takes group logarithms of the dual gauge field in it;
without one it uses the adjoint action on the double.

All indices are 0-based.  Bracket and cocommutator entries give one
ordered pair; the antisymmetric partner is filled in for you, and giving
it explicitly as well is an error, as is repeating an entry.

This is also where we sanity-check the input, so that a bad config fails
with a message naming the offending field instead of deep inside numpy.
"""
import collections
import json

import numpy as np

from . import bialgebra
from . import lie
from . import util


class ConfigError(util.Error, ValueError):
    def __init__(self, field, message):
        super(ConfigError, self).__init__(
            "%s: %s" % (field, message), field=field)
        self.field = field


Sampling = collections.namedtuple('Sampling', ['seed', 'points', 'box'])
LatticeSpec = collections.namedtuple('LatticeSpec',
                                     ['sizes', 'x0', 'gauge_amplitude'])
ModelConfig = collections.namedtuple('ModelConfig', [
    'name', 'dimension', 'bracket', 'cocommutator', 'r_matrix',
    'tolerances', 'sampling', 'lattice', 'representation'])

DEFAULT_SIZES = (17, 33, 65)
DEFAULT_GAUGE_AMPLITUDE = 0.5
DEFAULT_POINTS = 100


def load_config(path):
    """Read and normalize the config file at path."""
    try:
        with open(path) as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise ConfigError(path, "cannot read config (%s)" % e.strerror)
    try:
        raw = json.loads(text)
    except ValueError as e:
        raise ConfigError(path, "malformed JSON (%s)" % e)
    return normalize(raw)


def _require(raw, key, kind):
    if key not in raw:
        raise ConfigError(key, "missing required field")
    value = raw[key]
    if kind is int and isinstance(value, bool):
        raise ConfigError(key, "expected an integer, got %r" % (value,))
    if not isinstance(value, kind):
        raise ConfigError(key, "expected %s, got %r"
                          % (getattr(kind, '__name__', 'a list'), value))
    return value


def _number(field, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field, "expected a number, got %r" % (value,))
    if not np.isfinite(value):
        raise ConfigError(field, "expected a finite number, got %r"
                          % (value,))
    return float(value)


def _index(field, value, dim):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(field, "expected an integer index, got %r"
                          % (value,))
    if not 0 <= value < dim:
        raise ConfigError(field, "index %s out of range for dimension %s"
                          % (value, dim))
    return value


def _normalize_triples(field, entries, dim):
    """[[i, j, k, v], ...] -> sorted list of (i, j, k, v) with i < j."""
    if not isinstance(entries, list):
        raise ConfigError(field, "expected a list of [i, j, k, value]")
    seen = {}
    for pos, entry in enumerate(entries):
        where = '%s[%s]' % (field, pos)
        if not isinstance(entry, list) or len(entry) != 4:
            raise ConfigError(where, "expected [i, j, k, value], got %r"
                              % (entry,))
        i, j, k = (_index(where, v, dim) for v in entry[:3])
        value = _number(where, entry[3])
        if i == j:
            if value != 0:
                raise ConfigError(where, "entry (%s, %s, %s) violates "
                                  "antisymmetry" % (i, j, k))
            continue
        key = (min(i, j), max(i, j), k)
        if key in seen:
            raise ConfigError(where, "duplicate entry for (%s, %s, %s); "
                              "already given at %s" % (i, j, k, seen[key][0]))
        seen[key] = (where, value if i < j else -value)
    return sorted(key + (value,) for key, (_, value) in seen.items())


def _normalize_r_matrix(entries, dim):
    field = 'r_matrix'
    if not isinstance(entries, list):
        raise ConfigError(field, "expected a list of [i, j, value]")
    seen = set()
    result = []
    for pos, entry in enumerate(entries):
        where = '%s[%s]' % (field, pos)
        if not isinstance(entry, list) or len(entry) != 3:
            raise ConfigError(where, "expected [i, j, value], got %r"
                              % (entry,))
        i, j = (_index(where, v, dim) for v in entry[:2])
        if (i, j) in seen:
            raise ConfigError(where, "duplicate entry for (%s, %s)" % (i, j))
        seen.add((i, j))
        result.append((i, j, _number(where, entry[2])))
    return sorted(result)


def _normalize_tolerances(raw):
    if not isinstance(raw, dict):
        raise ConfigError('tolerances', "expected an object")
    overrides = {}
    for key, value in sorted(raw.items()):
        if key not in util.Tolerances._fields:
            raise ConfigError('tolerances.%s' % key, "unknown tolerance; "
                              "expected one of %s"
                              % ', '.join(util.Tolerances._fields))
        value = _number('tolerances.%s' % key, value)
        if value <= 0:
            raise ConfigError('tolerances.%s' % key, "must be positive")
        overrides[key] = value
    return util.DEFAULT_TOLERANCES._replace(**overrides)


def _normalize_sampling(raw, tolerances):
    if not isinstance(raw, dict):
        raise ConfigError('sampling', "expected an object")
    unknown = set(raw) - set(Sampling._fields)
    if unknown:
        raise ConfigError('sampling.%s' % sorted(unknown)[0],
                          "unknown field")
    seed = raw.get('seed', 0)
    points = raw.get('points', DEFAULT_POINTS)
    for key, value in (('seed', seed), ('points', points)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError('sampling.%s' % key,
                              "expected an integer, got %r" % (value,))
    if seed < 0:
        raise ConfigError('sampling.seed', "must be non-negative")
    if points < 1:
        raise ConfigError('sampling.points', "must be at least 1")
    box = _number('sampling.box', raw.get('box', tolerances.box))
    return Sampling(seed, points, box)


def _normalize_lattice(raw, dim):
    if not isinstance(raw, dict):
        raise ConfigError('lattice', "expected an object")
    unknown = set(raw) - set(LatticeSpec._fields)
    if unknown:
        raise ConfigError('lattice.%s' % sorted(unknown)[0], "unknown field")
    sizes = raw.get('sizes', list(DEFAULT_SIZES))
    if not isinstance(sizes, list) or not sizes:
        raise ConfigError('lattice.sizes', "expected a non-empty list")
    for pos, size in enumerate(sizes):
        if isinstance(size, bool) or not isinstance(size, int) or size < 2:
            raise ConfigError('lattice.sizes[%s]' % pos,
                              "expected an integer >= 2, got %r" % (size,))
    x0 = raw.get('x0', [0.0] * dim)
    if not isinstance(x0, list) or len(x0) != dim:
        raise ConfigError('lattice.x0', "expected a list of %s numbers"
                          % dim)
    x0 = tuple(_number('lattice.x0[%s]' % pos, v) for pos, v in enumerate(x0))
    amplitude = _number('lattice.gauge_amplitude',
                        raw.get('gauge_amplitude', DEFAULT_GAUGE_AMPLITUDE))
    return LatticeSpec(tuple(sizes), x0, amplitude)


def _normalize_representation(raw, dim, cocommutator, tolerances):
    if not isinstance(raw, list) or len(raw) != dim:
        raise ConfigError('representation',
                          "expected a list of %s square matrices" % dim)
    matrices = []
    for pos, matrix in enumerate(raw):
        field = 'representation[%s]' % pos
        if (not isinstance(matrix, list) or not matrix or
                not all(isinstance(row, list) and len(row) == len(matrix)
                        for row in matrix)):
            raise ConfigError(field, "expected a square matrix")
        matrices.append([[_number(field, v) for v in row] for row in matrix])
    if len(set(len(m) for m in matrices)) != 1:
        raise ConfigError('representation',
                          "matrices have different sizes")
    rho = np.array(matrices)
    f = lie.structure_constants_from_table(
        dim, cocommutator, tolerances.antisymmetry).coeffs
    commutators = (np.einsum('iab,jbc->ijac', rho, rho) -
                   np.einsum('jab,ibc->ijac', rho, rho))
    defect, index = util.max_defect(
        commutators - np.einsum('ijk,kab->ijab', f, rho))
    if defect > tolerances.tol * util.scale(rho, f):
        raise ConfigError(
            'representation', "[rho_%s, rho_%s] differs from the bracket "
            "of the dual algebra by %s" % (index[0], index[1], defect))
    return tuple(tuple(tuple(row) for row in m) for m in matrices)


def normalize(raw):
    """Check a decoded config and return the equivalent ModelConfig."""
    if not isinstance(raw, dict):
        raise ConfigError('<config>', "expected a JSON object")
    known = set(ModelConfig._fields)
    for key in sorted(raw):
        if key not in known:
            raise ConfigError(key, "unknown field")
    name = _require(raw, 'name', str)
    dim = _require(raw, 'dimension', int)
    if dim < 1:
        raise ConfigError('dimension', "must be at least 1")
    bracket = _normalize_triples('bracket', _require(raw, 'bracket', list),
                                 dim)
    cocommutator = _normalize_triples(
        'cocommutator', _require(raw, 'cocommutator', list), dim)
    r_matrix = None
    if raw.get('r_matrix') is not None:
        r_matrix = _normalize_r_matrix(raw['r_matrix'], dim)
    tolerances = _normalize_tolerances(raw.get('tolerances', {}))
    sampling = _normalize_sampling(raw.get('sampling', {}), tolerances)
    tolerances = tolerances._replace(box=sampling.box)
    lattice = _normalize_lattice(raw.get('lattice', {}), dim)
    representation = None
    if raw.get('representation') is not None:
        representation = _normalize_representation(
            raw['representation'], dim, cocommutator, tolerances)
    return ModelConfig(name, dim, tuple(bracket), tuple(cocommutator),
                       None if r_matrix is None else tuple(r_matrix),
                       tolerances, sampling, lattice, representation)


def apply_overrides(model_config, tolerance=None, seed=None, points=None,
                    sizes=None):
    """The config with command-line overrides applied."""
    tolerances = model_config.tolerances
    if tolerance is not None:
        tolerances = tolerances._replace(tol=tolerance)
    sampling = model_config.sampling
    if seed is not None:
        sampling = sampling._replace(seed=seed)
    if points is not None:
        sampling = sampling._replace(points=points)
    lattice = model_config.lattice
    if sizes is not None:
        lattice = lattice._replace(sizes=tuple(sizes))
    return model_config._replace(tolerances=tolerances, sampling=sampling,
                                 lattice=lattice)


def to_dict(model_config):
    """The canonical JSON-ready form; normalize(to_dict(c)) == c."""
    result = {
        'name': model_config.name,
        'dimension': model_config.dimension,
        'bracket': [list(e) for e in model_config.bracket],
        'cocommutator': [list(e) for e in model_config.cocommutator],
        'tolerances': dict(model_config.tolerances._asdict()),
        'sampling': dict(model_config.sampling._asdict()),
        'lattice': {'sizes': list(model_config.lattice.sizes),
                    'x0': list(model_config.lattice.x0),
                    'gauge_amplitude': model_config.lattice.gauge_amplitude},
    }
    if model_config.r_matrix is not None:
        result['r_matrix'] = [list(e) for e in model_config.r_matrix]
    if model_config.representation is not None:
        result['representation'] = [[list(row) for row in m]
                                    for m in model_config.representation]
    return result


def structure_constants(model_config):
    return lie.structure_constants_from_table(
        model_config.dimension, model_config.bracket,
        model_config.tolerances.antisymmetry)


def cocommutator(model_config):
    constants = lie.structure_constants_from_table(
        model_config.dimension, model_config.cocommutator,
        model_config.tolerances.antisymmetry)
    return bialgebra.Cocommutator(constants.coeffs,
                                  model_config.tolerances.antisymmetry)


def r_matrix(model_config):
    """The r-matrix as an array, or None if the config gives none."""
    if model_config.r_matrix is None:
        return None
    r = np.zeros((model_config.dimension, model_config.dimension))
    for (i, j, value) in model_config.r_matrix:
        r[i, j] = value
    return r


def representation(model_config):
    """The dual-algebra representation as an array, or None."""
    if model_config.representation is None:
        return None
    return np.array(model_config.representation, dtype=float)
