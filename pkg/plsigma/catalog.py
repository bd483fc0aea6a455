"""Built-in models with known closed-form values, for regression.

    example_beta:  [T_0, T_1] = T_1,  delta(T_1) = beta T_0 ^ T_1.  The
        simplest non-linear, non-coboundary Poisson-Lie group;
        Pi^{01}(y) = beta e^{y_0} y_1 and e(y) = diag(1, e^{y_0}).
    abelian_dual:  the same group with delta = 0; Pi vanishes.
    linear_so3:    R^3 (abelian) with dual so(3); Pi is the linear
        structure Pi^{ij}(y) = eps_ijk y_k.
    sl2_standard:  sl(2, R) in the basis (H, E, F) with the coboundary
        cocommutator of a = E ^ F: delta(H) = 0, delta(E) = E ^ H,
        delta(F) = F ^ H.
"""
import collections

import numpy as np

from . import bialgebra
from . import config
from . import geometry
from . import lie
from . import util


DEFAULT_BETA = 1.0
BETA_SWEEP = (-2.0, 0.5, 1.0)

# kind: 'pi' (Pi^{ij}), 'frame' (e^i_j) or 'bivector' (coordinate P^{ij});
# provenance says where the expected value comes from.
Checkpoint = collections.namedtuple(
    'Checkpoint', ['name', 'kind', 'coords', 'index', 'value', 'provenance'])


class CatalogEntry(object):
    def __init__(self, name, dimension, bracket, cocommutator, doc,
                 checkpoints, r_matrix=None, lattice=None):
        self.name = name
        self.dimension = dimension
        self.bracket = tuple(bracket)
        self.cocommutator = tuple(cocommutator)
        self.r_matrix = None if r_matrix is None else tuple(r_matrix)
        self.doc = doc
        self.checkpoints = tuple(checkpoints)
        self.lattice = lattice or {}

    def to_config(self):
        """The entry as a raw config dict, as `catalog export` writes it."""
        raw = {
            'name': self.name,
            'dimension': self.dimension,
            'bracket': [list(e) for e in self.bracket],
            'cocommutator': [list(e) for e in self.cocommutator],
        }
        if self.r_matrix is not None:
            raw['r_matrix'] = [list(e) for e in self.r_matrix]
        if self.lattice:
            raw['lattice'] = dict(self.lattice)
        return raw

    def model_config(self):
        return config.normalize(self.to_config())

    def __repr__(self):
        return "CatalogEntry(%r)" % self.name


def _entries_from_array(coeffs):
    """Sparse (i, j, k, value) entries with i < j."""
    n = coeffs.shape[0]
    return [(i, j, k, float(coeffs[i, j, k]))
            for i in range(n) for j in range(i + 1, n) for k in range(n)
            if coeffs[i, j, k] != 0]


def example_beta(beta=DEFAULT_BETA):
    y = (0.3, 0.7)
    return CatalogEntry(
        'example_beta', 2,
        bracket=[(0, 1, 1, 1.0)],
        cocommutator=[(0, 1, 1, float(beta))],
        doc="[T_0, T_1] = T_1 with delta(T_1) = beta T_0 ^ T_1 "
            "(beta = %s); not coboundary." % beta,
        checkpoints=[
            Checkpoint('pi_01', 'pi', y, (0, 1),
                       beta * np.exp(y[0]) * y[1], 'closed form'),
            Checkpoint('pi_10', 'pi', y, (1, 0),
                       -beta * np.exp(y[0]) * y[1], 'closed form'),
            Checkpoint('frame_11', 'frame', y, (1, 1), np.exp(y[0]),
                       'closed form'),
            Checkpoint('frame_01', 'frame', y, (0, 1), 0.0, 'closed form'),
            Checkpoint('bivector_01', 'bivector', y, (0, 1), beta * y[1],
                       'derived: e^{-1} Pi e^{-T}'),
        ],
        lattice={'x0': [0.0, 0.5]})


def abelian_dual():
    y = (0.3, 0.7)
    return CatalogEntry(
        'abelian_dual', 2,
        bracket=[(0, 1, 1, 1.0)],
        cocommutator=[],
        doc="The example_beta group with the zero cocommutator.",
        checkpoints=[
            Checkpoint('pi_01', 'pi', y, (0, 1), 0.0,
                       'derived: b-block vanishes'),
            Checkpoint('frame_11', 'frame', y, (1, 1), np.exp(y[0]),
                       'closed form'),
        ])


def linear_so3():
    y = (0.1, 0.2, 0.3)
    so3 = lie.so3()
    return CatalogEntry(
        'linear_so3', 3,
        bracket=[],
        cocommutator=_entries_from_array(so3.coeffs),
        doc="R^3 with the so(3) dual bracket: the linear Poisson "
            "structure on so(3)*.",
        checkpoints=[
            Checkpoint('pi_01', 'pi', y, (0, 1), y[2], 'closed form'),
            Checkpoint('pi_12', 'pi', y, (1, 2), y[0], 'closed form'),
            Checkpoint('pi_20', 'pi', y, (2, 0), y[1], 'closed form'),
            Checkpoint('frame_00', 'frame', y, (0, 0), 1.0, 'closed form'),
        ],
        lattice={'x0': [0.3, -0.2, 0.5]})


def sl2_a_skew():
    """a = E ^ F in the basis (H, E, F)."""
    a = np.zeros((3, 3))
    a[1, 2] = 1.0
    a[2, 1] = -1.0
    return a


def sl2_standard():
    sl2 = lie.sl2()
    a = sl2_a_skew()
    delta = bialgebra.coboundary_cocommutator(sl2.coeffs, a)
    return CatalogEntry(
        'sl2_standard', 3,
        bracket=_entries_from_array(sl2.coeffs),
        cocommutator=_entries_from_array(delta.coeffs),
        r_matrix=[(1, 2, 1.0), (2, 1, -1.0)],
        doc="sl(2, R), basis (H, E, F), with delta = Delta(E ^ F).",
        checkpoints=[
            Checkpoint('pi_torus', 'pi', (0.4, 0.0, 0.0), (1, 2), 0.0,
                       'derived: Ad_{exp sH} fixes E ^ F'),
            Checkpoint('pi_01_along_E', 'pi', (0.0, 0.5, 0.0), (0, 1),
                       -0.5, 'derived: Ad_{exp sE}(E ^ F) - E ^ F'),
            Checkpoint('pi_10_along_E', 'pi', (0.0, 0.5, 0.0), (1, 0),
                       0.5, 'derived: Ad_{exp sE}(E ^ F) - E ^ F'),
        ],
        lattice={'x0': [0.1, 0.4, -0.3]})


_BUILDERS = collections.OrderedDict([
    ('example_beta', example_beta),
    ('abelian_dual', abelian_dual),
    ('linear_so3', linear_so3),
    ('sl2_standard', sl2_standard),
])


def names():
    return list(_BUILDERS)


def entries(beta=DEFAULT_BETA):
    return [get(name, beta) for name in _BUILDERS]


def get(name, beta=DEFAULT_BETA):
    if name not in _BUILDERS:
        raise config.ConfigError(
            'catalog', "unknown entry '%s'; expected one of %s"
            % (name, ', '.join(_BUILDERS)))
    if name == 'example_beta':
        return example_beta(beta)
    return _BUILDERS[name]()


def evaluate_checkpoint(geom, checkpoint):
    p = geom.point(checkpoint.coords)
    if checkpoint.kind == 'pi':
        matrix = geom.pi_matrix(p)
    elif checkpoint.kind == 'frame':
        matrix = geom.frame(p).e
    elif checkpoint.kind == 'bivector':
        matrix = geom.coordinate_bivector(checkpoint.coords)
    else:
        raise util.Error("Unknown checkpoint kind %r" % checkpoint.kind)
    return float(matrix[checkpoint.index])


def build_geometry(model_config):
    """DoubleGeometry for a normalized ModelConfig."""
    double = bialgebra.build_double(config.structure_constants(model_config),
                                    config.cocommutator(model_config),
                                    model_config.tolerances)
    return geometry.DoubleGeometry(double, model_config.tolerances)
