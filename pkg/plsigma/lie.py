"""Finite-dimensional real Lie algebras given by structure constants.

Everything here is 0-based and dense.  An algebra element is just a
length-n numpy vector of coordinates in the basis (T_0, ..., T_{n-1}); a
dual vector is a length-n vector in the dual basis (T^0, ..., T^{n-1}).

CONVENTIONS

    [T_i, T_j] = sum_k c[i, j, k] T_k

    ad matrices act on column vectors, so column j of ad(T_i) is the image
    of T_j:  ad[i][k, j] = c[i, j, k].

    Killing form K_ij = c_il^m c_jm^l = trace(ad_i ad_j).

    Coadjoint action <ad*_y xi, z> = -<xi, [y, z]>, i.e. ad*_y = -ad_y^T.

Defect checks return a util.Defect-style (value, witness) pair rather than
a bare boolean, so a failing check always says where it failed.
"""
import collections

import numpy as np
import scipy.linalg

from . import util


# value: the max-norm defect; witness: the index tuple (or point) where
# the max was attained.
Defect = collections.namedtuple('Defect', ['value', 'witness'])


class DimensionMismatch(util.Error):
    def __init__(self, expected, actual, what='vector'):
        super(DimensionMismatch, self).__init__(
            "Expected a %s of dimension %s, got %s" % (what, expected, actual),
            expected=expected, actual=actual)


class NotAntisymmetric(util.Error):
    def __init__(self, index, defect):
        super(NotAntisymmetric, self).__init__(
            "Structure constants are not antisymmetric at %s (defect %s)"
            % (index, util.format_float(defect)),
            index=index, defect=defect)


class NotSemisimple(util.Error):
    def __init__(self, determinant):
        super(NotSemisimple, self).__init__(
            "Killing form is singular (det K = %s); algebra not semisimple"
            % util.format_float(determinant),
            determinant=determinant)


class ExpOverflow(util.Error):
    def __init__(self, norm):
        super(ExpOverflow, self).__init__(
            "Matrix exponential overflowed (norm %s)"
            % util.format_float(norm), norm=norm)


class StructureConstants(object):
    """The coefficient array c[i, j, k] of a Lie bracket.

    Antisymmetry in (i, j) is checked, not imposed: near-antisymmetric
    input is almost always a typo in the data, and we want it to surface.
    The stored array is read-only.
    """
    def __init__(self, coeffs, antisymmetry_tol=None):
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.ndim != 3 or len(set(coeffs.shape)) != 1:
            raise DimensionMismatch('(n, n, n)', coeffs.shape,
                                    what='structure-constant array')
        if antisymmetry_tol is None:
            antisymmetry_tol = util.DEFAULT_TOLERANCES.antisymmetry
        if not np.all(np.isfinite(coeffs)):
            raise util.Error("Structure constants must be finite")
        value, index = util.max_defect(coeffs + coeffs.transpose(1, 0, 2))
        if value > antisymmetry_tol * util.scale(coeffs):
            raise NotAntisymmetric(index, value)
        coeffs.setflags(write=False)
        self.dim = coeffs.shape[0]
        self.coeffs = coeffs

    def __repr__(self):
        return "StructureConstants(dim=%s)" % self.dim

    def __eq__(self, other):
        return (isinstance(other, StructureConstants) and
                np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())


def structure_constants_from_table(dim, entries, antisymmetry_tol=None):
    """Build StructureConstants from sparse (i, j, k, value) entries.

    Each entry sets c[i, j, k] = value and c[j, i, k] = -value.  An entry
    with i == j must be zero.
    """
    coeffs = np.zeros((dim, dim, dim))
    for (i, j, k, value) in entries:
        if i == j and value != 0:
            raise NotAntisymmetric((i, j, k), abs(value))
        coeffs[i, j, k] = value
        coeffs[j, i, k] = -value
    return StructureConstants(coeffs, antisymmetry_tol)


class LieAlgebra(object):
    """A Lie algebra with its ad matrices and Killing form computed up-front.

    Instances are never mutated after __init__, so they can be shared
    freely between threads.
    """
    def __init__(self, constants):
        if not isinstance(constants, StructureConstants):
            constants = StructureConstants(constants)
        self.constants = constants
        self.dim = constants.dim
        c = constants.coeffs
        # ad[i][k, j] = c[i, j, k]
        self.ad = np.ascontiguousarray(c.transpose(0, 2, 1))
        self.killing = np.einsum('ilm,jml->ij', c, c)
        self.ad.setflags(write=False)
        self.killing.setflags(write=False)

    @property
    def coeffs(self):
        return self.constants.coeffs

    def ad_of(self, x):
        """The ad matrix of a general element x."""
        return np.einsum('i,ikj->kj', _check_dim(self, x), self.ad)

    def __repr__(self):
        return "LieAlgebra(dim=%s)" % self.dim


def _check_dim(algebra, vector):
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (algebra.dim,):
        raise DimensionMismatch(algebra.dim, vector.shape)
    return vector


def bracket(algebra, x, y):
    """[x, y] = c_ij^k x^i y^j T_k."""
    x = _check_dim(algebra, x)
    y = _check_dim(algebra, y)
    return np.einsum('ijk,i,j->k', algebra.coeffs, x, y)


def jacobiator_tensor(coeffs):
    """J[i, j, k, s] = c_jk^r c_ri^s + c_ki^r c_rj^s + c_ij^r c_rk^s."""
    c = np.asarray(coeffs, dtype=float)
    return (np.einsum('jkr,ris->ijks', c, c) +
            np.einsum('kir,rjs->ijks', c, c) +
            np.einsum('ijr,rks->ijks', c, c))


def jacobiator(constants):
    """Max-norm Jacobi defect of a structure-constant array."""
    if isinstance(constants, StructureConstants):
        constants = constants.coeffs
    return Defect(*util.max_defect(jacobiator_tensor(constants)))


def killing_form(algebra):
    return algebra.killing


def is_semisimple(algebra, singular=None):
    """|det K| > singular * max|K|^n; unchanged when c is rescaled."""
    if singular is None:
        singular = util.DEFAULT_TOLERANCES.singular
    K = algebra.killing
    size = float(np.max(np.abs(K))) if K.size else 0.0
    if size == 0.0:
        return False
    return abs(np.linalg.det(K)) > singular * size ** algebra.dim


def killing_inverse(algebra, singular=None):
    """K^{-1}, or NotSemisimple."""
    if not is_semisimple(algebra, singular):
        raise NotSemisimple(float(np.linalg.det(algebra.killing)))
    return scipy.linalg.inv(algebra.killing)


def killing_invariance_defect(algebra):
    """max over basis triples of |K([z,x],y) + K(x,[z,y])|."""
    ad = algebra.ad
    K = algebra.killing
    defect = (np.einsum('zmx,my->zxy', ad, K) +
              np.einsum('xm,zmy->zxy', K, ad))
    return Defect(*util.max_defect(defect))


def coadjoint(algebra, y, xi):
    """(ad*_y xi)_k = -y^i c_ik^m xi_m."""
    y = _check_dim(algebra, y)
    xi = _check_dim(algebra, xi)
    return -np.einsum('i,ikm,m->k', y, algebra.coeffs, xi)


def killing_inverse_coadjoint_defect(algebra, singular=None):
    """max |K^{-1}(ad*_X xi, eta) + K^{-1}(xi, ad*_X eta)| over a basis.

    Zero for every semisimple algebra; raises NotSemisimple otherwise,
    because there is no K^{-1} to test.
    """
    k_inv = killing_inverse(algebra, singular)
    # coad[i] = -ad_i^T is the matrix of ad*_{T_i}.
    coad = -algebra.ad.transpose(0, 2, 1)
    defect = (np.einsum('ima,mb->iab', coad, k_inv) +
              np.einsum('am,imb->iab', k_inv, coad))
    return Defect(*util.max_defect(defect))


def matrix_exp(matrix):
    """expm via scaling and squaring (scipy's Pade implementation)."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch('square', matrix.shape, what='matrix')
    if not np.all(np.isfinite(matrix)):
        raise ExpOverflow(float('inf'))
    with np.errstate(over='ignore', invalid='ignore'):
        result = scipy.linalg.expm(matrix)
    if not np.all(np.isfinite(result)):
        raise ExpOverflow(float(np.linalg.norm(matrix)))
    return result


def linear_bivector(algebra, xi):
    """The linear Poisson structure on the dual: P_ij(xi) = c_ij^k xi_k."""
    return np.einsum('ijk,k->ij', algebra.coeffs, _check_dim(algebra, xi))


# Some algebras we use over and over.

def abelian(dim):
    return LieAlgebra(np.zeros((dim, dim, dim)))


def so3():
    """[T_i, T_j] = eps_ijk T_k."""
    return LieAlgebra(structure_constants_from_table(3, [
        (0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)]))


def sl2():
    """Basis (H, E, F): [H, E] = 2E, [H, F] = -2F, [E, F] = H."""
    return LieAlgebra(structure_constants_from_table(3, [
        (0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]))
