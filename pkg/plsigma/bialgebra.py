"""Lie bialgebras, their Manin triples, and coboundary analysis.

A cocommutator is stored exactly like a structure-constant array:

    delta(T_k) = sum_ij f[i, j, k] T_i (x) T_j

which is the same thing as the dual bracket [T~^i, T~^j] = f^ij_k T~^k.
The double d = g + g~ uses the basis (T_0..T_{n-1}, T~^0..T~^{n-1}) with

    <T_i, T~^j>_d = delta_i^j,     <T_i, T_j>_d = <T~^i, T~^j>_d = 0,

and the mixed brackets forced by isotropy and ad-invariance,

    [T_i, T~^j] = f^jk_i T_k - c_ik^j T~^k.

r-matrices follow delta = Delta(r), Delta(r)(X) = ad_X^(2)(r), i.e.

    f^ij_k = c_kl^i r^lj + c_kl^j r^il.
"""
import collections

import numpy as np
import scipy.linalg

from . import lie
from . import util


class DoubleJacobiFailure(util.Error):
    """The assembled double is not a Lie algebra: (c, f) is inconsistent."""
    def __init__(self, defect, triple):
        super(DoubleJacobiFailure, self).__init__(
            "Double fails the Jacobi identity (defect %s at %s); the "
            "cocommutator is not a 1-cocycle or its dual is not a Lie "
            "bracket" % (util.format_float(defect), triple),
            defect=defect, triple=triple)
        self.defect = defect
        self.triple = triple


class NotCoboundary(util.Error):
    def __init__(self, residual):
        super(NotCoboundary, self).__init__(
            "No r-matrix reproduces the cocommutator (relative residual %s)"
            % util.format_float(residual), residual=residual)
        self.residual = residual


class Cocommutator(lie.StructureConstants):
    """f[i, j, k] with delta(T_k) = f^ij_k T_i (x) T_j."""
    def __repr__(self):
        return "Cocommutator(dim=%s)" % self.dim


def _coeffs(constants):
    if isinstance(constants, lie.LieAlgebra):
        return constants.coeffs
    if isinstance(constants, lie.StructureConstants):
        return constants.coeffs
    return np.asarray(constants, dtype=float)


def _check_same_dim(c, f):
    if c.shape != f.shape:
        raise lie.DimensionMismatch(c.shape, f.shape,
                                    what='cocommutator array')


def cocycle_tensor(c, f):
    """Delta(delta)(T_a, T_b) in components, indexed [a, b, i, j]."""
    c = _coeffs(c)
    f = _coeffs(f)
    _check_same_dim(c, f)
    # ad^(2)_{T_a} delta(T_b)
    ad2 = (np.einsum('ali,ljb->abij', c, f) +
           np.einsum('alj,ilb->abij', c, f))
    return (ad2 - ad2.transpose(1, 0, 2, 3) -
            np.einsum('abk,ijk->abij', c, f))


def cocycle_defect(c, f):
    """Max-norm of the 1-cocycle condition over basis pairs."""
    return lie.Defect(*util.max_defect(cocycle_tensor(c, f)))


def double_structure_constants(c, f):
    """The (2n)^3 structure constants of g + g~, without any checking."""
    c = _coeffs(c)
    f = _coeffs(f)
    _check_same_dim(c, f)
    n = c.shape[0]
    C = np.zeros((2 * n, 2 * n, 2 * n))
    C[:n, :n, :n] = c
    C[n:, n:, n:] = f
    # [T_i, T~^j] = f[j, k, i] T_k - c[i, k, j] T~^k
    mixed_g = f.transpose(2, 0, 1)
    mixed_gdual = -c.transpose(0, 2, 1)
    C[:n, n:, :n] = mixed_g
    C[:n, n:, n:] = mixed_gdual
    C[n:, :n, :n] = -mixed_g.transpose(1, 0, 2)
    C[n:, :n, n:] = -mixed_gdual.transpose(1, 0, 2)
    return C


class DoubleAlgebra(object):
    """The Lie algebra of the Drinfel'd double of a Lie bialgebra.

    Properties:
        n: dim(g).
        base: the LieAlgebra g.
        dual: the LieAlgebra g~ (structure constants f).
        cocommutator: f, as a Cocommutator.
        total: the 2n-dimensional LieAlgebra d.
        bform: the matrix of <.,.>_d, [[0, I], [I, 0]].
        proj_g, proj_gdual: the projectors P, P~ onto g and g~.
    """
    def __init__(self, base, cocommutator, total):
        n = base.dim
        self.n = n
        self.base = base
        self.cocommutator = cocommutator
        self.dual = lie.LieAlgebra(cocommutator.coeffs)
        self.total = total
        eye = np.eye(n)
        zero = np.zeros((n, n))
        self.bform = np.block([[zero, eye], [eye, zero]])
        self.proj_g = np.block([[eye, zero], [zero, zero]])
        self.proj_gdual = np.block([[zero, zero], [zero, eye]])
        for matrix in (self.bform, self.proj_g, self.proj_gdual):
            matrix.setflags(write=False)

    def __repr__(self):
        return "DoubleAlgebra(n=%s)" % self.n


def build_double(c, f, tolerances=util.DEFAULT_TOLERANCES):
    """Assemble the Manin triple (d, g, g~) for the bialgebra (c, f).

    Raises DoubleJacobiFailure, carrying the worst (i, j, k, s), when the
    assembled bracket is not a Lie bracket.  By the standard equivalence
    this happens exactly when g or g~ fails Jacobi or f is not a cocycle.
    """
    if not isinstance(c, lie.StructureConstants):
        c = lie.StructureConstants(_coeffs(c), tolerances.antisymmetry)
    if not isinstance(f, Cocommutator):
        f = Cocommutator(_coeffs(f), tolerances.antisymmetry)
    C = double_structure_constants(c.coeffs, f.coeffs)
    defect = lie.jacobiator(C)
    if defect.value > tolerances.tol * util.scale(C) ** 2:
        raise DoubleJacobiFailure(defect.value, defect.witness)
    return DoubleAlgebra(lie.LieAlgebra(c), f,
                         lie.LieAlgebra(lie.StructureConstants(C)))


def form_invariance_defect(double):
    """max |<[z,x],y>_d + <x,[z,y]>_d| over basis triples of d."""
    ad = double.total.ad
    B = double.bform
    defect = (np.einsum('zmx,my->zxy', ad, B) +
              np.einsum('xm,zmy->zxy', B, ad))
    return lie.Defect(*util.max_defect(defect))


def swap_map(n):
    """The form-preserving involution T_i <-> T~^i of g + g~."""
    zero = np.zeros((n, n))
    eye = np.eye(n)
    return np.block([[zero, eye], [eye, zero]])


def swap_roles(double, tolerances=util.DEFAULT_TOLERANCES):
    """The double of the dual bialgebra (g~, c), with g~ as the base.

    Its structure constants are those of `double` conjugated by
    swap_map(n); the Poisson-Lie structure it yields lives on G~.
    """
    return build_double(double.cocommutator.coeffs, double.base.coeffs,
                        tolerances)


def coboundary_cocommutator(c, r):
    """Delta(r): f^ij_k = c_kl^i r^lj + c_kl^j r^il."""
    c = _coeffs(c)
    r = np.asarray(r, dtype=float)
    return Cocommutator(np.einsum('kli,lj->ijk', c, r) +
                        np.einsum('klj,il->ijk', c, r))


def _coboundary_operator(c):
    """The (n^3, n^2) matrix of r -> Delta(r)."""
    n = c.shape[0]
    eye = np.eye(n)
    op = (np.einsum('kpi,qj->ijkpq', c, eye) +
          np.einsum('kqj,pi->ijkpq', c, eye))
    return op.reshape(n ** 3, n ** 2)


class CoboundaryData(object):
    """An r-matrix solving Delta(r) = delta, with the derived maps.

    Properties:
        r: the n x n least-squares solution.
        a_skew: its skew part, the only part used downstream.
        big_r: the map R = a o K (the matrix -a K), or None when the base
            algebra is not semisimple.
        residual: relative residual |Delta(r) - delta| / |delta|.
    """
    def __init__(self, r, big_r, residual):
        self.r = r
        self.a_skew = 0.5 * (r - r.T)
        self.big_r = big_r
        self.residual = residual

    def __repr__(self):
        return "CoboundaryData(residual=%s)" % util.format_float(
            self.residual)


NoSolution = collections.namedtuple('NoSolution', ['residual'])


def solve_r_matrix(c, f, tolerances=util.DEFAULT_TOLERANCES):
    """Least-squares solve of Delta(r) = delta.

    Returns CoboundaryData when the relative residual is at most
    tolerances.coboundary, else NoSolution(residual).  Note we do not
    check the classical Yang-Baxter equation for r.
    """
    c = _coeffs(c)
    f = _coeffs(f)
    _check_same_dim(c, f)
    n = c.shape[0]
    rhs = f.reshape(n ** 3)
    norm = np.linalg.norm(rhs)
    if norm == 0.0:
        r = np.zeros((n, n))
        residual = 0.0
    else:
        op = _coboundary_operator(c)
        solution, _, _, _ = scipy.linalg.lstsq(op, rhs,
                                               lapack_driver='gelsd')
        residual = float(np.linalg.norm(op.dot(solution) - rhs) / norm)
        r = solution.reshape(n, n)
    if residual > tolerances.coboundary:
        return NoSolution(residual)

    algebra = lie.LieAlgebra(c)
    data = CoboundaryData(r, None, residual)
    if lie.is_semisimple(algebra, tolerances.singular):
        data.big_r = big_r_map(algebra, data.a_skew)
    return data


def big_r_map(algebra, a_skew):
    """R^i_j = K_jl a^li, i.e. R = -a K for skew a."""
    return np.einsum('jl,li->ij', algebra.killing, a_skew)


def r_bracket(algebra, big_r, x, y):
    """[x, y]_R = [R x, y] + [x, R y].

    This is the bracket for which K^{-1}[K x, K y]_{g*} = [x, y]_R holds
    when delta = Delta(a).
    """
    return (lie.bracket(algebra, big_r.dot(x), y) +
            lie.bracket(algebra, x, big_r.dot(y)))


def sklyanin_components(point, a_skew):
    """Pi(g) = Ad_g(a) - a, with Ad_g acting on both tensor slots."""
    A = point.g_block
    a_skew = np.asarray(a_skew, dtype=float)
    return A.dot(a_skew).dot(A.T) - a_skew
