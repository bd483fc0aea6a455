"""Group-level machinery on a Drinfel'd double, in the adjoint representation.

TERMS:
"chart": the product-of-exponentials coordinates alpha, with
    g = exp(alpha_0 T_0) exp(alpha_1 T_1) ... exp(alpha_{n-1} T_{n-1}).
    Only valid near the identity; we police validity with the condition
    number of the block a(g) (see ChartBoundary).
"Ad matrix": the 2n x 2n matrix of Ad_g on the double, acting on columns,
    Ad_g = prod_k expm(alpha_k ad_{T_k}), factors multiplied left to right.
    For g in G it is block upper triangular, [[A, B], [0, D]]: g is
    Ad_g-invariant, g~ is not.
"blocks": with Ad_{g^{-1}} = [[A', B'], [0, D']] we set a = A'^T,
    b = B'^T, d = D'^T.
"Pi": the right-invariant components Pi^{ij}(g) of the Poisson-Lie bivector,
    as they appear in the equations of motion T_X + Pi(X) A = 0.  In blocks,
    Pi = -b a^{-1}; `pi_block` returns b a^{-1} itself, which is also the
    matrix of P Ad_g P~ Ad_{g^{-1}} P~ restricted to g~ -> g.
"frame": the matrix e with e^k_j the T_k-component of Ad_{g_{<j}}(T_j),
    g_{<j} the product of the factors before j.  It takes coordinate
    differentials to right-invariant components; f = e^{-1}.

A DoubleGeometry fixes a double, a subgroup role and tolerances.  The role
'G~' is implemented by swapping the double, so the same code serves both
subgroups; coordinates of a 'G~' point are in the chart built on T~^k.
"""
import collections

import numpy as np
import scipy.linalg

from . import bialgebra
from . import lie
from . import util


G_ROLE = 'G'
DUAL_ROLE = 'G~'


class ChartBoundary(util.Error):
    """a(g) is numerically singular: we left the chart's neighbourhood."""
    def __init__(self, coords, condition):
        if coords is None:
            where = "a product point"
        else:
            where = "coordinates %s" % list(np.asarray(coords).tolist())
        super(ChartBoundary, self).__init__(
            "Left the chart at %s (cond a(g) = %s)"
            % (where, util.format_float(condition)),
            coords=coords, condition=condition)
        self.coords = coords
        self.condition = condition


class ZeroBlockViolation(util.Error):
    def __init__(self, norm):
        super(ZeroBlockViolation, self).__init__(
            "Ad_{g^-1} does not preserve g (zero block has norm %s); "
            "the point is not in the subgroup" % util.format_float(norm),
            norm=norm)
        self.norm = norm


class LogSolveFailure(util.Error):
    def __init__(self, residual):
        super(LogSolveFailure, self).__init__(
            "Group logarithm does not lie in the subalgebra (residual %s); "
            "the difference is outside the injectivity radius"
            % util.format_float(residual), residual=residual)
        self.residual = residual


class GroupPoint(object):
    """A point of a subgroup of the double, carried by its Ad matrix.

    Properties:
        coords: the chart coordinates, or None for points obtained as
            products or flows, whose coordinates we never compute.
        ad_matrix: the 2n x 2n Ad matrix (read-only).
        role: G_ROLE or DUAL_ROLE.
    """
    def __init__(self, coords, ad_matrix, role=G_ROLE):
        if coords is not None:
            coords = np.array(coords, dtype=float)
            coords.setflags(write=False)
        ad_matrix = np.array(ad_matrix, dtype=float)
        ad_matrix.setflags(write=False)
        self.coords = coords
        self.ad_matrix = ad_matrix
        self.role = role
        self.n = ad_matrix.shape[0] // 2

    @property
    def g_block(self):
        """A_g: the action of Ad_g on the subgroup's own algebra."""
        return self.ad_matrix[:self.n, :self.n]

    def __repr__(self):
        return "GroupPoint(%s, role=%r)" % (
            None if self.coords is None else self.coords.tolist(), self.role)


AdjointDecomposition = collections.namedtuple('AdjointDecomposition',
                                              ['a', 'b', 'd'])

FrameChange = collections.namedtuple('FrameChange', ['e', 'f'])


def _check_coords(double, coords):
    coords = np.asarray(coords, dtype=float)
    if coords.shape != (double.n,):
        raise lie.DimensionMismatch(double.n, coords.shape,
                                    what='coordinate vector')
    if not np.all(np.isfinite(coords)):
        raise lie.ExpOverflow(float('inf'))
    return coords


def adjoint(double, coords):
    """prod_k expm(alpha_k ad_{T_k}) on the double."""
    coords = _check_coords(double, coords)
    ad = double.total.ad
    result = np.eye(2 * double.n)
    for k, alpha in enumerate(coords):
        if alpha:
            result = result.dot(lie.matrix_exp(alpha * ad[k]))
    return result


def inverse_adjoint(double, coords):
    """Ad_{g^{-1}}, by running the chart path backwards."""
    coords = _check_coords(double, coords)
    ad = double.total.ad
    result = np.eye(2 * double.n)
    for k in reversed(range(double.n)):
        if coords[k]:
            result = result.dot(lie.matrix_exp(-coords[k] * ad[k]))
    return result


def decompose(ad_inv, tolerances=util.DEFAULT_TOLERANCES):
    """Split Ad_{g^{-1}} into the blocks a, b, d.

    Raises ZeroBlockViolation if Ad_{g^{-1}} does not map g into g.
    """
    ad_inv = np.asarray(ad_inv, dtype=float)
    n = ad_inv.shape[0] // 2
    norm = float(np.max(np.abs(ad_inv[n:, :n]))) if n else 0.0
    if norm > tolerances.tol * util.scale(ad_inv):
        raise ZeroBlockViolation(norm)
    return AdjointDecomposition(a=ad_inv[:n, :n].T.copy(),
                                b=ad_inv[:n, n:].T.copy(),
                                d=ad_inv[n:, n:].T.copy())


def _check_chart(a, coords, tolerances):
    condition = np.linalg.cond(a)
    if not np.isfinite(condition) or condition > tolerances.chart_condition:
        raise ChartBoundary(coords, float(condition))


def pi_block_from_decomposition(blocks, coords=None,
                                tolerances=util.DEFAULT_TOLERANCES):
    """b a^{-1}, or ChartBoundary when a is close to singular."""
    _check_chart(blocks.a, coords, tolerances)
    # b a^{-1} = (a^{-T} b^T)^T
    return scipy.linalg.solve(blocks.a.T, blocks.b.T).T


def pi_from_inverse_adjoint(ad_inv, coords=None,
                            tolerances=util.DEFAULT_TOLERANCES):
    blocks = decompose(ad_inv, tolerances)
    return -pi_block_from_decomposition(blocks, coords, tolerances)


def pi_projector_form(double, ad_g, ad_inv):
    """P Ad_g P~ Ad_{g^-1} P~, as a g~ -> g matrix.

    This is the same map as b a^{-1}, computed without any inversion.
    """
    n = double.n
    full = (double.proj_g.dot(ad_g).dot(double.proj_gdual)
            .dot(ad_inv).dot(double.proj_gdual))
    return full[:n, n:]


def pi_matrix(double, point, tolerances=util.DEFAULT_TOLERANCES):
    """Pi^{ij}(g) = -(b a^{-1})^{ij} for a point of G."""
    return pi_from_inverse_adjoint(scipy.linalg.inv(point.ad_matrix)
                                   if point.coords is None
                                   else inverse_adjoint(double, point.coords),
                                   point.coords, tolerances)


def frame_matrix(double, coords):
    """FrameChange(e, f) at the chart point `coords`."""
    coords = _check_coords(double, coords)
    n = double.n
    ad = double.total.ad
    e = np.zeros((n, n))
    prefix = np.eye(2 * n)
    for j in range(n):
        e[:, j] = prefix[:n, j]
        if coords[j]:
            prefix = prefix.dot(lie.matrix_exp(coords[j] * ad[j]))
    return FrameChange(e=e, f=scipy.linalg.inv(e))


def coordinate_bivector(double, point, tolerances=util.DEFAULT_TOLERANCES):
    """P^{ab} = f^a_m f^b_n Pi^{mn}, the components in dalpha-coordinates."""
    frame = frame_matrix(double, point.coords)
    pi = pi_matrix(double, point, tolerances)
    return frame.f.dot(pi).dot(frame.f.T)


def lie_log(generators, matrix, tolerances=util.DEFAULT_TOLERANCES):
    """x with expm(sum_k x_k generators[k]) = matrix.

    The principal logarithm is projected onto the span of the generators;
    a large projection residual means the logarithm left the subalgebra
    (or the principal branch is the wrong one) and raises LogSolveFailure.
    """
    generators = np.asarray(generators, dtype=float)
    with np.errstate(all='ignore'):
        log = scipy.linalg.logm(matrix)
    log = np.real_if_close(log, tol=1e6)
    if np.iscomplexobj(log) or not np.all(np.isfinite(log)):
        raise LogSolveFailure(float('inf'))
    basis = generators.reshape(len(generators), -1).T
    x, _, _, _ = scipy.linalg.lstsq(basis, log.reshape(-1))
    residual = float(np.max(np.abs(basis.dot(x) - log.reshape(-1))))
    if residual > np.sqrt(tolerances.tol) * util.scale(log):
        raise LogSolveFailure(residual)
    return x


class DoubleGeometry(object):
    """A double together with the subgroup whose points we handle.

    `generators`, if given, is an optional faithful matrix representation
    of the subgroup's Lie algebra (one matrix per basis vector), used only
    by group_log.  By default the Ad representation on the double is used;
    that fails to be faithful exactly when the subalgebra meets the center.
    """
    def __init__(self, double, tolerances=util.DEFAULT_TOLERANCES,
                 role=G_ROLE, generators=None):
        self.double = double
        self.n = double.n
        self.tolerances = tolerances
        self.role = role
        if generators is None:
            generators = double.total.ad[:double.n]
        self.generators = np.asarray(generators, dtype=float)
        if len(self.generators) != self.n:
            raise lie.DimensionMismatch(self.n, len(self.generators),
                                        what='list of generators')

    def dual(self, generators=None):
        """The geometry of G~, with g~ playing the role of g."""
        return DoubleGeometry(
            bialgebra.swap_roles(self.double, self.tolerances),
            self.tolerances,
            role=DUAL_ROLE if self.role == G_ROLE else G_ROLE,
            generators=generators)

    @property
    def algebra(self):
        return self.double.base

    def point(self, coords):
        coords = _check_coords(self.double, coords)
        return GroupPoint(coords, adjoint(self.double, coords), self.role)

    def identity(self):
        return self.point(np.zeros(self.n))

    def product(self, p, q):
        return GroupPoint(None, p.ad_matrix.dot(q.ad_matrix), self.role)

    def inverse(self, p):
        if p.coords is None:
            return GroupPoint(None, scipy.linalg.inv(p.ad_matrix), self.role)
        return GroupPoint(None, inverse_adjoint(self.double, p.coords),
                          self.role)

    def flow(self, p, k, t):
        """exp(t T_k) g: the flow of the right-invariant field R_{T_k}."""
        step = lie.matrix_exp(t * self.double.total.ad[k])
        return GroupPoint(None, step.dot(p.ad_matrix), self.role)

    def decompose(self, p):
        return decompose(self.inverse(p).ad_matrix, self.tolerances)

    def pi_block(self, p):
        return pi_block_from_decomposition(self.decompose(p), p.coords,
                                           self.tolerances)

    def pi_matrix(self, p):
        return -self.pi_block(p)

    def pi_projector_form(self, p):
        return pi_projector_form(self.double, p.ad_matrix,
                                 self.inverse(p).ad_matrix)

    def frame(self, p):
        return frame_matrix(self.double, p.coords)

    def coordinate_bivector(self, coords):
        """P^{ab} at chart coordinates; used as a plain function of y."""
        p = self.point(coords)
        frame = self.frame(p)
        return frame.f.dot(self.pi_matrix(p)).dot(frame.f.T)

    def representation_matrix(self, coords):
        """prod_k expm(alpha_k rho(T_k)) in the chosen representation."""
        coords = _check_coords(self.double, coords)
        result = np.eye(self.generators.shape[1])
        for k, alpha in enumerate(coords):
            if alpha:
                result = result.dot(lie.matrix_exp(alpha * self.generators[k]))
        return result

    def group_log(self, matrix):
        """Exponential coordinates of a representation matrix."""
        return lie_log(self.generators, matrix, self.tolerances)

    def __repr__(self):
        return "DoubleGeometry(n=%s, role=%r)" % (self.n, self.role)
