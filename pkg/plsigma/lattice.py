"""A Poisson(-Lie) sigma model discretised on a rectangular worldsheet.

LAYOUT:
Nodes (i, j) sit at (sigma^1, sigma^2) = (i hx, j hy) on [0, 1]^2.  For a
target of dimension n:
    X: node grid, shape (nx, ny, n)
    Ax: x-edges (i, j) -> (i+1, j), shape (nx-1, ny, n)
    Ay: y-edges (i, j) -> (i, j+1), shape (nx, ny-1, n)
    plaquette (i, j): the unit cell with corner (i, j), shape (nx-1, ny-1)
Edge values are integrated 1-forms (the edge vector is already applied),
plaquette values are integrated 2-forms.  d1 d0 = 0 exactly.

The wedge of two 1-forms on a plaquette is built from the means of the two
parallel edges, a_x b_y - a_y b_x.  First-equation coefficients are taken
at edge midpoints; second-equation coefficients at the plaquette centre.

RESIDUAL FORMS (all return (edge residual pair, plaquette residual)):
    coordinate:  dX + P(X) A,  dA_k + 1/2 d_k P^{ij}(X) A_i ^ A_j,
        with A in the coordinate coframe.
    invariant:   T + Pi(X) A,  dA_k + 1/2 R_k(Pi^{ij}) A_i ^ A_j
        + c_kj^i A_i ^ T^j, with T = e(X) dX and A right-invariant.
    intrinsic:   T - Pi_map(X) A,  dA + 1/2 [A ^ A]_{g*}; the second
        one never looks at X.
    coboundary:  T + (R - Ad_X R Ad_X^-1) B,  dB + 1/2 [B ^ B]_R,
        with B = K^{-1} A.
    linear:      dX + ad*_A X,  dA + 1/2 [A ^ A]_g on the dual space.
"""
import collections

import numpy as np

from . import bialgebra
from . import geometry
from . import lie
from . import report
from . import util


class Worldsheet(object):
    """The node grid on [0, 1]^2, nx by ny nodes."""
    def __init__(self, nx, ny=None):
        if ny is None:
            ny = nx
        if nx < 2 or ny < 2:
            raise util.Error("A worldsheet needs at least 2x2 nodes, got "
                             "%sx%s" % (nx, ny), nx=nx, ny=ny)
        self.nx = int(nx)
        self.ny = int(ny)
        self.hx = 1.0 / (nx - 1)
        self.hy = 1.0 / (ny - 1)

    def sigma(self):
        """Node positions, two (nx, ny) arrays."""
        return np.meshgrid(np.linspace(0.0, 1.0, self.nx),
                           np.linspace(0.0, 1.0, self.ny), indexing='ij')

    def boundary_mask(self):
        """True at nodes on the boundary of the rectangle."""
        mask = np.zeros((self.nx, self.ny), dtype=bool)
        mask[0, :] = mask[-1, :] = mask[:, 0] = mask[:, -1] = True
        return mask

    def __repr__(self):
        return "Worldsheet(%s, %s)" % (self.nx, self.ny)


# X on nodes, (Ax, Ay) on edges.  Which coframe A is written in is up to
# the caller: each residual form documents the one it expects.
LatticeFields = collections.namedtuple('LatticeFields', ['X', 'Ax', 'Ay'])

# The first-equation residual on x- and y-edges and the second-equation
# residual on plaquettes.
Residuals = collections.namedtuple('Residuals', ['eq1_x', 'eq1_y', 'eq2'])


class VariationProbe(object):
    """A variation of the fields: X~ = X + eps Y(X), A~ from A + eps~ B.

    Y maps a coordinate vector to a vector; (Bx, By) is an edge 1-form.
    """
    def __init__(self, Y, Bx, By, eps, eps_tilde):
        if abs(eps) > 0.1 or abs(eps_tilde) > 0.1:
            raise util.Error("Variation parameters must be at most 0.1 in "
                             "size, got eps=%s, eps~=%s" % (eps, eps_tilde))
        self.Y = Y
        self.Bx = np.asarray(Bx, dtype=float)
        self.By = np.asarray(By, dtype=float)
        self.eps = eps
        self.eps_tilde = eps_tilde

    def with_eps(self, eps, eps_tilde):
        return VariationProbe(self.Y, self.Bx, self.By, eps, eps_tilde)


def residual_maxima(residuals):
    """(max over edges of eq1, max over plaquettes of eq2)."""
    eq1 = max(util.max_defect(residuals.eq1_x)[0],
              util.max_defect(residuals.eq1_y)[0])
    return eq1, util.max_defect(residuals.eq2)[0]


# Discrete exterior calculus.

def d0(X):
    """Node 0-form -> edge 1-form."""
    return X[1:] - X[:-1], X[:, 1:] - X[:, :-1]


def d1(Ax, Ay):
    """Edge 1-form -> plaquette 2-form: circulation around each cell."""
    return Ax[:, :-1] + Ay[1:] - Ax[:, 1:] - Ay[:-1]


def edge_means(Ax, Ay):
    """The two parallel edges of each plaquette, averaged."""
    return 0.5 * (Ax[:, :-1] + Ax[:, 1:]), 0.5 * (Ay[:-1] + Ay[1:])


def wedge(a, b):
    """Componentwise a ^ b on plaquettes: [..., i, j] = a^i ^ b^j."""
    ax, ay = edge_means(*a)
    bx, by = edge_means(*b)
    return (np.einsum('...i,...j->...ij', ax, by) -
            np.einsum('...i,...j->...ij', ay, bx))


def edge_midpoints(X):
    return 0.5 * (X[1:] + X[:-1]), 0.5 * (X[:, 1:] + X[:, :-1])


def plaquette_centres(X):
    return 0.25 * (X[:-1, :-1] + X[1:, :-1] + X[:-1, 1:] + X[1:, 1:])


def _map_grid(fn, grid, jobs=1):
    """fn applied to every n-vector of a grid, stacked back in place."""
    shape = grid.shape[:-1]
    flat = grid.reshape(-1, grid.shape[-1])
    values = util.batch_map(fn, flat, jobs)
    if not values:
        return np.zeros(shape)
    return np.array(values).reshape(shape + np.shape(values[0]))


# Target models.  Both expose the coordinate bivector and its derivatives,
# which is all the coordinate-form evaluators and the action need.

class LinearModel(object):
    """The dual space g* with P_ij(xi) = c_ij^k xi_k; a global chart."""
    def __init__(self, algebra):
        self.algebra = algebra
        self.n = algebra.dim

    def bivector(self, y):
        return lie.linear_bivector(self.algebra, y)

    def bivector_derivative(self, y):
        """dP[l] = d_l P, exactly."""
        return self.algebra.coeffs.transpose(2, 0, 1)

    def __repr__(self):
        return "LinearModel(%r)" % self.algebra


class PoissonLieModel(object):
    """A Poisson-Lie group target, through a DoubleGeometry chart."""
    def __init__(self, geom):
        self.geom = geom
        self.n = geom.n

    def bivector(self, y):
        return self.geom.coordinate_bivector(y)

    def bivector_derivative(self, y):
        h = util.step_for(y, self.geom.tolerances.fd_step)
        derivs = []
        for direction in np.eye(self.n):
            coarse = util.central_difference(self.bivector, y, direction, h)
            fine = util.central_difference(self.bivector, y, direction,
                                           h / 2.0)
            derivs.append(util.richardson(coarse, fine))
        return np.array(derivs)

    def __repr__(self):
        return "PoissonLieModel(%r)" % self.geom


# Actions.

def action(model, ws, X, Ax, Ay, jobs=1):
    """sum over plaquettes of A_i ^ dX^i + 1/2 P^{jk}(X) A_j ^ A_k.

    A is in the coordinate coframe.
    """
    A = (Ax, Ay)
    kinetic = np.einsum('...ii->...', wedge(A, d0(X)))
    P = _map_grid(model.bivector, plaquette_centres(X), jobs)
    potential = 0.5 * np.einsum('...jk,...jk->...', P, wedge(A, A))
    return float(np.sum(kinetic + potential))


def action_linear(algebra, ws, X, Ax, Ay):
    """sum over plaquettes of <X, dA + 1/2 [A ^ A]>, X at the centre.

    On the rectangle this differs from `action` for the linear model by
    boundary terms only.
    """
    return float(np.sum(np.einsum(
        '...k,...k->...', plaquette_centres(X),
        linear_curvature(algebra.coeffs, Ax, Ay))))


def linear_curvature(coeffs, Ax, Ay):
    """dA^k + c_ij^k a_x^i a_y^j: the curvature of a connection form."""
    ax, ay = edge_means(Ax, Ay)
    return d1(Ax, Ay) + np.einsum('ijk,...i,...j->...k', coeffs, ax, ay)


# The five residual forms.

def eom_residual_coordinate(model, ws, X, Ax, Ay, jobs=1):
    """Both equations with A in the coordinate coframe."""
    dx, dy = d0(X)
    mid_x, mid_y = edge_midpoints(X)
    Px = _map_grid(model.bivector, mid_x, jobs)
    Py = _map_grid(model.bivector, mid_y, jobs)
    eq1_x = dx + np.einsum('...ij,...j->...i', Px, Ax)
    eq1_y = dy + np.einsum('...ij,...j->...i', Py, Ay)

    dP = _map_grid(model.bivector_derivative, plaquette_centres(X), jobs)
    ax, ay = edge_means(Ax, Ay)
    eq2 = d1(Ax, Ay) + np.einsum('...kij,...i,...j->...k', dP, ax, ay)
    return Residuals(eq1_x, eq1_y, eq2)


def to_coordinate_coframe(geom, X, Ax, Ay, jobs=1):
    """A_alpha = e(X)^T A per edge, e taken at the edge midpoint."""
    mid_x, mid_y = edge_midpoints(X)
    ex = _map_grid(lambda y: geometry.frame_matrix(geom.double, y).e,
                   mid_x, jobs)
    ey = _map_grid(lambda y: geometry.frame_matrix(geom.double, y).e,
                   mid_y, jobs)
    return (np.einsum('...ki,...k->...i', ex, Ax),
            np.einsum('...ki,...k->...i', ey, Ay))


def _right_invariant_differentials(geom, X, jobs):
    """T = e(X_mid) dX on every edge."""
    dx, dy = d0(X)
    mid_x, mid_y = edge_midpoints(X)
    ex = _map_grid(lambda y: geometry.frame_matrix(geom.double, y).e,
                   mid_x, jobs)
    ey = _map_grid(lambda y: geometry.frame_matrix(geom.double, y).e,
                   mid_y, jobs)
    return (np.einsum('...ij,...j->...i', ex, dx),
            np.einsum('...ij,...j->...i', ey, dy))


def _pi_grid(geom, grid, jobs, projector=False):
    if projector:
        fn = lambda y: geom.pi_projector_form(geom.point(y))  # noqa: E731
    else:
        fn = lambda y: geom.pi_matrix(geom.point(y))  # noqa: E731
    return _map_grid(fn, grid, jobs)


def _centre_differentials(geom, X, jobs):
    """T at plaquette centres, from the averaged edge differentials."""
    mean_x, mean_y = edge_means(*d0(X))
    e = _map_grid(lambda y: geometry.frame_matrix(geom.double, y).e,
                  plaquette_centres(X), jobs)
    return (np.einsum('...ij,...j->...i', e, mean_x),
            np.einsum('...ij,...j->...i', e, mean_y))


def eom_residual_invariant(geom, ws, X, Ax, Ay, jobs=1):
    """Both equations in right-invariant components."""
    Tx, Ty = _right_invariant_differentials(geom, X, jobs)
    mid_x, mid_y = edge_midpoints(X)
    eq1_x = Tx + np.einsum('...ij,...j->...i',
                           _pi_grid(geom, mid_x, jobs), Ax)
    eq1_y = Ty + np.einsum('...ij,...j->...i',
                           _pi_grid(geom, mid_y, jobs), Ay)

    centres = plaquette_centres(X)
    pi_c = _pi_grid(geom, centres, jobs)
    ad = geom.algebra.ad
    f = geom.double.cocommutator.coeffs
    # R_k(Pi)^{ij} = (ad_k Pi)^{ij} - (ad_k Pi)^{ji} + f^{ij}_k
    ad_pi = np.einsum('kil,...lj->...kij', ad, pi_c)
    derivative = (ad_pi - np.swapaxes(ad_pi, -1, -2) +
                  f.transpose(2, 0, 1))
    ax, ay = edge_means(Ax, Ay)
    Tcx, Tcy = _centre_differentials(geom, X, jobs)
    c = geom.algebra.coeffs
    eq2 = (d1(Ax, Ay) +
           np.einsum('...kij,...i,...j->...k', derivative, ax, ay) +
           np.einsum('kji,...i,...j->...k', c, ax, Tcy) -
           np.einsum('kji,...i,...j->...k', c, ay, Tcx))
    return Residuals(eq1_x, eq1_y, eq2)


def intrinsic_curvature(dual_coeffs, Ax, Ay):
    """dA_k + f^{ij}_k a_x,i a_y,j; the zero-curvature residual."""
    return linear_curvature(dual_coeffs, Ax, Ay)


def eom_residual_intrinsic(geom, ws, X, Ax, Ay, jobs=1):
    """T = Pi_map(X)(A) per edge, dA + 1/2[A ^ A]_{g*} per plaquette."""
    Tx, Ty = _right_invariant_differentials(geom, X, jobs)
    mid_x, mid_y = edge_midpoints(X)
    eq1_x = Tx - np.einsum('...ij,...j->...i',
                           _pi_grid(geom, mid_x, jobs, projector=True), Ax)
    eq1_y = Ty - np.einsum('...ij,...j->...i',
                           _pi_grid(geom, mid_y, jobs, projector=True), Ay)
    eq2 = intrinsic_curvature(geom.double.cocommutator.coeffs, Ax, Ay)
    return Residuals(eq1_x, eq1_y, eq2)


def invariant_correction(geom, X, Ax, Ay, jobs=1):
    """c_kl^i [A_i ^ rho^l], rho the first-equation residual at centres.

    The invariant second equation is the intrinsic one plus this term.
    """
    centres = plaquette_centres(X)
    pi_c = _pi_grid(geom, centres, jobs)
    ax, ay = edge_means(Ax, Ay)
    Tcx, Tcy = _centre_differentials(geom, X, jobs)
    rho_x = Tcx + np.einsum('...ij,...j->...i', pi_c, ax)
    rho_y = Tcy + np.einsum('...ij,...j->...i', pi_c, ay)
    c = geom.algebra.coeffs
    return (np.einsum('kli,...i,...l->...k', c, ax, rho_y) -
            np.einsum('kli,...i,...l->...k', c, ay, rho_x))


def r_bracket_coeffs(algebra, big_r):
    """Structure constants of [x, y]_R = [R x, y] + [x, R y]."""
    c = algebra.coeffs
    return (np.einsum('mi,mjk->ijk', big_r, c) +
            np.einsum('mj,imk->ijk', big_r, c))


def eom_residual_coboundary(geom, cb, ws, X, Ax, Ay, jobs=1):
    """The coboundary forms, in B = K^{-1} A."""
    if isinstance(cb, bialgebra.NoSolution):
        raise bialgebra.NotCoboundary(cb.residual)
    k_inv = lie.killing_inverse(geom.algebra, geom.tolerances.singular)
    big_r = cb.big_r
    if big_r is None:
        big_r = bialgebra.big_r_map(geom.algebra, cb.a_skew)
    Bx = np.einsum('ij,...j->...i', k_inv, Ax)
    By = np.einsum('ij,...j->...i', k_inv, Ay)

    def twisted(y):
        # R - A_X R A_X^{-1}
        A = geom.point(y).g_block
        return big_r - A.dot(big_r).dot(np.linalg.inv(A))

    Tx, Ty = _right_invariant_differentials(geom, X, jobs)
    mid_x, mid_y = edge_midpoints(X)
    eq1_x = Tx + np.einsum('...ij,...j->...i',
                           _map_grid(twisted, mid_x, jobs), Bx)
    eq1_y = Ty + np.einsum('...ij,...j->...i',
                           _map_grid(twisted, mid_y, jobs), By)
    eq2 = linear_curvature(r_bracket_coeffs(geom.algebra, big_r), Bx, By)
    return Residuals(eq1_x, eq1_y, eq2)


def eom_residual_linear(algebra, ws, X, Ax, Ay):
    """dX_i + c_ij^k X_k A^j per edge, dA + 1/2[A ^ A]_g per plaquette."""
    dx, dy = d0(X)
    mid_x, mid_y = edge_midpoints(X)
    c = algebra.coeffs
    eq1_x = dx + np.einsum('ijk,...k,...j->...i', c, mid_x, Ax)
    eq1_y = dy + np.einsum('ijk,...k,...j->...i', c, mid_y, Ay)
    return Residuals(eq1_x, eq1_y, linear_curvature(c, Ax, Ay))


def eom_residual_linear_tilde(algebra, ws, X, Ax, Ay, singular=None):
    """dX~ + [A, X~] per edge, with X~ = K^{-1} X.

    Equal to K^{-1} of the first linear residual.  Raises NotSemisimple.
    """
    k_inv = lie.killing_inverse(algebra, singular)
    X_tilde = np.einsum('ij,...j->...i', k_inv, X)
    dx, dy = d0(X_tilde)
    mid_x, mid_y = edge_midpoints(X_tilde)
    c = algebra.coeffs
    return (dx + np.einsum('jlm,...j,...l->...m', c, Ax, mid_x),
            dy + np.einsum('jlm,...j,...l->...m', c, Ay, mid_y))


# Constructing solutions: a flat dual field, then the group field.

def smooth_gauge(ws, n, amplitude, seed):
    """A seeded smooth node grid of dual-chart coordinates.

    h_k(sigma) = amplitude * sin(pi (a_k s1 + b_k s2) + phi_k)
    """
    rng = np.random.RandomState(seed)
    a = rng.uniform(0.5, 1.5, size=n)
    b = rng.uniform(0.5, 1.5, size=n)
    phi = rng.uniform(0.0, 2 * np.pi, size=n)
    s1, s2 = ws.sigma()
    return amplitude * np.sin(np.pi * (a * s1[..., None] + b * s2[..., None])
                              + phi)


def pure_gauge_dual_field(dual_geom, ws, H, jobs=1):
    """A~ on edges p -> q as log(h(p) h(q)^{-1}), h(p) given by coordinates.

    For an abelian dual group this is exactly H(p) - H(q), which is also
    what we use there: its Ad representation is not faithful.
    """
    H = np.asarray(H, dtype=float)
    if not np.any(dual_geom.algebra.coeffs):
        return H[:-1] - H[1:], H[:, :-1] - H[:, 1:]

    reps = _map_grid(dual_geom.representation_matrix, H, jobs)
    inv_reps = np.linalg.inv(reps)

    def edge_log(pair):
        tail, head_inv = pair
        return dual_geom.group_log(tail.dot(head_inv))

    def logs(tails, heads_inv):
        pairs = list(zip(tails.reshape((-1,) + tails.shape[-2:]),
                         heads_inv.reshape((-1,) + heads_inv.shape[-2:])))
        values = util.batch_map(edge_log, pairs, jobs)
        return np.array(values).reshape(tails.shape[:-2] + (dual_geom.n,))

    return (logs(reps[:-1], inv_reps[1:]),
            logs(reps[:, :-1], inv_reps[:, 1:]))


IntegrationResult = collections.namedtuple(
    'IntegrationResult', ['X', 'cross_residual', 'cross_max'])


def integrate_group_field(geom, ws, Ax, Ay, x0, jobs=1):
    """March T + Pi(X) A = 0 across the lattice from X(0, 0) = x0.

    The first column is built upward, then every row rightward, each step
    dX = -f(X) Pi(X) A with f = e^{-1} evaluated at the edge tail.  The
    y-edges of columns 1.. were never stepped along; their residual, also
    tail-evaluated, is the integrability check.
    """
    nx, ny, n = ws.nx, ws.ny, geom.n
    x0 = np.asarray(x0, dtype=float)

    def step(y, a, node):
        try:
            p = geom.point(y)
            frame = geom.frame(p)
            return -frame.f.dot(geom.pi_matrix(p).dot(a))
        except (geometry.ChartBoundary, lie.ExpOverflow) as e:
            e.details['node'] = node
            raise

    X = np.zeros((nx, ny, n))
    X[0, 0] = x0
    for j in range(ny - 1):
        X[0, j + 1] = X[0, j] + step(X[0, j], Ay[0, j], (0, j))

    def row(j):
        values = [X[0, j]]
        for i in range(nx - 1):
            values.append(values[-1] + step(values[-1], Ax[i, j], (i, j)))
        return values

    for j, values in enumerate(util.batch_map(row, range(ny), jobs)):
        X[:, j] = values

    cross = np.zeros((nx - 1, ny - 1, n))
    for i in range(1, nx):
        for j in range(ny - 1):
            cross[i - 1, j] = (X[i, j + 1] - X[i, j] -
                               step(X[i, j], Ay[i, j], (i, j)))
    return IntegrationResult(X, cross, util.max_defect(cross)[0])


ConvergenceRow = collections.namedtuple(
    'ConvergenceRow', ['nx', 'flatness', 'cross_residual', 'eq1_invariant'])


def convergence_study(geom, sizes, x0, amplitude, seed, jobs=1,
                      verbose=False, dual_generators=None):
    """Solve on each grid; report residual maxima and observed orders.

    Returns (rows, orders, fields): orders maps a measure to the log2
    ratios between successive sizes, fields maps nx to the LatticeFields
    solved on that grid.

    `dual_generators` is a faithful matrix representation of g~, one
    matrix per basis vector, for the group logs of the gauge field; by
    default the Ad representation on the double.
    """
    def log(msg):
        if verbose:
            report.emit(msg)

    dual = geom.dual(generators=dual_generators)
    rows = []
    fields = {}
    for nx in sizes:
        ws = Worldsheet(nx)
        log("Solving on %sx%s nodes" % (nx, nx))
        H = smooth_gauge(ws, geom.n, amplitude, seed)
        Ax, Ay = pure_gauge_dual_field(dual, ws, H, jobs)
        flatness = util.max_defect(
            intrinsic_curvature(geom.double.cocommutator.coeffs, Ax, Ay))[0]
        result = integrate_group_field(geom, ws, Ax, Ay, x0, jobs)
        eq1 = residual_maxima(eom_residual_invariant(
            geom, ws, result.X, Ax, Ay, jobs))[0]
        rows.append(ConvergenceRow(nx, flatness, result.cross_max, eq1))
        fields[nx] = LatticeFields(result.X, Ax, Ay)

    floor = geom.tolerances.tol
    orders = {'flatness': [], 'cross_residual': []}
    for coarse, fine in zip(rows, rows[1:]):
        orders['flatness'].append(util.convergence_order(
            coarse.flatness, fine.flatness, floor))
        orders['cross_residual'].append(util.convergence_order(
            coarse.cross_residual, fine.cross_residual, floor))
    return rows, orders, fields


# The first-variation probe.

def _jacobian(Y, y, h):
    y = np.asarray(y, dtype=float)
    step = util.step_for(y, h)
    return np.array([util.central_difference(Y, y, direction, step)
                     for direction in np.eye(len(y))]).T


def first_variation_probe(model, ws, X, Ax, Ay, probe, h=1e-4, jobs=1):
    """|S[X~, A~] - S[X, A]| for the variation described by `probe`.

    X~ = X + eps Y(X), with Y switched off on boundary nodes; on each edge
    A~ = (I - eps J_Y(X_mid)^T)(A + eps~ B), the first-order pullback.
    A is in the coordinate coframe.
    """
    if probe.eps == 0.0 and probe.eps_tilde == 0.0:
        return 0.0
    base = action(model, ws, X, Ax, Ay, jobs)
    Yvals = _map_grid(probe.Y, X, jobs)
    Yvals[ws.boundary_mask()] = 0.0
    X_new = X + probe.eps * Yvals

    new = []
    for A, B, mid in zip((Ax, Ay), (probe.Bx, probe.By), edge_midpoints(X)):
        shifted = A + probe.eps_tilde * B
        if probe.eps:
            J = _map_grid(lambda y: _jacobian(probe.Y, y, h), mid, jobs)
            shifted = shifted - probe.eps * np.einsum(
                '...ji,...j->...i', J, shifted)
        new.append(shifted)
    return abs(action(model, ws, X_new, new[0], new[1], jobs) - base)


def variation_slope(model, ws, X, Ax, Ay, probe, eps_tildes, eps_ratio=0.0,
                    jobs=1):
    """The log-log slope of the probe's |dS| against eps~.

    eps is tied to eps~ by eps = eps_ratio * eps~.
    """
    eps_tildes = np.asarray(eps_tildes, dtype=float)
    values = np.array([
        first_variation_probe(model, ws, X, Ax, Ay,
                              probe.with_eps(eps_ratio * t, t), jobs=jobs)
        for t in eps_tildes])
    slope, _ = np.polyfit(np.log(eps_tildes), np.log(values), 1)
    return float(slope), values


def snapshot_array(ws, X):
    """Rows (i, j, sigma1, sigma2, X_0, ..., X_{n-1}) for every node."""
    s1, s2 = ws.sigma()
    i, j = np.meshgrid(np.arange(ws.nx), np.arange(ws.ny), indexing='ij')
    columns = [i, j, s1, s2] + [X[..., k] for k in range(X.shape[-1])]
    return np.stack([np.ravel(col) for col in columns], axis=1)


def _index_columns(shape):
    i, j = np.meshgrid(np.arange(shape[0]), np.arange(shape[1]),
                       indexing='ij')
    return [np.ravel(i), np.ravel(j)]


def edge_array(Ax, Ay, eq1_x, eq1_y):
    """Rows (axis, i, j, A_0.., r_0..) for every edge, x-edges first.

    axis is 0 for the edge (i, j) -> (i+1, j) and 1 for (i, j) -> (i, j+1);
    r is the first-equation residual on that edge.
    """
    blocks = []
    for axis, (A, r) in enumerate(((Ax, eq1_x), (Ay, eq1_y))):
        n = A.shape[-1]
        columns = ([np.full(A.shape[0] * A.shape[1], axis)] +
                   _index_columns(A.shape) +
                   [np.ravel(A[..., k]) for k in range(n)] +
                   [np.ravel(r[..., k]) for k in range(n)])
        blocks.append(np.stack(columns, axis=1))
    return np.concatenate(blocks)


def plaquette_array(ws, eq2):
    """Rows (i, j, sigma1, sigma2, r_0..) at plaquette centres."""
    s1 = (np.arange(ws.nx - 1) + 0.5) * ws.hx
    s2 = (np.arange(ws.ny - 1) + 0.5) * ws.hy
    c1, c2 = np.meshgrid(s1, s2, indexing='ij')
    columns = (_index_columns(eq2.shape) + [np.ravel(c1), np.ravel(c2)] +
               [np.ravel(eq2[..., k]) for k in range(eq2.shape[-1])])
    return np.stack(columns, axis=1)
