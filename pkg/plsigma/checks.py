"""Numerical verification of the Poisson-Lie bivector built on a double.

Every check returns a lie.Defect (max-norm value, witness), and
run_battery packages the lot as DefectReports.  Derivatives are always
central differences at steps h and h/2 combined by Richardson
extrapolation, with h scaled by the size of the coordinates.
"""
import collections

import numpy as np

from . import bialgebra
from . import geometry
from . import lie
from . import report
from . import util


SKLYANIN_TOLERANCE = 1e-9
SKLYANIN_IDENTITY_TOLERANCE = 1e-12
PIPELINE_TOLERANCE = 1e-11


# witness: whatever says where the max was attained (index tuple, point
# coordinates, or both), already in JSON-friendly form.
DefectReport = collections.namedtuple(
    'DefectReport',
    ['check_name', 'max_defect', 'tolerance', 'passed', 'witness'])


def defect_report(check_name, defect, tolerance):
    value, witness = defect
    return DefectReport(check_name, float(value), float(tolerance),
                        bool(value <= tolerance), witness)


def _extrapolated_derivative(fn, y, direction, h):
    coarse = util.central_difference(fn, y, direction, h)
    fine = util.central_difference(fn, y, direction, h / 2.0)
    return util.richardson(coarse, fine)


def bivector_jacobiator(bivector_fn, y, h):
    """max |P^il d_l P^jk + cyclic| at y for any coordinate bivector field.

    `bivector_fn` maps a coordinate vector to an antisymmetric matrix.
    """
    y = np.asarray(y, dtype=float)
    n = len(y)
    step = util.step_for(y, h)
    P = np.asarray(bivector_fn(y), dtype=float)
    # dP[l] = d_l P
    dP = np.array([_extrapolated_derivative(bivector_fn, y, direction, step)
                   for direction in np.eye(n)])
    J = (np.einsum('il,ljk->ijk', P, dP) +
         np.einsum('jl,lki->ijk', P, dP) +
         np.einsum('kl,lij->ijk', P, dP))
    return lie.Defect(*util.max_defect(J))


def jacobiator_field(geom, coords, h):
    """The extrapolated [P, P] defect of the Poisson-Lie bivector."""
    return bivector_jacobiator(geom.coordinate_bivector, coords, h)


def linear_jacobiator(algebra, xi, h):
    """[P, P] defect of the linear structure P_ij(xi) = c_ij^k xi_k."""
    return bivector_jacobiator(
        lambda y: lie.linear_bivector(algebra, y), xi, h)


def multiplicativity_defect(geom, p, q):
    """max |Pi(gh) - Pi(g) - A_g Pi(h) A_g^T|."""
    A = p.g_block
    gh = geom.product(p, q)
    defect = (geom.pi_matrix(gh) - geom.pi_matrix(p) -
              A.dot(geom.pi_matrix(q)).dot(A.T))
    return lie.Defect(*util.max_defect(defect))


def sklyanin_identity_defect(p, q, a_skew, product):
    """Ad_gh(a) - a - (Ad_g(a) - a) - Ad_g(Ad_h(a) - a), componentwise.

    Pure algebra; it validates the component form of multiplicativity
    independently of any double.
    """
    A = p.g_block
    defect = (bialgebra.sklyanin_components(product, a_skew) -
              bialgebra.sklyanin_components(p, a_skew) -
              A.dot(bialgebra.sklyanin_components(q, a_skew)).dot(A.T))
    return lie.Defect(*util.max_defect(defect))


def invariant_derivative_rhs(geom, pi, k):
    """c_kl^i Pi^lj - c_kl^j Pi^li + f^ij_k."""
    ad_k = geom.algebra.ad[k]
    term = ad_k.dot(pi)
    return term - term.T + geom.double.cocommutator.coeffs[:, :, k]


def flow_derivative(geom, p, k, h):
    """d/dt Pi(exp(t T_k) g) at t = 0, extrapolated."""
    def pi_along(t):
        return geom.pi_matrix(geom.flow(p, k, float(t[0])))
    return _extrapolated_derivative(pi_along, np.zeros(1), np.ones(1), h)


def invariant_derivative_defect(geom, p, k, h):
    """The n x n matrix R_{T_k}(Pi) - (its closed form) at p."""
    if p.coords is not None:
        h = util.step_for(p.coords, h)
    return (flow_derivative(geom, p, k, h) -
            invariant_derivative_rhs(geom, geom.pi_matrix(p), k))


def tangent_bialgebra(geom, h):
    """The intrinsic derivative of Pi at the identity, an (n, n, n) array.

    estimate[i, j, k] = d/dt Pi^{ij}(exp(t T_k)) at t = 0, as measured: no
    antisymmetrization, so an asymmetric error in Pi shows up here.
    """
    e = geom.identity()
    estimate = np.zeros((geom.n, geom.n, geom.n))
    for k in range(geom.n):
        estimate[:, :, k] = flow_derivative(geom, e, k, h)
    return estimate


def pipeline_defect(geom, p):
    """b a^{-1} against the projector formula P Ad_g P~ Ad_g^-1 P~."""
    return lie.Defect(*util.max_defect(
        geom.pi_block(p) - geom.pi_projector_form(p)))


def frame_defect(geom, coords, h):
    """Columns of e against a finite-difference right translation.

    d/ds Ad_{g(alpha + s e_j)} Ad_{g(alpha)}^{-1} at s = 0 is ad of the
    right-invariant image of d/dalpha_j, whose components are e[:, j].
    """
    coords = np.asarray(coords, dtype=float)
    n = geom.n
    ad_inv = geometry.inverse_adjoint(geom.double, coords)
    frame = geom.frame(geom.point(coords))
    basis = geom.double.total.ad[:n].reshape(n, -1).T
    step = util.step_for(coords, h)

    def translated(y):
        return geometry.adjoint(geom.double, y).dot(ad_inv)

    worst = (0.0, ())
    for j, direction in enumerate(np.eye(n)):
        deriv = _extrapolated_derivative(translated, coords, direction, step)
        column = np.linalg.lstsq(basis, deriv.reshape(-1), rcond=None)[0]
        value, index = util.max_defect(column - frame.e[:, j])
        if value > worst[0]:
            worst = (value, (j,) + index)
    return lie.Defect(*worst)


def _worst(defects):
    """The max over a list of Defects; the first one wins ties."""
    best = lie.Defect(0.0, ())
    for defect in defects:
        if defect.value > best.value or not np.isfinite(defect.value):
            best = defect
            if not np.isfinite(defect.value):
                break
    return best


def _at_point(check, coords):
    """check(coords), with chart and overflow failures as infinite defects."""
    try:
        value, index = check(coords)
    except (geometry.ChartBoundary, lie.ExpOverflow) as e:
        return lie.Defect(float('inf'), {'point': list(coords),
                                         'error': e.message})
    return lie.Defect(value, {'point': [float(y) for y in coords],
                              'index': list(index)})


def _at_pair(check, y, z):
    """check(y, z) for a pair of points, failing the way _at_point does."""
    try:
        value, index = check(y, z)
    except (geometry.ChartBoundary, lie.ExpOverflow) as e:
        return lie.Defect(float('inf'), {'point': list(y), 'partner': list(z),
                                         'error': e.message})
    return lie.Defect(value, {'point': [float(v) for v in y],
                              'partner': [float(v) for v in z],
                              'index': list(index)})


def run_battery(geom, seed=0, points=100, derivative_points=20,
                coboundary=None, jobs=1, verbose=False):
    """All the identity checks, for one double, as a list of DefectReports.

    `coboundary` is CoboundaryData for coboundary bialgebras; it adds the
    Sklyanin cross-checks.  Sample points are seeded-random in the box
    |alpha_k| <= tolerances.box; results do not depend on `jobs`.
    """
    tols = geom.tolerances
    double = geom.double
    n = geom.n
    h = tols.fd_step

    def log(msg):
        if verbose:
            report.emit(msg)

    reports = []

    log("Checking algebraic identities")
    base_scale = util.scale(double.base.coeffs) ** 2
    reports.append(defect_report(
        'base_jacobi', lie.jacobiator(double.base.coeffs),
        tols.tol * base_scale))
    reports.append(defect_report(
        'dual_jacobi', lie.jacobiator(double.cocommutator.coeffs),
        tols.tol * util.scale(double.cocommutator.coeffs) ** 2))
    reports.append(defect_report(
        'cocycle', bialgebra.cocycle_defect(double.base.coeffs,
                                            double.cocommutator.coeffs),
        tols.tol * util.scale(double.base.coeffs,
                              double.cocommutator.coeffs) ** 2))
    reports.append(defect_report(
        'double_jacobi', lie.jacobiator(double.total.coeffs),
        tols.tol * util.scale(double.total.coeffs) ** 2))
    reports.append(defect_report(
        'double_form_invariance', bialgebra.form_invariance_defect(double),
        tols.tol * util.scale(double.total.coeffs)))
    reports.append(defect_report(
        'killing_invariance', lie.killing_invariance_defect(double.base),
        tols.tol * base_scale))
    if lie.is_semisimple(double.base, tols.singular):
        reports.append(defect_report(
            'killing_inverse_coadjoint',
            lie.killing_inverse_coadjoint_defect(double.base, tols.singular),
            tols.tol * base_scale))

    samples = util.sample_box(seed, points, n, tols.box)
    partners = util.sample_box(seed + 1, points, n, tols.box)
    few = samples[:derivative_points]

    def antisymmetry(coords):
        pi = geom.pi_matrix(geom.point(coords))
        return lie.Defect(*util.max_defect(pi + pi.T))

    log("Comparing the two Pi pipelines")
    results = util.batch_map(
        lambda y: _at_point(lambda c: pipeline_defect(geom, geom.point(c)),
                            y),
        samples, jobs, verbose, desc='Pi pipelines')
    reports.append(defect_report('pi_pipelines', _worst(results),
                                 PIPELINE_TOLERANCE * util.scale(samples)))
    results = util.batch_map(
        lambda y: _at_point(antisymmetry, y), samples,
        jobs, verbose, desc='Pi antisymmetry')
    reports.append(defect_report('pi_antisymmetry', _worst(results),
                                 tols.tol * util.scale(samples) ** 2))

    log("Checking [P, P] = 0 at %s points" % points)
    results = util.batch_map(
        lambda y: _at_point(lambda c: jacobiator_field(geom, c, h), y),
        samples, jobs, verbose, desc='Jacobiator')
    reports.append(defect_report('jacobiator', _worst(results),
                                 tols.jacobiator))

    log("Checking multiplicativity at %s pairs" % points)

    def multiplicativity(pair):
        return _at_pair(lambda y, z: multiplicativity_defect(
            geom, geom.point(y), geom.point(z)), *pair)

    results = util.batch_map(multiplicativity, zip(samples, partners),
                             jobs, verbose, desc='Multiplicativity')
    reports.append(defect_report(
        'multiplicativity', _worst(results),
        tols.tol * util.scale(samples, partners) ** 2))

    log("Checking the right-invariant derivative law")

    def derivative_law(coords):
        p = geom.point(coords)
        return _worst([lie.Defect(*util.max_defect(
            invariant_derivative_defect(geom, p, k, h)))
            for k in range(n)])

    results = util.batch_map(
        lambda y: _at_point(derivative_law, y), few, jobs, verbose,
        desc='Derivative law')
    reports.append(defect_report('invariant_derivative', _worst(results),
                                 tols.derivative * util.scale(few)))

    results = util.batch_map(
        lambda y: _at_point(lambda c: frame_defect(geom, c, h), y), few,
        jobs, verbose, desc='Frame')
    reports.append(defect_report('frame_consistency', _worst(results),
                                 tols.derivative * util.scale(few)))

    log("Recovering the tangent bialgebra")
    tangent = tangent_bialgebra(geom, h)
    reports.append(defect_report(
        'tangent_bialgebra',
        lie.Defect(*util.max_defect(
            tangent - double.cocommutator.coeffs)),
        tols.derivative * util.scale(double.cocommutator.coeffs)))

    if coboundary is not None:
        log("Cross-checking against the Sklyanin bracket")
        a_skew = coboundary.a_skew

        def sklyanin(coords):
            p = geom.point(coords)
            return lie.Defect(*util.max_defect(
                geom.pi_matrix(p) -
                bialgebra.sklyanin_components(p, a_skew)))

        results = util.batch_map(
            lambda y: _at_point(sklyanin, y), samples, jobs, verbose,
            desc='Sklyanin')
        reports.append(defect_report(
            'sklyanin', _worst(results),
            SKLYANIN_TOLERANCE * util.scale(a_skew, samples)))

        def identity(y, z):
            p, q = geom.point(y), geom.point(z)
            value, index = sklyanin_identity_defect(
                p, q, a_skew, geom.product(p, q))
            # relative to the size of the products being compared
            value /= (util.scale(a_skew) * util.scale(p.g_block) ** 2 *
                      util.scale(q.g_block) ** 2)
            return value, index

        results = util.batch_map(lambda pair: _at_pair(identity, *pair),
                                 zip(samples, partners), jobs,
                                 verbose, desc='Sklyanin identity')
        reports.append(defect_report(
            'sklyanin_identity', _worst(results),
            SKLYANIN_IDENTITY_TOLERANCE))

    return reports


def all_passed(reports):
    return all(r.passed for r in reports)
