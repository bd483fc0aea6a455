from __future__ import absolute_import

import unittest

import numpy as np

from plsigma import bialgebra
from plsigma import catalog
from plsigma import lattice
from plsigma import lie
from plsigma import util

import base


def geometry_for(name, beta=catalog.DEFAULT_BETA):
    return catalog.build_geometry(catalog.get(name, beta).model_config())


def smooth_fields(ws, n, seed):
    """Smooth fields that solve nothing in particular."""
    X = lattice.smooth_gauge(ws, n, 0.4, seed)
    H = lattice.smooth_gauge(ws, n, 0.6, seed + 1)
    Ax, Ay = lattice.d0(H)
    return X, Ax + 0.3 * ws.hx, Ay - 0.2 * ws.hy


class ExteriorCalculusTest(unittest.TestCase):
    def test_d1_d0_is_zero(self):
        X = np.random.RandomState(0).randint(-50, 50, size=(6, 5, 2))
        Ax, Ay = lattice.d0(X.astype(float))
        np.testing.assert_array_equal(np.zeros((5, 4, 2)), lattice.d1(Ax, Ay))

    def test_shapes(self):
        ws = lattice.Worldsheet(5, 4)
        X = np.zeros((5, 4, 3))
        Ax, Ay = lattice.d0(X)
        self.assertEqual((4, 4, 3), Ax.shape)
        self.assertEqual((5, 3, 3), Ay.shape)
        self.assertEqual((4, 3, 3), lattice.plaquette_centres(X).shape)
        self.assertEqual((4, 3, 3, 3), lattice.wedge((Ax, Ay), (Ax, Ay)).shape)
        self.assertEqual(0.25, ws.hx)
        self.assertEqual(14, np.count_nonzero(ws.boundary_mask()))

    def test_wedge_antisymmetry(self):
        rng = np.random.RandomState(1)
        a = (rng.normal(size=(3, 4, 2)), rng.normal(size=(4, 3, 2)))
        b = (rng.normal(size=(3, 4, 2)), rng.normal(size=(4, 3, 2)))
        np.testing.assert_array_equal(
            lattice.wedge(a, b), -np.swapaxes(lattice.wedge(b, a), -1, -2))

    def test_too_small(self):
        with self.assertRaises(util.Error):
            lattice.Worldsheet(1)


class ActionTest(unittest.TestCase):
    def test_abelian_closed_form(self):
        # X = sigma^1 v, A = dsigma^2 w: S = -<w, v>.
        ws = lattice.Worldsheet(9, 7)
        v = np.array([0.5, -1.0, 2.0])
        w = np.array([1.5, 0.25, -0.5])
        s1, _ = ws.sigma()
        X = s1[..., None] * v
        Ax = np.zeros((8, 7, 3))
        Ay = np.broadcast_to(ws.hy * w, (9, 6, 3)).copy()
        model = lattice.LinearModel(lie.abelian(3))
        self.assertAlmostEqual(-w.dot(v),
                               lattice.action(model, ws, X, Ax, Ay),
                               places=12)


    def test_linear_form_on_vanishing_boundary(self):
        ws = lattice.Worldsheet(8, 6)
        X, Ax, Ay = smooth_fields(ws, 3, 9)
        X[ws.boundary_mask()] = 0.0
        so3 = lie.so3()
        self.assertAlmostEqual(
            lattice.action(lattice.LinearModel(so3), ws, X, Ax, Ay),
            lattice.action_linear(so3, ws, X, Ax, Ay), places=12)

    def test_linear_form_differs_by_boundary_circulation(self):
        ws = lattice.Worldsheet(8, 6)
        X, Ax, Ay = smooth_fields(ws, 3, 9)
        X = X + np.array([0.2, -0.4, 0.1])
        mid_x, mid_y = lattice.edge_midpoints(X)

        def pair(mid, A):
            return float(np.sum(mid * A))

        circulation = (pair(mid_x[:, 0], Ax[:, 0]) +
                       pair(mid_y[-1, :], Ay[-1, :]) -
                       pair(mid_x[:, -1], Ax[:, -1]) -
                       pair(mid_y[0, :], Ay[0, :]))
        self.assertGreater(abs(circulation), 1e-3)
        so3 = lie.so3()
        self.assertAlmostEqual(
            -circulation,
            lattice.action(lattice.LinearModel(so3), ws, X, Ax, Ay) -
            lattice.action_linear(so3, ws, X, Ax, Ay), places=12)


class ResidualFormsTest(base.TestBase):
    def test_trivial_fields(self):
        geom = geometry_for('example_beta')
        ws = lattice.Worldsheet(5)
        X = np.broadcast_to([0.2, -0.1], (5, 5, 2)).copy()
        zero_x, zero_y = np.zeros((4, 5, 2)), np.zeros((5, 4, 2))
        for residuals in (
                lattice.eom_residual_invariant(geom, ws, X, zero_x, zero_y),
                lattice.eom_residual_intrinsic(geom, ws, X, zero_x, zero_y),
                lattice.eom_residual_coordinate(
                    lattice.PoissonLieModel(geom), ws, X, zero_x, zero_y)):
            self.assertEqual((0.0, 0.0), lattice.residual_maxima(residuals))

    def test_intrinsic_curvature_ignores_x(self):
        geom = geometry_for('example_beta', 0.5)
        ws = lattice.Worldsheet(7)
        X, Ax, Ay = smooth_fields(ws, 2, 3)
        np.testing.assert_array_equal(
            lattice.eom_residual_intrinsic(geom, ws, X, Ax, Ay).eq2,
            lattice.eom_residual_intrinsic(geom, ws, 2 * X, Ax, Ay).eq2)

    def test_invariant_is_intrinsic_plus_correction(self):
        for name in ('example_beta', 'sl2_standard'):
            geom = geometry_for(name)
            ws = lattice.Worldsheet(7)
            X, Ax, Ay = smooth_fields(ws, geom.n, 11)
            invariant = lattice.eom_residual_invariant(geom, ws, X, Ax, Ay)
            intrinsic = lattice.eom_residual_intrinsic(geom, ws, X, Ax, Ay)
            correction = lattice.invariant_correction(geom, X, Ax, Ay)
            np.testing.assert_allclose(intrinsic.eq1_x, invariant.eq1_x,
                                       atol=1e-13)
            np.testing.assert_allclose(intrinsic.eq1_y, invariant.eq1_y,
                                       atol=1e-13)
            np.testing.assert_allclose(intrinsic.eq2 + correction,
                                       invariant.eq2, atol=1e-13)
            self.assertGreater(np.max(np.abs(correction)), 1e-6)

    def test_golden_equations_of_motion(self):
        ws = lattice.Worldsheet(7)
        X, Ax, Ay = smooth_fields(ws, 2, 3)
        X = X + np.array([0.0, 0.5])
        dx, dy = lattice.d0(X)
        mid_x, mid_y = lattice.edge_midpoints(X)
        ax, ay = lattice.edge_means(Ax, Ay)
        curvature = lattice.d1(Ax, Ay)
        for beta in catalog.BETA_SWEEP:
            geom = geometry_for('example_beta', beta)
            for d, mid, A, eq1 in (
                    (dx, mid_x, Ax, 'eq1_x'), (dy, mid_y, Ay, 'eq1_y')):
                grow = np.exp(mid[..., 0])
                expected = np.stack([
                    d[..., 0] + beta * grow * mid[..., 1] * A[..., 1],
                    grow * d[..., 1] - beta * grow * mid[..., 1] * A[..., 0],
                ], axis=-1)
                for form in (lattice.eom_residual_intrinsic,
                             lattice.eom_residual_invariant):
                    np.testing.assert_allclose(
                        expected, getattr(form(geom, ws, X, Ax, Ay), eq1),
                        atol=1e-12, err_msg=str(beta))

            intrinsic = lattice.eom_residual_intrinsic(geom, ws, X, Ax, Ay)
            np.testing.assert_allclose(curvature[..., 0],
                                       intrinsic.eq2[..., 0], atol=1e-15)
            np.testing.assert_allclose(
                curvature[..., 1] + beta * (ax[..., 0] * ay[..., 1] -
                                            ay[..., 0] * ax[..., 1]),
                intrinsic.eq2[..., 1], atol=1e-12)

            # The coordinate coframe has components (A_0, e^{X_0} A_1).
            cx, cy = lattice.to_coordinate_coframe(geom, X, Ax, Ay)
            coordinate = lattice.eom_residual_coordinate(
                lattice.PoissonLieModel(geom), ws, X, cx, cy)
            for d, mid, c, eq1 in ((dx, mid_x, cx, coordinate.eq1_x),
                                   (dy, mid_y, cy, coordinate.eq1_y)):
                expected = np.stack([
                    d[..., 0] + beta * mid[..., 1] * c[..., 1],
                    d[..., 1] - beta * mid[..., 1] * c[..., 0],
                ], axis=-1)
                np.testing.assert_allclose(expected, eq1, atol=1e-10)
            cax, cay = lattice.edge_means(cx, cy)
            np.testing.assert_allclose(
                lattice.d1(cx, cy)[..., 1] +
                beta * (cax[..., 0] * cay[..., 1] -
                        cay[..., 0] * cax[..., 1]),
                coordinate.eq2[..., 1], atol=1e-10)

            # e(X_mid) maps the coordinate first equation to the invariant.
            invariant = lattice.eom_residual_invariant(geom, ws, X, Ax, Ay)
            for mid, coord, inv in (
                    (mid_x, coordinate.eq1_x, invariant.eq1_x),
                    (mid_y, coordinate.eq1_y, invariant.eq1_y)):
                np.testing.assert_allclose(
                    inv, np.stack([coord[..., 0],
                                   np.exp(mid[..., 0]) * coord[..., 1]],
                                  axis=-1), atol=1e-10)

    def test_coboundary_form(self):
        geom = geometry_for('sl2_standard')
        cb = bialgebra.solve_r_matrix(geom.algebra.coeffs,
                                      geom.double.cocommutator.coeffs)
        ws = lattice.Worldsheet(6)
        X, Ax, Ay = smooth_fields(ws, 3, 2)
        coboundary = lattice.eom_residual_coboundary(geom, cb, ws, X, Ax, Ay)
        intrinsic = lattice.eom_residual_intrinsic(geom, ws, X, Ax, Ay)
        np.testing.assert_allclose(intrinsic.eq1_x, coboundary.eq1_x,
                                   atol=1e-10)
        np.testing.assert_allclose(intrinsic.eq1_y, coboundary.eq1_y,
                                   atol=1e-10)
        k_inv = lie.killing_inverse(geom.algebra)
        np.testing.assert_allclose(
            np.einsum('ij,...j->...i', k_inv, intrinsic.eq2),
            coboundary.eq2, atol=1e-12)

    def test_coboundary_form_needs_r_matrix(self):
        geom = geometry_for('example_beta')
        ws = lattice.Worldsheet(4)
        X, Ax, Ay = smooth_fields(ws, 2, 0)
        with self.assertRaises(bialgebra.NotCoboundary):
            lattice.eom_residual_coboundary(
                geom, bialgebra.NoSolution(1.0), ws, X, Ax, Ay)

    def test_coordinate_form_matches_invariant_for_linear_target(self):
        # linear_so3: e = I and Pi(X) is linear, so the coordinate form of
        # the second equation agrees with the invariant one exactly.
        geom = geometry_for('linear_so3')
        ws = lattice.Worldsheet(6)
        X, Ax, Ay = smooth_fields(ws, 3, 5)
        coordinate = lattice.eom_residual_coordinate(
            lattice.PoissonLieModel(geom), ws, X, Ax, Ay)
        invariant = lattice.eom_residual_invariant(geom, ws, X, Ax, Ay)
        for a, b in zip(coordinate, invariant):
            np.testing.assert_allclose(a, b, atol=1e-9)

    def test_linear_model(self):
        so3 = lie.so3()
        ws = lattice.Worldsheet(6)
        X, Ax, Ay = smooth_fields(ws, 3, 7)
        linear = lattice.eom_residual_linear(so3, ws, X, Ax, Ay)
        tilde_x, tilde_y = lattice.eom_residual_linear_tilde(
            so3, ws, X, Ax, Ay)
        k_inv = lie.killing_inverse(so3)
        np.testing.assert_allclose(
            np.einsum('ij,...j->...i', k_inv, linear.eq1_x), tilde_x,
            atol=1e-14)
        np.testing.assert_allclose(
            np.einsum('ij,...j->...i', k_inv, linear.eq1_y), tilde_y,
            atol=1e-14)
        with self.assertRaises(lie.NotSemisimple):
            lattice.eom_residual_linear_tilde(lie.abelian(3), ws, X, Ax, Ay)

    def test_coordinate_coframe(self):
        geom = geometry_for('example_beta')
        ws = lattice.Worldsheet(4)
        X, Ax, Ay = smooth_fields(ws, 2, 1)
        cx, cy = lattice.to_coordinate_coframe(geom, X, Ax, Ay)
        mid_x, _ = lattice.edge_midpoints(X)
        np.testing.assert_allclose(Ax[..., 0], cx[..., 0], atol=1e-15)
        np.testing.assert_allclose(np.exp(mid_x[..., 0]) * Ax[..., 1],
                                   cx[..., 1], atol=1e-14)


class SolverTest(base.TestBase):
    @classmethod
    def setUpClass(cls):
        cls.geom = geometry_for('example_beta')
        cls.rows, cls.orders, cls.fields = lattice.convergence_study(
            cls.geom, (17, 33, 65), (0.0, 0.5), 0.5, seed=0)

    def test_flatness_order(self):
        self.assertEqual(2, len(self.orders['flatness']))
        for order in self.orders['flatness']:
            self.assertGreaterEqual(order, 1.8)

    def test_integration_order(self):
        for order in self.orders['cross_residual']:
            self.assertGreaterEqual(order, 0.9)

    def test_rows(self):
        self.assertEqual([17, 33, 65], [row.nx for row in self.rows])
        self.assertEqual([17, 33, 65], sorted(self.fields))
        self.assertLess(self.rows[-1].eq1_invariant,
                        self.rows[0].eq1_invariant)
        np.testing.assert_array_equal([0.0, 0.5], self.fields[65].X[0, 0])

    def test_abelian_pure_gauge_is_difference(self):
        ws = lattice.Worldsheet(5)
        dual = geometry_for('abelian_dual').dual()
        H = lattice.smooth_gauge(ws, 2, 0.5, 4)
        Ax, Ay = lattice.pure_gauge_dual_field(dual, ws, H)
        np.testing.assert_array_equal(H[:-1] - H[1:], Ax)
        np.testing.assert_array_equal(H[:, :-1] - H[:, 1:], Ay)

    def test_snapshot(self):
        ws = lattice.Worldsheet(17)
        rows = lattice.snapshot_array(ws, self.fields[17].X)
        self.assertEqual((17 * 17, 6), rows.shape)
        np.testing.assert_array_equal([16, 0, 1.0, 0.0], rows[16 * 17, :4])
        np.testing.assert_array_equal(self.fields[17].X[16, 0],
                                      rows[16 * 17, 4:])

    def test_zero_dual_field_keeps_x0(self):
        ws = lattice.Worldsheet(9)
        Ax, Ay = np.zeros((8, 9, 2)), np.zeros((9, 8, 2))
        result = lattice.integrate_group_field(self.geom, ws, Ax, Ay,
                                               [0.3, -0.6])
        np.testing.assert_array_equal(
            np.broadcast_to([0.3, -0.6], (9, 9, 2)), result.X)
        self.assertEqual(0.0, result.cross_max)

    def test_abelian_dual_keeps_x0(self):
        geom = geometry_for('abelian_dual')
        ws = lattice.Worldsheet(9)
        H = lattice.smooth_gauge(ws, 2, 0.5, 3)
        Ax, Ay = lattice.pure_gauge_dual_field(geom.dual(), ws, H)
        self.assertGreater(np.max(np.abs(Ax)), 0.01)
        result = lattice.integrate_group_field(geom, ws, Ax, Ay, [0.3, -0.6])
        np.testing.assert_allclose(
            np.broadcast_to([0.3, -0.6], (9, 9, 2)), result.X, atol=1e-14)

    def test_constant_gauge_is_zero(self):
        ws = lattice.Worldsheet(5)
        H = np.broadcast_to([0.4, -0.7], (5, 5, 2))
        Ax, Ay = lattice.pure_gauge_dual_field(self.geom.dual(), ws, H)
        np.testing.assert_allclose(np.zeros((4, 5, 2)), Ax, atol=1e-13)
        np.testing.assert_allclose(np.zeros((5, 4, 2)), Ay, atol=1e-13)

    def test_dual_representation_gives_same_field(self):
        # [rho_0, rho_1] = beta rho_1 with beta = 1.
        rho = np.array([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 1.0], [0.0, 0.0]]])
        ws = lattice.Worldsheet(9)
        H = lattice.smooth_gauge(ws, 2, 0.5, 0)
        default = lattice.pure_gauge_dual_field(self.geom.dual(), ws, H)
        matrices = lattice.pure_gauge_dual_field(
            self.geom.dual(generators=rho), ws, H)
        for a, b in zip(default, matrices):
            np.testing.assert_allclose(a, b, atol=1e-10)

        _, _, fields = lattice.convergence_study(
            self.geom, (9,), (0.0, 0.5), 0.5, seed=0, dual_generators=rho)
        np.testing.assert_allclose(default[0], fields[9].Ax, atol=1e-10)

    def test_edge_and_plaquette_rows(self):
        ws = lattice.Worldsheet(17)
        X, Ax, Ay = self.fields[17]
        residuals = lattice.eom_residual_invariant(self.geom, ws, X, Ax, Ay)
        edges = lattice.edge_array(Ax, Ay, residuals.eq1_x, residuals.eq1_y)
        self.assertEqual((2 * 16 * 17, 3 + 2 + 2), edges.shape)
        np.testing.assert_array_equal([0, 0, 0], edges[0, :3])
        np.testing.assert_array_equal(Ax[0, 1], edges[1, 3:5])
        np.testing.assert_array_equal(residuals.eq1_x[0, 1], edges[1, 5:])
        first_y = 16 * 17
        np.testing.assert_array_equal([1, 0, 0], edges[first_y, :3])
        np.testing.assert_array_equal(Ay[0, 0], edges[first_y, 3:5])
        np.testing.assert_array_equal(residuals.eq1_y[16, 15],
                                      edges[-1, 5:])

        plaquettes = lattice.plaquette_array(ws, residuals.eq2)
        self.assertEqual((16 * 16, 6), plaquettes.shape)
        np.testing.assert_allclose([1, 2, 1.5 / 16, 2.5 / 16],
                                   plaquettes[18, :4], atol=1e-15)
        np.testing.assert_array_equal(residuals.eq2[1, 2], plaquettes[18, 4:])

    def _probe_fields(self):
        X, Ax, Ay = self.fields[65]
        ws = lattice.Worldsheet(65)
        cx, cy = lattice.to_coordinate_coframe(self.geom, X, Ax, Ay)
        return ws, X, cx, cy

    def test_variation_on_solution_is_quadratic(self):
        ws, X, cx, cy = self._probe_fields()
        Bx = np.zeros_like(cx)
        By = np.zeros_like(cy)
        Bx[..., 0] = 30.0 * ws.hx
        By[..., 1] = 30.0 * ws.hy
        probe = lattice.VariationProbe(lambda y: np.zeros(2), Bx, By,
                                       0.0, 0.1)
        slope, values = lattice.variation_slope(
            lattice.PoissonLieModel(self.geom), ws, X, cx, cy, probe,
            [0.1, 0.05])
        self.assertGreaterEqual(slope, 1.8)

    def test_variation_off_solution_is_linear(self):
        ws = lattice.Worldsheet(17)
        X = (lattice.smooth_gauge(ws, 2, 0.3, 1) +
             np.array([0.0, 0.5]))
        Ax, Ay = np.zeros((16, 17, 2)), np.zeros((17, 16, 2))
        Bx = np.zeros_like(Ax)
        Bx[..., 0] = 10.0 * ws.hx
        probe = lattice.VariationProbe(lambda y: np.zeros(2), Bx,
                                       np.zeros_like(Ay), 0.0, 0.01)
        slope, values = lattice.variation_slope(
            lattice.PoissonLieModel(self.geom), ws, X, Ax, Ay, probe,
            [0.01, 0.005])
        self.assertAlmostEqual(1.0, slope, delta=0.1)
        self.assertGreater(values[0], 0.0)

    def test_zero_variation(self):
        ws, X, cx, cy = self._probe_fields()
        probe = lattice.VariationProbe(np.sin, np.ones_like(cx),
                                       np.ones_like(cy), 0.0, 0.0)
        self.assertEqual(0.0, lattice.first_variation_probe(
            lattice.PoissonLieModel(self.geom), ws, X, cx, cy, probe))

    def test_probe_bounds(self):
        with self.assertRaises(util.Error):
            lattice.VariationProbe(np.sin, 0, 0, 0.5, 0.0)

    def test_moving_x_alone_with_zero_a(self):
        ws = lattice.Worldsheet(5)
        X = lattice.smooth_gauge(ws, 2, 0.3, 0)
        Ax, Ay = np.zeros((4, 5, 2)), np.zeros((5, 4, 2))
        model = lattice.LinearModel(lie.abelian(2))
        probe = lattice.VariationProbe(lambda y: np.ones(2), Ax, Ay,
                                       0.1, 0.0)
        # A = 0 and B = 0: only X moves, and the action has no X-only term.
        self.assertEqual(0.0, lattice.first_variation_probe(
            model, ws, X, Ax, Ay, probe))
