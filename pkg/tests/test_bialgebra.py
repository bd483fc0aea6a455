from __future__ import absolute_import

import unittest

import numpy as np

from plsigma import bialgebra
from plsigma import catalog
from plsigma import lie


def beta_bialgebra(beta=1.0):
    c = lie.structure_constants_from_table(2, [(0, 1, 1, 1.0)])
    f = bialgebra.Cocommutator(
        lie.structure_constants_from_table(2, [(0, 1, 1, beta)]).coeffs)
    return c, f


class DoubleTest(unittest.TestCase):
    def test_blocks(self):
        c, f = beta_bialgebra(2.0)
        C = bialgebra.double_structure_constants(c, f)
        # [T_0, T_1] = T_1
        self.assertEqual(1.0, C[0, 1, 1])
        # [T~^0, T~^1] = 2 T~^1
        self.assertEqual(2.0, C[2, 3, 3])
        # [T_0, T~^1] = f^{1k}_0 T_k - c_{0k}^1 T~^k = -T~^1
        np.testing.assert_array_equal([0, 0, 0, -1], C[0, 3])
        # [T_1, T~^1] = f^{10}_1 T_0 - c_{10}^1 T~^0 = -2 T_0 + T~^0
        np.testing.assert_array_equal([-2, 0, 1, 0], C[1, 3])
        np.testing.assert_array_equal(C, -C.transpose(1, 0, 2))

    def test_form_is_invariant(self):
        for entry in catalog.entries():
            double = catalog.build_geometry(entry.model_config()).double
            self.assertLess(bialgebra.form_invariance_defect(double).value,
                            1e-12)
            np.testing.assert_array_equal(
                np.eye(2 * double.n),
                double.proj_g + double.proj_gdual)

    def test_not_a_cocycle(self):
        # The bracket of so(3) used as its own cocommutator is
        # ad-equivariant, which is never a cocycle.
        so3 = lie.so3()
        self.assertGreater(
            bialgebra.cocycle_defect(so3.coeffs, so3.coeffs).value, 0.5)
        with self.assertRaises(bialgebra.DoubleJacobiFailure) as e:
            bialgebra.build_double(so3.constants, so3.coeffs)
        self.assertEqual(4, len(e.exception.triple))

    def test_cocycles(self):
        for entry in catalog.entries():
            model = entry.model_config()
            geom = catalog.build_geometry(model)
            self.assertLess(
                bialgebra.cocycle_defect(
                    geom.algebra.coeffs,
                    geom.double.cocommutator.coeffs).value,
                1e-12, entry.name)

    def test_swap_roles(self):
        c, f = beta_bialgebra(0.5)
        double = bialgebra.build_double(c, f)
        swapped = bialgebra.swap_roles(double)
        n = double.n
        S = bialgebra.swap_map(n)
        np.testing.assert_array_equal(S.dot(double.bform).dot(S.T),
                                      double.bform)
        perm = np.r_[n:2 * n, 0:n]
        expected = double.total.coeffs[perm][:, perm][:, :, perm]
        np.testing.assert_allclose(expected, swapped.total.coeffs,
                                   atol=1e-15)
        np.testing.assert_array_equal(swapped.base.coeffs, f.coeffs)
        np.testing.assert_array_equal(swapped.cocommutator.coeffs, c.coeffs)


class CoboundaryTest(unittest.TestCase):
    def test_sl2_cocommutator(self):
        delta = bialgebra.coboundary_cocommutator(lie.sl2().coeffs,
                                                  catalog.sl2_a_skew())
        f = delta.coeffs
        # delta(H) = 0
        np.testing.assert_array_equal(np.zeros((3, 3)), f[:, :, 0])
        # delta(E) = E ^ H, delta(F) = F ^ H
        self.assertEqual(-1.0, f[0, 1, 1])
        self.assertEqual(1.0, f[1, 0, 1])
        self.assertEqual(-1.0, f[0, 2, 2])
        self.assertEqual(1.0, f[2, 0, 2])
        self.assertEqual(4, np.count_nonzero(f))

    def test_solve_sl2(self):
        sl2 = lie.sl2()
        a = catalog.sl2_a_skew()
        f = bialgebra.coboundary_cocommutator(sl2.coeffs, a)
        data = bialgebra.solve_r_matrix(sl2.coeffs, f)
        self.assertIsInstance(data, bialgebra.CoboundaryData)
        self.assertLess(data.residual, 1e-12)
        np.testing.assert_allclose(a, data.a_skew, atol=1e-10)
        np.testing.assert_allclose(-a.dot(sl2.killing), data.big_r,
                                   atol=1e-10)

    def test_solve_zero(self):
        data = bialgebra.solve_r_matrix(lie.so3().coeffs, np.zeros((3, 3, 3)))
        self.assertEqual(0.0, data.residual)
        np.testing.assert_array_equal(np.zeros((3, 3)), data.r)

    def test_not_coboundary(self):
        c, f = beta_bialgebra()
        result = bialgebra.solve_r_matrix(c, f)
        self.assertIsInstance(result, bialgebra.NoSolution)
        self.assertGreater(result.residual, 0.1)

    def test_no_big_r_without_killing_inverse(self):
        # Any r on an abelian algebra has zero coboundary.
        data = bialgebra.solve_r_matrix(np.zeros((2, 2, 2)),
                                        np.zeros((2, 2, 2)))
        self.assertIsNone(data.big_r)

    def test_r_bracket_is_transported_dual_bracket(self):
        sl2 = lie.sl2()
        a = catalog.sl2_a_skew()
        f = bialgebra.coboundary_cocommutator(sl2.coeffs, a).coeffs
        big_r = bialgebra.big_r_map(sl2, a)
        K = sl2.killing
        k_inv = lie.killing_inverse(sl2)
        rng = np.random.RandomState(3)
        for _ in range(5):
            x, y = rng.normal(size=(2, 3))
            expected = k_inv.dot(
                np.einsum('ijk,i,j->k', f, K.dot(x), K.dot(y)))
            np.testing.assert_allclose(
                expected, bialgebra.r_bracket(sl2, big_r, x, y), atol=1e-12)
