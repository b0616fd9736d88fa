#!/usr/bin/env python3
"""Right-angled hexagon realization, edge and face centers, boundary arcs."""

import math
import unittest

import numpy as np
import sympy

from bordered_dcs.conformal.dcs import split_edge
from bordered_dcs.errors import IncompatibleSplits, NonRealizable, ZeroRatio
from bordered_dcs.geometry.hexagon import (
    SIDES,
    boundary_arcs,
    compatibility_residual,
    edge_center,
    face_center,
    gram_matrix,
    gram_signature,
    perpendicular_matrix,
    perpendicular_matrix_from_centers,
    realize,
    realize_from_cosh,
)
from bordered_dcs.geometry.lorentz import CausalTag, det3, minkowski_inner


ARCCOSH_3 = float(sympy.N(sympy.acosh(3), 40))
ARCCOSH_15 = float(sympy.N(sympy.acosh(sympy.Rational(3, 2)), 40))


def _symmetric():
    return realize_from_cosh(3.0, 3.0, 3.0)


def _random_face(rng):
    cosh = tuple(float(x) for x in rng.uniform(1.5, 4.0, size=3))
    rho_ij, rho_jk = (float(x) for x in rng.uniform(0.3, 3.0, size=2))
    return realize_from_cosh(*cosh), (rho_ij, rho_jk, 1.0 / (rho_ij * rho_jk))


class TestRealization(unittest.TestCase):
    def test_symmetric_gram(self):
        gram = gram_matrix(3.0, 3.0, 3.0)
        np.testing.assert_allclose(gram, [[1, -3, -3], [-3, 1, -3], [-3, -3, 1]])
        np.testing.assert_allclose(sorted(np.linalg.eigvalsh(gram)), [-5.0, 4.0, 4.0], atol=1e-12)
        self.assertEqual(gram_signature(gram), (2, 1))

    def test_symmetric_gauge(self):
        hex_ = realize(ARCCOSH_3, ARCCOSH_3, ARCCOSH_3)
        self.assertEqual(hex_.v_i.as_tuple(), (1.0, 0.0, 0.0))
        np.testing.assert_allclose(hex_.v_j.as_array(), [-3.0, 0.0, math.sqrt(8.0)], atol=1e-12)
        np.testing.assert_allclose(hex_.v_k.as_array(), [-3.0, -math.sqrt(10.0), 3.0 * math.sqrt(2.0)], atol=1e-12)
        self.assertGreater(det3(hex_.v_i, hex_.v_j, hex_.v_k), 0.0)

    def test_gram_reproduction(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            cosh = tuple(float(x) for x in rng.uniform(1.01, 20.0, size=3))
            hex_ = realize_from_cosh(*cosh)
            poles = hex_.poles
            for r in range(3):
                self.assertAlmostEqual(minkowski_inner(poles[r], poles[r]), 1.0, delta=1e-12 * max(cosh) ** 2)
            for (r, s), c in zip(SIDES, cosh):
                self.assertLessEqual(abs(minkowski_inner(poles[r], poles[s]) + c), 1e-12 * max(cosh) ** 2)
            self.assertGreater(det3(*poles), 0.0)

    def test_deterministic(self):
        a = realize_from_cosh(2.0, 3.5, 1.7)
        b = realize_from_cosh(2.0, 3.5, 1.7)
        self.assertEqual([p.as_tuple() for p in a.poles], [p.as_tuple() for p in b.poles])

    def test_non_realizable(self):
        with self.assertRaises(NonRealizable):
            realize_from_cosh(1.0, 3.0, 3.0)
        with self.assertRaises(NonRealizable):
            realize(0.0, 1.0, 1.0)


class TestEdgeCenter(unittest.TestCase):
    def test_symmetric_midpoint(self):
        c, cls = edge_center(_symmetric(), (0, 1), 1.0)
        self.assertEqual(cls.tag, CausalTag.TIME_LIKE)
        np.testing.assert_allclose(c.as_array(), [-1.0, 0.0, math.sqrt(2.0)], atol=1e-12)
        hex_ = _symmetric()
        self.assertAlmostEqual(minkowski_inner(c, hex_.v_i), -1.0, places=12)
        self.assertAlmostEqual(minkowski_inner(c, hex_.v_j), -1.0, places=12)

    def test_virtual_center_is_space_like(self):
        c, cls = edge_center(_symmetric(), (0, 1), -1.0)
        self.assertEqual(cls.tag, CausalTag.SPACE_LIKE)
        self.assertAlmostEqual(minkowski_inner(c, c), 1.0, places=12)
        self.assertLess(minkowski_inner(c, _symmetric().v_i), 0.0)

    def test_reproduces_real_split(self):
        hex_ = _symmetric()
        split = split_edge(3.0, 0.5)
        self.assertTrue(split.real_split)
        c, cls = edge_center(hex_, (0, 1), split.rho)
        self.assertTrue(cls.is_time_like)
        self.assertAlmostEqual(-minkowski_inner(c, hex_.v_i), math.sinh(split.d_ij), delta=1e-10)
        self.assertAlmostEqual(-minkowski_inner(c, hex_.v_j), math.sinh(split.d_ji), delta=1e-10)

    def test_zero_ratio(self):
        with self.assertRaises(ZeroRatio):
            edge_center(_symmetric(), (0, 1), 0.0)


class TestPerpendicularSystem(unittest.TestCase):
    def test_compatibility_residual(self):
        self.assertEqual(compatibility_residual(1.0, 1.0, 1.0), 0.0)
        self.assertAlmostEqual(compatibility_residual(math.e, 2.0 / math.e, 0.5), 0.0, places=15)
        self.assertEqual(compatibility_residual(-1.0, -1.0, -1.0), -2.0)

    def test_symmetric_rows_are_dependent(self):
        m = perpendicular_matrix(_symmetric(), 1.0, 1.0, 1.0)
        np.testing.assert_allclose(m.sum(axis=0), [0.0, 0.0, 0.0], atol=1e-12)
        self.assertAlmostEqual(float(np.linalg.det(m)), 0.0, delta=1e-10)

    def test_perturbed_ratio_breaks_the_common_point(self):
        hex_ = _symmetric()
        det_v = det3(hex_.v_i, hex_.v_j, hex_.v_k)
        det_m = float(np.linalg.det(perpendicular_matrix(hex_, 1.1, 1.0, 1.0)))
        self.assertAlmostEqual(det_m, -0.1 * det_v, delta=1e-10 * abs(det_v))
        with self.assertRaises(IncompatibleSplits):
            face_center(hex_, 1.1, 1.0, 1.0)

    def test_common_point_iff_compatible(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            hex_, rhos = _random_face(rng)
            scale = abs(det3(*hex_.poles))
            self.assertLessEqual(abs(np.linalg.det(perpendicular_matrix(hex_, *rhos))), 1e-10 * scale)
            bad = (rhos[0] * 1.1, rhos[1], rhos[2])
            self.assertGreaterEqual(abs(np.linalg.det(perpendicular_matrix(hex_, *bad))), 1e-3 * scale)

    def test_rows_from_centers_share_kernel(self):
        rng = np.random.default_rng(5)
        hex_, rhos = _random_face(rng)
        report = face_center(hex_, *rhos)
        m = perpendicular_matrix_from_centers(hex_, report.edge_centers)
        fc = report.face_center
        for row in m:
            w = row / np.linalg.norm(row)
            value = w[0] * fc.x1 + w[1] * fc.x2 - w[2] * fc.x3
            self.assertLessEqual(abs(value), 1e-10 * fc.euclid_norm())


class TestFaceCenter(unittest.TestCase):
    def test_symmetric_face(self):
        hex_ = _symmetric()
        report = face_center(hex_, 1.0, 1.0, 1.0)
        self.assertEqual(report.face_class.tag, CausalTag.TIME_LIKE)
        expected = np.array([-5.0, -math.sqrt(10.0), 5.0 * math.sqrt(2.0)]) / math.sqrt(15.0)
        np.testing.assert_allclose(report.face_center.as_array(), expected, atol=1e-12)
        pairings = [minkowski_inner(report.face_center, v) for v in hex_.poles]
        for p in pairings:
            self.assertAlmostEqual(p, pairings[0], places=12)

    def test_perpendicular_and_identity_residuals(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            hex_, rhos = _random_face(rng)
            report = face_center(hex_, *rhos)
            self.assertLessEqual(max(report.perpendicular_residuals), 1e-9)
            self.assertLessEqual(report.orthogonality_residual, 1e-9)
            self.assertLessEqual(report.det_identity_residual, 1e-12)
            for value in report.right_angle_residuals:
                if value is not None:
                    self.assertLessEqual(value, 1e-10)

    def test_center_pairs_negatively_with_pole_sum(self):
        hex_ = realize_from_cosh(30.0, 30.0, 30.0)
        report = face_center(hex_, 1.0, 1.0, 1.0)
        pole_sum = hex_.v_i + hex_.v_j + hex_.v_k
        self.assertLess(minkowski_inner(report.face_center, pole_sum), 0.0)


class TestBoundaryArcs(unittest.TestCase):
    def test_symmetric(self):
        for theta in boundary_arcs(_symmetric()):
            self.assertAlmostEqual(theta, ARCCOSH_15, places=10)
        self.assertAlmostEqual(ARCCOSH_15, 0.9624237, places=7)

    def test_isosceles(self):
        arcs = boundary_arcs(realize_from_cosh(2.5, 4.0, 2.5))
        self.assertAlmostEqual(arcs[1], arcs[2], places=10)

    def test_monotone(self):
        values = [boundary_arcs(realize_from_cosh(2.0, c, 2.5))[0] for c in (1.5, 2.0, 4.0, 10.0)]
        self.assertEqual(values, sorted(values))
        self.assertEqual(len(set(values)), len(values))


if __name__ == "__main__":
    unittest.main()
