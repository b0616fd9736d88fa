#!/usr/bin/env python3
"""Unit tests for the Lorentz 3-space primitives."""

import math
import unittest

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bordered_dcs.errors import DegeneratePair, LightLikeInput, ProjectionAtInfinity, ZeroVector
from bordered_dcs.geometry.lorentz import (
    CausalTag,
    LorentzVector,
    PairingKind,
    causal_class,
    det3,
    klein_project,
    lorentz_cross,
    lorentz_normalize,
    minkowski_inner,
    pairing_interpret,
)


ARCCOSH_3 = float(sympy.N(sympy.acosh(3), 40))

coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
vectors = st.builds(LorentzVector, coord, coord, coord)


def _close(a: LorentzVector, b: LorentzVector, tol: float = 1e-12) -> bool:
    return bool(np.allclose(a.as_array(), b.as_array(), atol=tol, rtol=0))


class TestInnerAndCross(unittest.TestCase):
    def test_inner_products(self):
        self.assertEqual(minkowski_inner(LorentzVector(1, 0, 0), LorentzVector(1, 0, 0)), 1.0)
        self.assertEqual(minkowski_inner(LorentzVector(0, 0, 1), LorentzVector(0, 0, 1)), -1.0)
        self.assertEqual(minkowski_inner(LorentzVector(1, 2, 2), LorentzVector(3, 0, 1)), 1.0)

    def test_cross_of_basis_vectors(self):
        c = lorentz_cross(LorentzVector(1, 0, 0), LorentzVector(0, 1, 0))
        self.assertEqual(c.as_tuple(), (0.0, 0.0, -1.0))
        self.assertEqual(minkowski_inner(c, LorentzVector(0, 0, 1)), 1.0)

    def test_cross_with_itself_is_zero(self):
        x = LorentzVector(1.5, -2.0, 0.25)
        self.assertEqual(lorentz_cross(x, x).as_tuple(), (0.0, 0.0, 0.0))

    def test_non_finite_components_rejected(self):
        with self.assertRaises(ValueError):
            LorentzVector(float("nan"), 0.0, 1.0)

    @settings(max_examples=200, deadline=None)
    @given(vectors, vectors, vectors)
    def test_cross_pairs_to_determinant(self, x, y, z):
        scale = max(1.0, x.euclid_norm() * y.euclid_norm() * z.euclid_norm())
        self.assertLessEqual(abs(minkowski_inner(lorentz_cross(x, y), z) - det3(x, y, z)), 1e-12 * scale)

    @settings(max_examples=200, deadline=None)
    @given(vectors, vectors)
    def test_cross_is_antisymmetric(self, x, y):
        scale = max(1.0, x.euclid_norm() * y.euclid_norm())
        self.assertTrue(_close(lorentz_cross(x, y), -lorentz_cross(y, x), 1e-12 * scale))

    @settings(max_examples=200, deadline=None)
    @given(vectors, vectors, vectors)
    def test_triple_product_expansion(self, x, y, z):
        lhs = lorentz_cross(x, lorentz_cross(y, z))
        rhs = z.scale(minkowski_inner(x, y)) - y.scale(minkowski_inner(z, x))
        scale = max(1.0, x.euclid_norm() * y.euclid_norm() * z.euclid_norm())
        self.assertTrue(_close(lhs, rhs, 1e-11 * scale))

    @settings(max_examples=200, deadline=None)
    @given(vectors, vectors, vectors, vectors)
    def test_gram_identity(self, x, y, z, w):
        lhs = minkowski_inner(lorentz_cross(x, y), lorentz_cross(z, w))
        rhs = minkowski_inner(x, w) * minkowski_inner(y, z) - minkowski_inner(x, z) * minkowski_inner(y, w)
        scale = max(1.0, x.euclid_norm() * y.euclid_norm() * z.euclid_norm() * w.euclid_norm())
        self.assertLessEqual(abs(lhs - rhs), 1e-11 * scale)


class TestCausalClass(unittest.TestCase):
    def test_classes(self):
        self.assertEqual(causal_class(LorentzVector(0, 0, 1)).tag, CausalTag.TIME_LIKE)
        self.assertTrue(causal_class(LorentzVector(0, 0, 1)).upper_sheet)
        self.assertFalse(causal_class(LorentzVector(0, 0, -1)).upper_sheet)
        self.assertEqual(causal_class(LorentzVector(1, 0, 0)).tag, CausalTag.SPACE_LIKE)
        self.assertEqual(causal_class(LorentzVector(1, 0, 1)).tag, CausalTag.LIGHT_LIKE)

    def test_zero_vector(self):
        with self.assertRaises(ZeroVector):
            causal_class(LorentzVector(0, 0, 0))

    def test_normalize(self):
        self.assertEqual(lorentz_normalize(LorentzVector(2, 0, 0)).as_tuple(), (1.0, 0.0, 0.0))
        self.assertEqual(lorentz_normalize(LorentzVector(0, 0, -2)).as_tuple(), (0.0, 0.0, 1.0))
        n = lorentz_normalize(LorentzVector(3, 0, 1))
        self.assertTrue(_close(n, LorentzVector(3 / math.sqrt(8), 0, 1 / math.sqrt(8))))

    def test_normalize_light_like(self):
        with self.assertRaises(LightLikeInput):
            lorentz_normalize(LorentzVector(1, 0, 1))


class TestPairing(unittest.TestCase):
    def test_point_point(self):
        out = pairing_interpret(LorentzVector(0, 0, 1), LorentzVector(math.sinh(1), 0, math.cosh(1)))
        self.assertEqual(out.kind, PairingKind.POINT_POINT_DISTANCE)
        self.assertAlmostEqual(out.value, 1.0, places=12)

    def test_point_line(self):
        out = pairing_interpret(LorentzVector(0, 0, 1), LorentzVector(1, 0, 0))
        self.assertEqual(out.kind, PairingKind.POINT_LINE_DISTANCE)
        self.assertAlmostEqual(out.value, 0.0, places=14)

    def test_line_line_distance(self):
        w = LorentzVector(-3, 0, math.sqrt(8))
        out = pairing_interpret(LorentzVector(1, 0, 0), w)
        self.assertEqual(out.kind, PairingKind.LINE_LINE_DISTANCE)
        self.assertAlmostEqual(out.value, ARCCOSH_3, places=12)
        self.assertTrue(out.sign_flag)

    def test_line_line_angle(self):
        out = pairing_interpret(LorentzVector(1, 0, 0), LorentzVector(0, 1, 0))
        self.assertEqual(out.kind, PairingKind.LINE_LINE_ANGLE)
        self.assertAlmostEqual(out.value, math.pi / 2, places=12)

    def test_parallel_inputs(self):
        with self.assertRaises(DegeneratePair):
            pairing_interpret(LorentzVector(1, 0, 0), LorentzVector(2, 0, 0))

    def test_light_like_input(self):
        with self.assertRaises(LightLikeInput):
            pairing_interpret(LorentzVector(1, 0, 1), LorentzVector(0, 0, 1))


class TestKlein(unittest.TestCase):
    def test_projection(self):
        self.assertEqual(klein_project(LorentzVector(0, 0, 1)), (0.0, 0.0))
        self.assertEqual(klein_project(LorentzVector(1, 0, 1)), (1.0, 0.0))
        self.assertEqual(klein_project(LorentzVector(3, 0, 1)), (3.0, 0.0))

    def test_at_infinity(self):
        with self.assertRaises(ProjectionAtInfinity):
            klein_project(LorentzVector(1, 0, 0))

    @settings(max_examples=100, deadline=None)
    @given(vectors, st.floats(min_value=0.1, max_value=10.0))
    def test_scale_invariance(self, x, factor):
        if abs(x.x3) < 1e-3:
            return
        a = klein_project(x)
        b = klein_project(x.scale(factor))
        self.assertAlmostEqual(a[0], b[0], delta=1e-9 * max(1.0, abs(a[0])))
        self.assertAlmostEqual(a[1], b[1], delta=1e-9 * max(1.0, abs(a[1])))


if __name__ == "__main__":
    unittest.main()
