#!/usr/bin/env python3
"""Cosine laws of the ten generalized triangles and their conformal substitutions."""

import math
import unittest

import numpy as np
import sympy

from bordered_dcs.conformal.dcs import FamilySpec, cosh_length, identify_special_case
from bordered_dcs.errors import DegenerateSide, DomainViolation
from bordered_dcs.geometry.hexagon import boundary_arc_cosh, realize_from_cosh
from bordered_dcs.geometry.trig import (
    GeometryParams,
    TriangleKind,
    cosine_law,
    dcs_params_from_geometry,
    hexagon_side_arc,
)


# (omega range, tau range) used to draw valid parameters per untwisted kind
DRAW_RANGES = {
    TriangleKind.I: ((0.1, 2.0), (0.1, 3.0)),
    TriangleKind.II: ((-2.0, 2.0), (0.0, 3.0)),
    TriangleKind.III: ((0.1, 2.0), (0.0, 3.0)),
    TriangleKind.IV: ((0.1, 3.0), (-2.0, 2.0)),
    TriangleKind.V: ((0.1, math.pi / 2), (0.0, 3.0)),
}


def _draw(kind: TriangleKind, rng: np.random.Generator) -> GeometryParams:
    (w_lo, w_hi), (t_lo, t_hi) = DRAW_RANGES[kind.untwisted]
    wi, wj = (float(x) for x in rng.uniform(w_lo, w_hi, size=2))
    return GeometryParams(wi, wj, float(rng.uniform(t_lo, t_hi)))


class TestCosineLaw(unittest.TestCase):
    def test_kind_three(self):
        p = GeometryParams(math.asinh(1.0), math.asinh(1.0), math.acosh(4.0))
        out = cosine_law(TriangleKind.III, p)
        self.assertAlmostEqual(out.value, 2.0, places=12)
        self.assertFalse(out.degenerate_side)

    def test_kind_nine(self):
        out = cosine_law(TriangleKind.IX, GeometryParams(1.0, 1.0, math.log(2.0)))
        self.assertAlmostEqual(out.value, 5.0, places=12)

    def test_kind_five(self):
        out = cosine_law(TriangleKind.V, GeometryParams(math.pi / 2, math.pi / 2, math.acosh(3.0)))
        self.assertAlmostEqual(out.value, 3.0, places=12)

    def test_degenerate_side_is_flagged_not_raised(self):
        out = cosine_law(TriangleKind.III, GeometryParams(0.5, 0.7, 0.0))
        self.assertTrue(out.degenerate_side)
        self.assertLess(out.value, 1.0)

    def test_domain_violations(self):
        with self.assertRaises(DomainViolation):
            cosine_law(TriangleKind.I, GeometryParams(1.0, 1.0, math.pi))
        with self.assertRaises(DomainViolation):
            cosine_law(TriangleKind.V, GeometryParams(2.0, 1.0, 0.5))
        with self.assertRaises(DomainViolation):
            cosine_law(TriangleKind.VIII, GeometryParams(-1.0, 1.0, 0.5))
        with self.assertRaises(DomainViolation):
            cosine_law(TriangleKind.II, GeometryParams(0.0, 1.0, float("inf")))

    def test_twisted_kinds_share_base_domain(self):
        for kind in TriangleKind:
            self.assertEqual(kind.twisted, kind.untwisted is not kind)


class TestSubstitution(unittest.TestCase):
    def test_examples(self):
        p = dcs_params_from_geometry(TriangleKind.III, GeometryParams(math.asinh(1.0), math.asinh(1.0), math.acosh(4.0)))
        self.assertEqual((p.family, p.alpha), (FamilySpec.A1P, 1))
        self.assertAlmostEqual(p.f_i, 0.0, places=14)
        self.assertAlmostEqual(p.eta, 4.0, places=12)

        p = dcs_params_from_geometry(TriangleKind.IV, GeometryParams(1.0, 1.0, math.log(2.0)))
        self.assertEqual((p.family, p.alpha, p.f_i, p.f_j), (FamilySpec.A1P, 0, 0.0, 0.0))
        self.assertAlmostEqual(p.eta, 4.0, places=12)

        p = dcs_params_from_geometry(TriangleKind.VII, GeometryParams(0.0, 3.0, 0.1))
        self.assertEqual((p.family, p.f_i, p.f_j), (FamilySpec.B2, 0.0, 3.0))
        self.assertAlmostEqual(p.eta, -0.005, places=15)

    def test_table_families(self):
        expected = {
            TriangleKind.I: (FamilySpec.A1N, -1),
            TriangleKind.II: (FamilySpec.A2, 0),
            TriangleKind.III: (FamilySpec.A1P, 1),
            TriangleKind.IV: (FamilySpec.A1P, 0),
            TriangleKind.V: (FamilySpec.A1P, -1),
            TriangleKind.VI: (FamilySpec.B1N, -1),
            TriangleKind.VII: (FamilySpec.B2, 0),
            TriangleKind.VIII: (FamilySpec.B1P, 1),
            TriangleKind.IX: (FamilySpec.B1P, 0),
            TriangleKind.X: (FamilySpec.B1P, -1),
        }
        rng = np.random.default_rng(7)
        for kind, (family, alpha) in expected.items():
            p = dcs_params_from_geometry(kind, _draw(kind, rng))
            self.assertEqual((p.family, p.alpha), (family, alpha), kind)

    def test_cosine_law_matches_family_length(self):
        rng = np.random.default_rng(42)
        for kind in TriangleKind:
            for _ in range(100):
                g = _draw(kind, rng)
                law = cosine_law(kind, g).value
                p = dcs_params_from_geometry(kind, g)
                via_dcs = cosh_length(p.family, p.alpha, p.alpha, p.f_i, p.f_j, p.eta)
                scale = math.exp(abs(g.omega_i) + abs(g.omega_j)) * (1.0 + g.tau * g.tau + math.exp(abs(g.tau)))
                self.assertLessEqual(abs(law - via_dcs), 1e-12 * scale, (kind, g))

    def test_special_case_reductions(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            fi, fj, eta = (float(x) for x in rng.uniform(-1.0, 1.0, size=3))
            e = math.exp(fi + fj)
            # vertex scaling
            self.assertEqual(cosh_length(FamilySpec.A1P, 0, 0, fi, fj, eta), -1.0 + eta * e)
            # alpha = 1 and alpha = -1 (the latter on f < 0)
            root = math.sqrt((1 + math.exp(2 * fi)) * (1 + math.exp(2 * fj)))
            self.assertAlmostEqual(cosh_length(FamilySpec.A1P, 1, 1, fi, fj, eta), -root + eta * e, delta=1e-14 * root)
            gi, gj = -abs(fi) - 0.01, -abs(fj) - 0.01
            root_m = math.sqrt((1 - math.exp(2 * gi)) * (1 - math.exp(2 * gj)))
            self.assertAlmostEqual(
                cosh_length(FamilySpec.A1P, -1, -1, gi, gj, eta), -root_m + eta * math.exp(gi + gj), delta=1e-14
            )
            # A1n and B1n with alpha = -1 on f > 0
            hi, hj = abs(fi) + 0.01, abs(fj) + 0.01
            root_n = math.sqrt((math.exp(2 * hi) - 1) * (math.exp(2 * hj) - 1))
            e_n = eta * math.exp(hi + hj)
            self.assertAlmostEqual(cosh_length(FamilySpec.A1N, -1, -1, hi, hj, eta), root_n + e_n, delta=1e-13 * (root_n + abs(e_n)))
            self.assertAlmostEqual(cosh_length(FamilySpec.B1N, -1, -1, hi, hj, eta), -root_n + e_n, delta=1e-13 * (root_n + abs(e_n)))

        self.assertEqual(identify_special_case(FamilySpec.A1P, [1, 1, 1]), "generalized circle packing of type (-1,-1,-1)")
        self.assertEqual(identify_special_case(FamilySpec.A1P, [0, 0]), "vertex scaling")
        self.assertEqual(identify_special_case(FamilySpec.A1P, [-1, -1]), "partial structure of type (1,1,-1)")
        self.assertEqual(identify_special_case(FamilySpec.A1N, [-1]), "generalized circle packing of type (-1,-1,1)")
        self.assertEqual(identify_special_case(FamilySpec.B1N, [-1]), "twisted structure of type (1,-1,-1)")
        self.assertIsNone(identify_special_case(FamilySpec.A1P, [1, 0]))
        self.assertIsNone(identify_special_case(FamilySpec.A2, cs=[0.0, 0.5]))


class TestHexagonSideArc(unittest.TestCase):
    def test_symmetric(self):
        self.assertAlmostEqual(hexagon_side_arc(3.0, 3.0, 3.0), 1.5, places=14)
        expected = float(sympy.N(sympy.acosh(sympy.Rational(3, 2)), 40))
        self.assertAlmostEqual(math.acosh(hexagon_side_arc(3.0, 3.0, 3.0)), expected, places=12)

    def test_isosceles_example(self):
        self.assertAlmostEqual(hexagon_side_arc(3.0, 3.0, 2.0), 1.375, places=14)

    def test_monotone_in_opposite_side(self):
        values = [hexagon_side_arc(2.0, 2.5, c) for c in (1.5, 2.0, 4.0, 10.0, 100.0)]
        self.assertEqual(values, sorted(values))
        self.assertEqual(len(set(values)), len(values))

    def test_degenerate(self):
        with self.assertRaises(DegenerateSide):
            hexagon_side_arc(1.0, 3.0, 3.0)

    def test_matches_lorentz_embedding(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            c_ij, c_jk, c_ki = (float(x) for x in rng.uniform(1.2, 8.0, size=3))
            embedded = boundary_arc_cosh(realize_from_cosh(c_ij, c_jk, c_ki))
            closed = (
                hexagon_side_arc(c_ij, c_ki, c_jk),
                hexagon_side_arc(c_jk, c_ij, c_ki),
                hexagon_side_arc(c_ki, c_jk, c_ij),
            )
            for a, b in zip(embedded, closed):
                self.assertLessEqual(abs(a - b), 1e-10 * max(1.0, b))


if __name__ == "__main__":
    unittest.main()
