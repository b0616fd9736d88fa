#!/usr/bin/env python3
"""SVG rendering of single faces in the Klein disk."""

import tempfile
import unittest
from dataclasses import replace
from pathlib import Path

from bordered_dcs.geometry.hexagon import face_center, realize_from_cosh
from bordered_dcs.geometry.lorentz import CausalClass, CausalTag, LorentzVector
from bordered_dcs.reporting.render import chord, recentering, render_face


def _symmetric():
    hex_ = realize_from_cosh(3.0, 3.0, 3.0)
    return hex_, face_center(hex_, 1.0, 1.0, 1.0)


class TestChord(unittest.TestCase):
    def test_diameter(self):
        (p, q) = chord(LorentzVector(1.0, 0.0, 0.0))
        self.assertEqual(p, (0.0, -1.0))
        self.assertEqual(q, (0.0, 1.0))

    def test_misses_disk(self):
        self.assertIsNone(chord(LorentzVector(1.0, 0.0, 2.0)))
        self.assertIsNone(chord(LorentzVector(0.0, 0.0, 1.0)))

    def test_offset_chord(self):
        (p, q) = chord(LorentzVector(0.0, 2.0, 1.0))
        self.assertAlmostEqual(p[1], 0.5, places=15)
        self.assertAlmostEqual(q[1], 0.5, places=15)
        self.assertAlmostEqual(abs(p[0]), 0.75 ** 0.5, places=15)


class TestRecentering(unittest.TestCase):
    def test_moves_center_to_origin(self):
        _, centers = _symmetric()
        move = recentering(centers.face_center, centers.face_class)
        moved = move(centers.face_center)
        self.assertAlmostEqual(moved.x1, 0.0, places=12)
        self.assertAlmostEqual(moved.x2, 0.0, places=12)
        self.assertAlmostEqual(moved.x3, 1.0, places=12)

    def test_identity_for_space_like(self):
        x = LorentzVector(0.3, 0.1, 1.0)
        move = recentering(LorentzVector(2.0, 0.0, 1.0), CausalClass(CausalTag.SPACE_LIKE))
        self.assertEqual(move(x), x)


class TestRenderFace(unittest.TestCase):
    def test_symmetric_face_center_at_disk_center(self):
        hex_, centers = _symmetric()
        svg = render_face(hex_, centers, title="symmetric")
        self.assertIn('id="center-ijk" class="face-center time-like" cx="500.000000" cy="500.000000"', svg)
        self.assertIn("<title>symmetric</title>", svg)
        for name in ("polar-i", "polar-j", "polar-k", "edge-ij", "edge-jk", "edge-ki", "perpendicular-ij", "center-ki"):
            self.assertIn(f'id="{name}"', svg)
        self.assertNotIn("misses the disk", svg)

    def test_gauge_without_centers(self):
        hex_, _ = _symmetric()
        svg = render_face(hex_)
        self.assertIn('id="polar-i" class="polar" x1="500.000000" y1="1000.000000" x2="500.000000" y2="0.000000"', svg)
        self.assertNotIn("center-ijk", svg)

    def test_byte_identical(self):
        hex_, centers = _symmetric()
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "figs" / "face.svg"
            text = render_face(hex_, centers, out)
            self.assertEqual(out.read_text(encoding="utf-8"), text)
        self.assertEqual(render_face(hex_, centers), text)

    def test_space_like_center_drawn_as_rect(self):
        hex_, centers = _symmetric()
        outside = replace(
            centers,
            face_center=LorentzVector(2.0, 0.0, 1.0),
            face_class=CausalClass(CausalTag.SPACE_LIKE),
        )
        svg = render_face(hex_, outside)
        self.assertIn(
            '<rect id="center-ijk" class="face-center space-like" x="1490.000000" y="490.000000" '
            'width="20.000000" height="20.000000"/>',
            svg,
        )
        self.assertIn('overflow="visible"', svg)


if __name__ == "__main__":
    unittest.main()
