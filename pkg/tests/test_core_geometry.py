from __future__ import annotations

import math
import unittest

import numpy as np
from scipy.spatial.transform import Rotation

from grasp.config import CameraConfig
from grasp.errors import GeometryError
from grasp.geometry import CameraModel, Pose, compose, look_at_camera, orbit_camera, project_point, transform, unproject_pixel
from grasp.geometry.pose import rot_z


def _camera(**kwargs) -> CameraModel:
    values = dict(
        focal_px=1000.0,
        baseline_mm=5.0,
        pixel_scale=0.5,
        rotation=np.eye(3),
        translation_mm=np.array([1.0, 2.0, 3.0]),
    )
    values.update(kwargs)
    return CameraModel(**values)


class PoseTests(unittest.TestCase):
    def test_identity_leaves_points_unchanged(self) -> None:
        pts = np.array([[1.0, 2.0, 3.0], [-4.0, 0.5, 9.0]])
        np.testing.assert_allclose(transform(Pose.identity(), pts), pts)

    def test_inverse_composes_to_identity(self) -> None:
        pose = Pose.from_euler("xyz", [0.3, -0.2, 1.1], [10.0, -5.0, 2.0])
        both = compose(pose, pose.inverse())
        np.testing.assert_allclose(both.rotation, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(both.translation_mm, np.zeros(3), atol=1e-12)

    def test_compose_applies_right_operand_first(self) -> None:
        turn = Pose(rot_z(math.pi / 2), np.zeros(3))
        shift = Pose(np.eye(3), np.array([1.0, 0.0, 0.0]))
        q = transform(compose(turn, shift), np.zeros(3))
        np.testing.assert_allclose(q, [0.0, 1.0, 0.0], atol=1e-12)

    def test_rejects_non_orthonormal_rotation(self) -> None:
        with self.assertRaises(GeometryError):
            Pose(np.diag([1.0, 2.0, 1.0]), np.zeros(3))


class CameraTests(unittest.TestCase):
    def test_unproject_lateral_mapping(self) -> None:
        q = unproject_pixel((10.0, -4.0), 50.0, _camera())
        np.testing.assert_allclose(q, [6.0, 0.0, 53.0])

    def test_unproject_rejects_non_positive_depth(self) -> None:
        with self.assertRaises(GeometryError):
            unproject_pixel((0.0, 0.0), 0.0, _camera())
        with self.assertRaises(GeometryError):
            unproject_pixel((0.0, 0.0), -1.0, _camera())

    def test_project_inverts_unproject(self) -> None:
        cam = look_at_camera(CameraConfig())
        pix = np.array([[12.0, -30.5], [0.0, 0.0], [-101.25, 77.0]])
        depth = np.array([140.0, 150.0, 163.5])
        back_pix, back_depth = project_point(unproject_pixel(pix, depth, cam), cam)
        np.testing.assert_allclose(back_pix, pix, atol=1e-9)
        np.testing.assert_allclose(back_depth, depth, atol=1e-9)

    def test_round_trip_over_random_poses_and_pixels(self) -> None:
        rng = np.random.default_rng(17)
        for i in range(10):
            rot = Rotation.from_euler("xyz", rng.uniform(-math.pi, math.pi, 3)).as_matrix()
            cam = _camera(rotation=rot, translation_mm=rng.uniform(-200.0, 200.0, 3), pixel_scale=0.25)
            pix = rng.uniform(-300.0, 300.0, size=(100, 2))
            depth = rng.uniform(10.0, 500.0, size=100)
            with self.subTest(pose=i):
                back_pix, back_depth = project_point(unproject_pixel(pix, depth, cam), cam)
                np.testing.assert_allclose(back_pix, pix, rtol=0, atol=1e-6)
                np.testing.assert_allclose(back_depth, depth, rtol=0, atol=1e-6)

    def test_project_rejects_points_behind_camera(self) -> None:
        cam = _camera()
        with self.assertRaises(GeometryError):
            project_point([0.0, 0.0, -10.0], cam)

    def test_raster_rounds_half_up(self) -> None:
        cam = _camera(width_px=10, height_px=10)
        np.testing.assert_array_equal(cam.raster([0.5, -0.5]), [6, 5])
        np.testing.assert_array_equal(cam.centered(cam.raster([2.0, -3.0])), [2.0, -3.0])

    def test_invalid_intrinsics_raise(self) -> None:
        with self.assertRaises(GeometryError):
            _camera(focal_px=0.0)
        with self.assertRaises(GeometryError):
            _camera(pixel_scale=-1.0)

    def test_look_at_camera_sees_its_target_at_the_principal_point(self) -> None:
        cfg = CameraConfig()
        cam = look_at_camera(cfg)
        pix, depth = project_point(cfg.look_at_mm, cam)
        np.testing.assert_allclose(pix, [0.0, 0.0], atol=1e-9)
        self.assertAlmostEqual(float(depth), cfg.standoff_mm)

    def test_orbit_keeps_target_on_axis_and_moves_away(self) -> None:
        cfg = CameraConfig()
        cam = look_at_camera(cfg)
        moved = orbit_camera(cam, cfg.look_at_mm, 0.02, -0.03, 0.01, 10.0)
        pix, depth = project_point(cfg.look_at_mm, moved)
        np.testing.assert_allclose(pix, [0.0, 0.0], atol=1e-9)
        self.assertAlmostEqual(float(depth), cfg.standoff_mm + 10.0)


if __name__ == "__main__":
    unittest.main()
