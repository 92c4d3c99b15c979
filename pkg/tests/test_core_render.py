from __future__ import annotations

import unittest

import numpy as np

from grasp.config import CameraConfig
from grasp.geometry.camera import CameraModel, look_at_camera
from grasp.render import (
    GRIPPER,
    TARGET,
    depth_plane,
    disparity_from_depth,
    render_depth_and_masks,
    splat,
    stereo_pair_from_depth,
)
from grasp.render.texture import ValueNoise
from tests.fakes import make_scene


def small_camera(width: int = 200, height: int = 80) -> CameraModel:
    return CameraModel(
        focal_px=1000.0,
        baseline_mm=5.0,
        pixel_scale=0.25,
        rotation=np.eye(3),
        translation_mm=np.zeros(3),
        width_px=width,
        height_px=height,
    )


class SplatTests(unittest.TestCase):
    def test_nearest_point_wins_the_pixel(self) -> None:
        cam = small_camera()
        points = np.array([[0.0, 0.0, 100.0], [0.0, 0.0, 60.0]])
        labels = np.array([TARGET, GRIPPER], dtype=np.uint8)
        depth, owner = splat(points, labels, cam)
        self.assertEqual(depth[40, 100], 60.0)
        self.assertEqual(owner[40, 100], GRIPPER)
        self.assertEqual(int((owner > 0).sum()), 1)

    def test_back_faces_and_points_behind_are_dropped(self) -> None:
        cam = small_camera()
        points = np.array([[0.0, 0.0, 50.0], [1.0, 0.0, -50.0]])
        labels = np.array([TARGET, TARGET], dtype=np.uint8)
        away = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
        depth, owner = splat(points, labels, cam, normals=away)
        self.assertFalse(owner.any())
        self.assertFalse(depth.any())

    def test_empty_input(self) -> None:
        depth, owner = splat(np.empty((0, 3)), np.empty(0, dtype=np.uint8), small_camera())
        self.assertEqual(depth.shape, (80, 200))
        self.assertFalse(owner.any())

    def test_scene_render_has_disjoint_masks(self) -> None:
        cam = look_at_camera(CameraConfig())
        scene = make_scene((0.0, 0.0, 60.0), target_mm=(15.0, -10.0, 20.0))
        depth, masks = render_depth_and_masks(scene, cam)
        self.assertTrue(masks.gripper.any())
        self.assertTrue(masks.target.any())
        self.assertFalse((masks.gripper & masks.target).any())
        self.assertTrue(np.all(depth[masks.union()] > 0))
        self.assertTrue(np.all(depth[~masks.union()] == 0))


class StereoPairTests(unittest.TestCase):
    def test_disparity_from_depth(self) -> None:
        cam = small_camera()
        disparity = disparity_from_depth(np.array([[100.0, 0.0]]), cam)
        np.testing.assert_allclose(disparity, [[50.0, 0.0]])

    def test_right_image_is_left_shifted_by_disparity(self) -> None:
        cam = small_camera()
        left, right = stereo_pair_from_depth(depth_plane(cam, 100.0), cam, texture_seed=4)
        np.testing.assert_array_equal(right[:, :150], left[:, 50:])

    def test_background_stays_black(self) -> None:
        cam = small_camera()
        left, right = stereo_pair_from_depth(np.zeros((80, 200)), cam, texture_seed=4)
        self.assertFalse(left.any())
        self.assertFalse(right.any())

    def test_texture_is_deterministic_per_seed(self) -> None:
        u = np.linspace(0.0, 199.0, 50)
        v = np.full(50, 10.0)
        a = ValueNoise(3, 200, 80).render(u, v)
        b = ValueNoise(3, 200, 80).render(u, v)
        c = ValueNoise(4, 200, 80).render(u, v)
        np.testing.assert_array_equal(a, b)
        self.assertFalse(np.array_equal(a, c))


if __name__ == "__main__":
    unittest.main()
