from __future__ import annotations

import math
import unittest

import numpy as np

from grasp.config import CameraConfig, PerceptionConfig, SceneConfig
from grasp.errors import ShapeError
from grasp.geometry.camera import look_at_camera, unproject_pixel
from grasp.perception import GridSpec, centroids, depth_to_points, filter_voxels, ortho_project, perceive, voxelize
from grasp.render import render_depth_and_masks
from grasp.scene import Workspace
from tests.fakes import block_voxels, make_scene
from tests.test_core_render import small_camera


def _grid(n: int = 200) -> GridSpec:
    return GridSpec.from_workspace(Workspace.from_config(SceneConfig()), n)


class VoxelizeTests(unittest.TestCase):
    def test_bounds_map_to_first_and_last_voxel(self) -> None:
        grid = _grid()
        vox = voxelize(np.array([grid.min_mm, grid.max_mm]), grid)
        np.testing.assert_array_equal(vox.indices, [[0, 0, 0], [199, 199, 199]])
        self.assertEqual(vox.dropped, 0)

    def test_points_outside_are_dropped(self) -> None:
        grid = _grid()
        vox = voxelize(np.array([[0.0, 0.0, 50.0], [0.1, 0.1, 50.1], [0.0, 0.0, 150.0]]), grid)
        self.assertEqual(len(vox), 1)
        self.assertEqual(vox.dropped, 1)

    def test_empty_cloud(self) -> None:
        vox = voxelize(np.empty((0, 3)), _grid())
        self.assertEqual(vox.indices.shape, (0, 3))

    def test_inflation_splits_across_sides(self) -> None:
        lo, hi = _grid().inflated(0.1)
        np.testing.assert_allclose(lo, [-55.0, -55.0, -5.0])
        np.testing.assert_allclose(hi, [55.0, 55.0, 105.0])


class FilterAndCentroidTests(unittest.TestCase):
    def test_cube_survives_neighbour_filter(self) -> None:
        cube = block_voxels((10, 10, 10), (3, 3, 3))
        self.assertEqual(len(filter_voxels(cube, 2.0, 10)), 27)
        self.assertEqual(len(filter_voxels(cube, 2.0, 11)), 19)

    def test_isolated_voxel_is_removed(self) -> None:
        cube = block_voxels((10, 10, 10), (3, 3, 3))
        noisy = np.vstack([cube, [[100, 100, 100]]])
        kept = filter_voxels(noisy, 2.0, 2)
        self.assertEqual(len(kept), 27)
        self.assertNotIn([100, 100, 100], kept.tolist())

    def test_filter_rejects_non_positive_radius(self) -> None:
        with self.assertRaises(ValueError):
            filter_voxels(block_voxels((0, 0, 0), (2, 2, 2)), 0.0, 1)

    def test_centroids(self) -> None:
        np.testing.assert_allclose(centroids(np.array([[10, 20, 30]]), 200), [0.05, 0.1, 0.15])
        np.testing.assert_allclose(centroids(np.array([[0, 0, 0], [198, 198, 198]]), 200), [0.495] * 3)
        self.assertIsNone(centroids(np.empty((0, 3)), 200))


def _brute_voxelize(points: np.ndarray, grid: GridSpec) -> set:
    cells = set()
    for p in points:
        if not all(grid.min_mm[i] <= p[i] <= grid.max_mm[i] for i in range(3)):
            continue
        cells.add(tuple(
            min(grid.n - 1, math.floor(grid.n * (p[i] - grid.min_mm[i]) / (grid.max_mm[i] - grid.min_mm[i])))
            for i in range(3)
        ))
    return cells


def _brute_filter(indices: np.ndarray, radius: float, min_neighbors: int) -> np.ndarray:
    keep = []
    for a in indices:
        others = sum(1 for b in indices if 0 < sum((int(u) - int(v)) ** 2 for u, v in zip(a, b)) <= radius ** 2)
        keep.append(others >= min_neighbors)
    return indices[np.array(keep, dtype=bool)]


class BruteForceAgreementTests(unittest.TestCase):
    def test_voxelize_matches_per_point_binning(self) -> None:
        rng = np.random.default_rng(4)
        for n in (7, 50, 200):
            grid = _grid(n)
            lo, hi = grid.inflated(0.2)
            pts = np.vstack([rng.uniform(lo, hi, size=(400, 3)), [grid.min_mm, grid.max_mm]])
            with self.subTest(n=n):
                vox = voxelize(pts, grid)
                self.assertEqual({tuple(v) for v in vox.indices.tolist()}, _brute_voxelize(pts, grid))
                self.assertEqual(len(vox), len(_brute_voxelize(pts, grid)))
                inside = sum(all(grid.min_mm[i] <= p[i] <= grid.max_mm[i] for i in range(3)) for p in pts)
                self.assertEqual(vox.dropped, len(pts) - inside)

    def test_filter_matches_pairwise_counts(self) -> None:
        rng = np.random.default_rng(6)
        cloud = np.unique(rng.integers(0, 12, size=(150, 3)), axis=0)
        for radius in (1.0, 1.5, 2.0, 3.0):
            for min_neighbors in (0, 1, 3, 6):
                with self.subTest(radius=radius, min_neighbors=min_neighbors):
                    np.testing.assert_array_equal(
                        filter_voxels(cloud, radius, min_neighbors),
                        _brute_filter(cloud, radius, min_neighbors),
                    )

    def test_centroid_is_the_arithmetic_mean_over_n(self) -> None:
        rng = np.random.default_rng(9)
        for size in (1, 2, 17, 300):
            cloud = rng.integers(0, 200, size=(size, 3))
            expected = [sum(int(v[i]) for v in cloud) / size / 200 for i in range(3)]
            with self.subTest(size=size):
                np.testing.assert_allclose(centroids(cloud, 200), expected, rtol=1e-12, atol=0)


class OrthoProjectionTests(unittest.TestCase):
    def test_lowest_voxel_per_column(self) -> None:
        ortho = ortho_project(np.array([[5, 5, 10], [5, 5, 3]]), 200)
        self.assertEqual(ortho.depth[5, 5], 4)
        self.assertEqual(ortho.z_index()[5, 5], 3)
        self.assertTrue(ortho.mask[5, 5])
        self.assertEqual(int(ortho.mask.sum()), 1)
        self.assertEqual(ortho.z_index()[0, 0], -1)

    def test_top_surface_variant(self) -> None:
        ortho = ortho_project(np.array([[5, 5, 10], [5, 5, 3]]), 200, top_surface=True)
        self.assertEqual(ortho.depth[5, 5], 11)

    def test_empty_projection(self) -> None:
        ortho = ortho_project(np.empty((0, 3)), 50)
        self.assertEqual(ortho.n, 50)
        self.assertFalse(ortho.mask.any())

    def test_translation_in_x_and_y_shifts_the_image(self) -> None:
        rng = np.random.default_rng(12)
        for top_surface in (False, True):
            for trial in range(5):
                vox = np.column_stack([rng.integers(10, 40, size=(60, 2)), rng.integers(0, 40, size=60)])
                kx, ky = (int(k) for k in rng.integers(-10, 11, size=2))
                base = ortho_project(vox, 64, top_surface)
                moved = ortho_project(vox + [kx, ky, 0], 64, top_surface)
                with self.subTest(top_surface=top_surface, trial=trial):
                    np.testing.assert_array_equal(moved.depth, np.roll(base.depth, (kx, ky), axis=(0, 1)))
                    np.testing.assert_array_equal(moved.mask, np.roll(base.mask, (kx, ky), axis=(0, 1)))

    def test_translation_in_z_offsets_the_depth(self) -> None:
        rng = np.random.default_rng(13)
        for top_surface in (False, True):
            vox = rng.integers(0, 40, size=(80, 3))
            k = int(rng.integers(1, 20))
            base = ortho_project(vox, 64, top_surface)
            moved = ortho_project(vox + [0, 0, k], 64, top_surface)
            with self.subTest(top_surface=top_surface):
                np.testing.assert_array_equal(moved.mask, base.mask)
                np.testing.assert_array_equal(moved.depth[base.mask], base.depth[base.mask] + k)
                self.assertFalse(moved.depth[~base.mask].any())


class DepthToPointsTests(unittest.TestCase):
    def test_masked_pixels_are_unprojected(self) -> None:
        cam = small_camera()
        depth = np.zeros((80, 200))
        mask = np.zeros((80, 200), dtype=bool)
        depth[40, 104] = 50.0
        mask[40, 104] = True
        depth[0, 0] = 70.0
        segment = depth_to_points(depth, mask, cam, object_id=2)
        self.assertEqual(segment.object_id, 2)
        np.testing.assert_allclose(segment.points, [unproject_pixel((4.0, 0.0), 50.0, cam)])

    def test_points_outside_inflated_workspace_are_discarded(self) -> None:
        cam = small_camera()
        depth = np.full((80, 200), 300.0)
        mask = np.ones((80, 200), dtype=bool)
        self.assertEqual(len(depth_to_points(depth, mask, cam, grid=_grid())), 0)

    def test_misaligned_mask_raises(self) -> None:
        with self.assertRaises(ShapeError):
            depth_to_points(np.zeros((4, 4)), np.zeros((4, 5), dtype=bool), small_camera())


class PerceivePipelineTests(unittest.TestCase):
    def test_rendered_scene_yields_both_objects(self) -> None:
        cam = look_at_camera(CameraConfig())
        scene = make_scene((-20.0, 10.0, 70.0), target_mm=(15.0, -10.0, 20.0))
        depth, masks = render_depth_and_masks(scene, cam)
        perception = perceive(depth, masks, cam, scene.workspace, PerceptionConfig())
        self.assertEqual(perception.n, 200)
        self.assertTrue(perception.gripper.present)
        self.assertTrue(perception.target.present)
        expected = scene.workspace.normalize([15.0, -10.0, 20.0])
        np.testing.assert_allclose(perception.target.centroid[:2], expected[:2], atol=0.05)
        self.assertLess(perception.target.centroid[2], perception.gripper.centroid[2])

    def test_empty_masks_give_absent_objects(self) -> None:
        cam = look_at_camera(CameraConfig())
        scene = make_scene()
        depth, masks = render_depth_and_masks(scene, cam)
        masks = type(masks)(np.zeros_like(masks.gripper), np.zeros_like(masks.target))
        perception = perceive(depth, masks, cam, scene.workspace, PerceptionConfig())
        self.assertFalse(perception.gripper.present)
        self.assertFalse(perception.target.present)


if __name__ == "__main__":
    unittest.main()
