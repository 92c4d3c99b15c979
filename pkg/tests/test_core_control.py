from __future__ import annotations

import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from grasp.config import ControlConfig, SimConfig
from grasp.control import (
    ControlInput,
    ExternalPolicy,
    HybridController,
    Phase,
    PolicyInput,
    RandomPolicy,
    ReplayPolicy,
    ScriptedExpert,
    capture_offset,
    classify_phase,
    distance_metric,
    idle_action,
    pid_action,
    recorded_actions,
    safe_height_correct,
    scale_rl_action,
    scripted_expert,
)
from grasp.errors import GripperLostError, PolicyError, TargetLostError
from grasp.task import N_ACTIONS, DiscreteAction, TaskState
from tests.fakes import block_voxels, perception_from_voxels

TARGET_BLOCK = block_voxels((100, 100, 100), (4, 4, 4))


def _obs(t: int, gripper_corner, target=TARGET_BLOCK, jaw_open: bool = True) -> ControlInput:
    gripper = block_voxels(gripper_corner, (4, 4, 4)) if gripper_corner is not None else []
    return ControlInput(t, perception_from_voxels(gripper, target), jaw_open, TaskState.NORMAL)


class PhaseTests(unittest.TestCase):
    def setUp(self) -> None:
        self.cfg = ControlConfig()

    def test_clutch_phase_before_h_begin(self) -> None:
        self.assertIs(classify_phase(3, (0.5, 0.5, 0.5), (0.1, 0.1, 0.1), self.cfg), Phase.BEGIN)
        self.assertIs(classify_phase(3, None, None, self.cfg), Phase.BEGIN)

    def test_close_centroids_hand_over_to_policy(self) -> None:
        self.assertIs(classify_phase(10, (0.5, 0.5, 0.5), (0.45, 0.45, 0.35), self.cfg), Phase.RL)

    def test_far_centroids_use_pid(self) -> None:
        self.assertIs(classify_phase(10, (0.8, 0.5, 0.5), (0.45, 0.45, 0.35), self.cfg), Phase.PID)

    def test_distance_metric_subtracts_offsets(self) -> None:
        np.testing.assert_allclose(distance_metric((0.5, 0.5, 0.5), (0.45, 0.45, 0.35), (0.0, 0.0, 0.1)),
                                   [0.05, 0.05, 0.05])

    def test_lost_objects(self) -> None:
        with self.assertRaises(TargetLostError):
            classify_phase(10, (0.5, 0.5, 0.5), None, self.cfg)
        with self.assertRaises(GripperLostError):
            classify_phase(10, None, (0.5, 0.5, 0.5), self.cfg)
        with self.assertRaises(TargetLostError):
            classify_phase(10, None, None, self.cfg)


class SubPolicyTests(unittest.TestCase):
    def test_idle_action(self) -> None:
        self.assertEqual(idle_action().values, (0.0, 0.0, 0.0, 0.0, 1.0))

    def test_pid_moves_toward_target_and_clips(self) -> None:
        command = pid_action((0.5, 0.5, 0.5), (0.55, 0.3, 0.51), 10.0)
        np.testing.assert_allclose(command.values, (0.5, -1.0, 0.1, 0.0, 1.0))
        verbatim = pid_action((0.5, 0.5, 0.5), (0.55, 0.3, 0.51), 10.0, verbatim_sign=True)
        np.testing.assert_allclose(verbatim.values, (-0.5, 1.0, -0.1, 0.0, 1.0))

    def test_pid_requires_centroids(self) -> None:
        with self.assertRaises(GripperLostError):
            pid_action(None, (0.5, 0.5, 0.5), 10.0)
        with self.assertRaises(TargetLostError):
            pid_action((0.5, 0.5, 0.5), None, 10.0)

    def test_rl_action_scaling(self) -> None:
        cfg = ControlConfig()
        self.assertEqual(scale_rl_action(DiscreteAction.PLUS_X, True, cfg).values, (0.3, 0.0, 0.0, 0.0, 1.0))
        self.assertEqual(scale_rl_action(DiscreteAction.PLUS_THETA, True, cfg).values, (0.0, 0.0, 0.0, 1.0, 1.0))
        self.assertEqual(scale_rl_action(DiscreteAction.TOGGLE_JAW, True, cfg).values, (0.0, 0.0, 0.0, 0.0, -1.0))

    def test_safe_height(self) -> None:
        self.assertIsNone(safe_height_correct(0.55, 0.5, 0.05, 5.0))
        self.assertIsNone(safe_height_correct(0.8, 0.5, 0.05, 5.0))
        lift = safe_height_correct(0.52, 0.5, 0.05, 5.0, lift_mm=30.0, jaw_open=True)
        self.assertEqual(len(lift), 6)
        self.assertTrue(all(c.values == (0.0, 0.0, 1.0, 0.0, 1.0) for c in lift))
        closed = safe_height_correct(0.52, 0.5, 0.05, 5.0, jaw_open=False)
        self.assertEqual(closed[0].values[4], -1.0)

class PidReachabilityTests(unittest.TestCase):
    def test_pid_hands_over_to_the_policy_within_the_step_bound(self) -> None:
        cfg = SimConfig()
        ctrl = cfg.control
        extent = cfg.scene.workspace_max_mm[0] - cfg.scene.workspace_min_mm[0]
        per_step = cfg.scene.step_mm / extent
        offsets = np.asarray(ctrl.offsets)
        rng = np.random.default_rng(31)
        # saturated steps shrink a gap by per_step; inside k_p's linear band the gap halves
        bound = ctrl.h_begin + math.ceil((0.8 - ctrl.c_dis) / per_step) + 2
        self.assertLessEqual(bound, cfg.task.h_max)
        for trial in range(500):
            target = rng.uniform(0.1, 0.5, 3)
            gripper = rng.uniform(0.1, 0.9, 3)
            gripper[2] = rng.uniform(target[2] + ctrl.z_safe, 0.9)
            t = 0
            while classify_phase(t, gripper, target, ctrl) is not Phase.RL:
                self.assertLess(t, bound, msg=f"trial {trial} still outside RL space")
                if t >= ctrl.h_begin:
                    command = pid_action(gripper, target + offsets, ctrl.k_p)
                    gripper = gripper + per_step * np.asarray(command.values[:3])
                    self.assertGreaterEqual(gripper[2] - target[2], ctrl.z_safe)
                t += 1
            self.assertTrue(np.all(np.abs(distance_metric(gripper, target, offsets)) < ctrl.c_dis))


class ExpertTests(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(0)

    def test_moves_along_largest_gap(self) -> None:
        action = scripted_expert((0.58, 0.51, 0.52), (0.5, 0.5, 0.5), Phase.RL, self.rng)
        self.assertIs(action, DiscreteAction.MINUS_X)
        action = scripted_expert((0.5, 0.5, 0.5), (0.5, 0.5, 0.6), Phase.PID, self.rng)
        self.assertIs(action, DiscreteAction.PLUS_Z)

    def test_toggles_when_aligned(self) -> None:
        action = scripted_expert((0.505, 0.495, 0.5), (0.5, 0.5, 0.5), Phase.RL, self.rng)
        self.assertIs(action, DiscreteAction.TOGGLE_JAW)

    def test_ties_break_between_tied_axes(self) -> None:
        seen = {scripted_expert((0.6, 0.6, 0.5), (0.5, 0.5, 0.5), Phase.RL, self.rng) for _ in range(40)}
        self.assertEqual(seen, {DiscreteAction.MINUS_X, DiscreteAction.MINUS_Y})

    def test_no_action_in_clutch(self) -> None:
        with self.assertRaises(PolicyError):
            scripted_expert((0.6, 0.5, 0.5), (0.5, 0.5, 0.5), Phase.BEGIN, self.rng)

    def test_capture_offset_is_small_and_finite(self) -> None:
        offset = capture_offset(SimConfig(), 0.0)
        self.assertEqual(offset.shape, (3,))
        self.assertTrue(np.all(np.isfinite(offset)))
        self.assertLess(float(np.max(np.abs(offset))), 0.2)

    def test_expert_reopens_closed_jaw_and_needs_perception(self) -> None:
        expert = ScriptedExpert(SimConfig())
        obs = _obs(10, (100, 100, 120), jaw_open=False)
        policy_obs = PolicyInput(10, Phase.RL, None, None, False, obs.perception, 0.0)
        self.assertEqual(expert.act(policy_obs, self.rng), int(DiscreteAction.TOGGLE_JAW))
        with self.assertRaises(PolicyError):
            expert.act(PolicyInput(10, Phase.RL, None, None, True, None, 0.0), self.rng)


class PolicyTests(unittest.TestCase):
    def test_random_policy_range(self) -> None:
        rng = np.random.default_rng(1)
        actions = {RandomPolicy().act(None, rng) for _ in range(200)}
        self.assertTrue(actions <= set(range(N_ACTIONS)))
        self.assertGreater(len(actions), 5)

    def test_replay_policy_plays_back_and_rewinds(self) -> None:
        rng = np.random.default_rng(0)
        policy = ReplayPolicy([4, 8])
        self.assertEqual([policy.act(None, rng), policy.act(None, rng)], [4, 8])
        with self.assertRaises(PolicyError):
            policy.act(None, rng)
        policy.reset()
        self.assertEqual(policy.act(None, rng), 4)

    def test_replay_policy_rejects_out_of_range(self) -> None:
        with self.assertRaises(PolicyError):
            ReplayPolicy([1, 9])

    def test_external_policy_reads_action_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "actions.txt"
            path.write_text("# approach\n0\n\n5  # down\n8\n", encoding="utf-8")
            policy = ExternalPolicy(path)
            rng = np.random.default_rng(0)
            self.assertEqual([policy.act(None, rng) for _ in range(3)], [0, 5, 8])

            path.write_text("0\nup\n", encoding="utf-8")
            with self.assertRaises(PolicyError):
                ExternalPolicy(path)
        with self.assertRaises(PolicyError):
            ExternalPolicy(Path(tmp) / "missing.txt")

    def test_recorded_actions_skip_controller_steps(self) -> None:
        class Step:
            def __init__(self, action):
                self.action = action

        self.assertEqual(recorded_actions([Step(None), Step(3), Step(None), Step(8)]), [3, 8])


class HybridControllerTests(unittest.TestCase):
    def setUp(self) -> None:
        self.controller = HybridController(SimConfig())
        self.rng = np.random.default_rng(0)

    def test_clutch_is_idle(self) -> None:
        step = self.controller.step(_obs(2, (20, 20, 150)), ReplayPolicy([]), self.rng)
        self.assertIs(step.phase, Phase.BEGIN)
        self.assertEqual(step.source, "idle")
        self.assertTrue(step.command.is_idle)
        self.assertIsNone(step.action)
        self.assertEqual(step.system.as_tuple(), (0.0, 1.0, 0.0))
        self.assertEqual(step.dsa.layers.shape, (64, 64, 3))

    def test_far_gripper_uses_pid(self) -> None:
        step = self.controller.step(_obs(10, (20, 20, 150)), ReplayPolicy([]), self.rng)
        self.assertIs(step.phase, Phase.PID)
        self.assertEqual(step.source, "pid")
        self.assertGreater(step.command.values[0], 0.0)
        self.assertGreater(step.command.values[1], 0.0)

    def test_close_gripper_consults_policy(self) -> None:
        step = self.controller.step(_obs(10, (100, 100, 120)), ReplayPolicy([0]), self.rng)
        self.assertIs(step.phase, Phase.RL)
        self.assertEqual(step.source, "policy")
        self.assertEqual(step.action, 0)
        self.assertEqual(step.command.values, (0.3, 0.0, 0.0, 0.0, 1.0))
        self.assertEqual(step.system.as_tuple(), (0.0, 1.0, 1.0))

    def test_lost_target_idles_and_reports(self) -> None:
        step = self.controller.step(_obs(10, (20, 20, 150), target=[]), ReplayPolicy([]), self.rng)
        self.assertIs(step.phase, Phase.PID)
        self.assertEqual(step.source, "idle")
        self.assertTrue(step.events.target_lost)
        self.assertFalse(step.events.gripper_lost)

    def test_lost_gripper_idles_and_reports(self) -> None:
        step = self.controller.step(_obs(10, None), ReplayPolicy([]), self.rng)
        self.assertTrue(step.events.gripper_lost)
        self.assertTrue(step.command.is_idle)

    def test_low_gripper_queues_a_lift(self) -> None:
        step = self.controller.step(_obs(10, (20, 20, 100)), ReplayPolicy([]), self.rng)
        self.assertEqual(step.source, "safe_lift")
        self.assertTrue(step.events.below_safe_height)
        self.assertEqual(step.command.values, (0.0, 0.0, 1.0, 0.0, 1.0))
        self.assertEqual(self.controller.lift_pending, 5)
        nxt = self.controller.step(_obs(11, (20, 20, 100)), ReplayPolicy([]), self.rng)
        self.assertEqual(nxt.source, "safe_lift")
        self.assertFalse(nxt.events.below_safe_height)
        self.controller.reset()
        self.assertEqual(self.controller.lift_pending, 0)


if __name__ == "__main__":
    unittest.main()
