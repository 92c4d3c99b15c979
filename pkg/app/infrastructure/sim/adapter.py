from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from grasp.config import SimConfig
from grasp.errors import ConfigError, ShapeError, SimError
from grasp.geometry.camera import look_at_camera
from grasp.harness.evaluate import episode_seeds, policy_factory, run_episodes
from grasp.harness.metrics import aggregate
from grasp.stereo.accuracy import depth_check
from grasp.stereo.depth import disparity_to_depth
from grasp.stereo.matcher import match_disparity, matched_fraction

from app.domain.entities import (
    ConfigInvalidError,
    DepthCheckRow,
    EvalSummary,
    ImageIOError,
    SimulationError,
)
from app.domain.ports import SimulatorPort
from app.infrastructure.persistence.images import PgmFrameSink


def build_config(values: Dict[str, Any]) -> SimConfig:
    try:
        return SimConfig.from_dict(values)
    except ConfigError as exc:
        raise ConfigInvalidError(str(exc)) from exc


class SimulatorAdapter(SimulatorPort):
    def resolve(self, base: Dict[str, Any], overrides: Dict[str, Any]) -> Tuple[Dict[str, Any], str]:
        try:
            cfg = SimConfig.from_dict(base).with_overrides(overrides)
        except ConfigError as exc:
            raise ConfigInvalidError(str(exc)) from exc
        return cfg.to_dict(), cfg.fingerprint()

    def run(
        self,
        config: Dict[str, Any],
        n: int,
        *,
        policy: Optional[str] = None,
        policy_source: Optional[str] = None,
        workers: int = 1,
        image_dir: Optional[str] = None,
        log: Optional[Any] = None,
    ) -> List[Any]:
        cfg = build_config(config)
        make_sink = (lambda seed: PgmFrameSink(image_dir, seed)) if image_dir else None
        try:
            make_policy = policy_factory(cfg, policy, policy_source)
            seeds = episode_seeds(cfg.harness.seed, n)
            return run_episodes(cfg, seeds, make_policy, workers, make_sink, log)
        except ConfigError as exc:
            raise ConfigInvalidError(str(exc)) from exc
        except SimError as exc:
            raise SimulationError(str(exc)) from exc
        except OSError as exc:
            raise SimulationError(f"{getattr(exc, 'filename', '') or 'io'}: {exc.strerror or exc}") from exc

    def summarize(self, records: Sequence[Any]) -> EvalSummary:
        try:
            report = aggregate(records)
        except SimError as exc:
            raise SimulationError(str(exc)) from exc
        return EvalSummary(
            fingerprint=report.fingerprint,
            n_episodes=report.n_episodes,
            successes=report.successes,
            success_rate=report.success_rate,
            score_mean=report.score_mean,
            score_std=report.score_std,
            return_mean=report.return_mean,
            length_mean=report.length_mean,
            rows=report.as_rows(),
            episodes=[r.as_row() for r in sorted(records, key=lambda r: r.seed)],
        )

    def depth_check(self, config: Dict[str, Any], seed: int) -> List[DepthCheckRow]:
        cfg = build_config(config)
        cam = look_at_camera(cfg.camera)
        return [
            DepthCheckRow(
                height_mm=r.height_mm,
                matched_fraction=r.matched_fraction,
                mean_abs_error_mm=r.mean_abs_error_mm,
                max_abs_error_mm=r.max_abs_error_mm,
                pair_errors_mm=dict(r.pair_errors_mm),
            )
            for r in depth_check(cam, cfg.stereo, seed)
        ]

    def stereo_depth(self, left: Any, right: Any, config: Dict[str, Any]) -> Tuple[np.ndarray, float]:
        cfg = build_config(config)
        st = cfg.stereo
        cam = look_at_camera(cfg.camera)
        try:
            disparity = match_disparity(
                np.asarray(left), np.asarray(right), st.block, st.search_range, st.uniqueness, st.lr_tolerance
            )
        except ShapeError as exc:
            raise ImageIOError(str(exc)) from exc
        except ValueError as exc:
            raise ConfigInvalidError(str(exc)) from exc
        return disparity_to_depth(disparity, cam, st.min_disparity_px), matched_fraction(disparity)
