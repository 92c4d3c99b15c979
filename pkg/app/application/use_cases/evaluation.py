from __future__ import annotations

import os
from typing import Any, Dict, Optional

from app.application.eval_report import format_table, report_payload
from app.application.state import AppState
from app.application.use_cases.config import ConfigService
from app.domain.entities import EvalOutcome, EvalRequest, SimulationError
from app.domain.ports import (
    MetricsLoggerFactory,
    PdfRendererPort,
    ReplayStore,
    ReportWriter,
    SimulatorPort,
)

REPORT_CSV = "report.csv"
REPORT_TABLE = "report.txt"
REPORT_JSON = "report.json"
REPORT_PDF = "report.pdf"
REPLAY_SUBDIR = "replays"
IMAGE_SUBDIR = "images"


def request_overrides(request: EvalRequest) -> Dict[str, Any]:
    harness: Dict[str, Any] = {}
    overrides: Dict[str, Any] = {}
    if request.seed is not None:
        harness["seed"] = request.seed
    if request.n is not None:
        harness["episodes"] = request.n
    if request.policy:
        harness["policy"] = request.policy
    if harness:
        overrides["harness"] = harness
    if request.no_dr:
        overrides["randomization"] = {"enabled": False}
    if request.stereo:
        overrides["stereo"] = {"enabled": True}
    return overrides


class EvaluationService:
    def __init__(
        self,
        state: AppState,
        configs: ConfigService,
        simulator: SimulatorPort,
        replays: ReplayStore,
        reports: ReportWriter,
        pdf_renderer: Optional[PdfRendererPort] = None,
        metrics_factory: Optional[MetricsLoggerFactory] = None,
    ) -> None:
        self.state = state
        self.configs = configs
        self.simulator = simulator
        self.replays = replays
        self.reports = reports
        self.pdf_renderer = pdf_renderer
        self.metrics_factory = metrics_factory

    def run(self, request: EvalRequest) -> EvalOutcome:
        effective = self.configs.effective(request.suite, request.config_path, request_overrides(request))
        harness = effective.values["harness"]
        n = int(harness["episodes"])
        if n <= 0:
            raise SimulationError("Evaluation needs at least one episode.")
        workers = request.workers or self.state.workers or int(harness["workers"])
        out_dir = request.out_dir
        os.makedirs(out_dir, exist_ok=True)
        image_dir = os.path.join(out_dir, IMAGE_SUBDIR) if harness.get("dump_images") else None

        log = self.state.event_logger()
        if log:
            log("eval", f"suite={request.suite} start", {
                "episodes": n, "fingerprint": effective.fingerprint, "workers": workers,
            })
        records = self.simulator.run(
            effective.values,
            n,
            policy=request.policy,
            policy_source=request.policy_source,
            workers=workers,
            image_dir=image_dir,
            log=log,
        )
        summary = self.simulator.summarize(records)

        replay_paths = self.replays.save_all(records, os.path.join(out_dir, REPLAY_SUBDIR))
        csv_path = self.reports.write_csv(summary.rows, os.path.join(out_dir, REPORT_CSV))
        table_path = self.reports.write_text(format_table(summary, request.suite), os.path.join(out_dir, REPORT_TABLE))
        payload = report_payload(summary, request.suite)
        json_path = self.reports.write_json(payload, os.path.join(out_dir, REPORT_JSON))

        pdf_path = None
        if request.pdf:
            if not self.pdf_renderer:
                raise SimulationError("PDF rendering is not available.")
            pdf_path = os.path.join(out_dir, REPORT_PDF)
            self.pdf_renderer.render(payload, pdf_path)

        session_log = self._log_session(records)
        if log:
            log("eval", f"suite={request.suite} end", {
                "success_rate": summary.success_rate, "score_mean": summary.score_mean,
            })
        return EvalOutcome(
            suite=request.suite,
            summary=summary,
            out_dir=out_dir,
            csv_path=csv_path,
            table_path=table_path,
            json_path=json_path,
            replay_paths=replay_paths,
            pdf_path=pdf_path,
            session_log=session_log,
        )

    def _log_session(self, records) -> Optional[str]:
        if not self.metrics_factory:
            return None
        logger = self.metrics_factory.create()
        logger.start_session(format="csv")
        for record in records:
            logger.log_episode(record)
        summary = logger.end_session()
        return summary.get("file")
