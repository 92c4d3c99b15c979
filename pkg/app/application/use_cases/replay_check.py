from __future__ import annotations

import os

from app.application.eval_report import compare_summaries
from app.application.use_cases.evaluation import REPLAY_SUBDIR, REPORT_JSON
from app.domain.entities import ReplayCheckResult, ReplayError
from app.domain.ports import ReplayStore, ReportWriter, SimulatorPort


class ReplayCheckService:
    """Re-aggregates persisted replays and compares them with the streamed report."""

    def __init__(self, simulator: SimulatorPort, replays: ReplayStore, reports: ReportWriter) -> None:
        self.simulator = simulator
        self.replays = replays
        self.reports = reports

    def check(self, out_dir: str) -> ReplayCheckResult:
        report = self.reports.read_json(os.path.join(out_dir, REPORT_JSON))
        streaming = report.get("summary")
        if not isinstance(streaming, dict):
            raise ReplayError(f"{os.path.join(out_dir, REPORT_JSON)} has no summary section.")
        records = self.replays.load_all(os.path.join(out_dir, REPLAY_SUBDIR))
        if not records:
            raise ReplayError(f"No replay files found under {out_dir}.")
        replayed = self.simulator.summarize(records).headline()
        mismatches = compare_summaries(streaming, replayed)
        if streaming.get("fingerprint") != replayed["fingerprint"]:
            mismatches.append(
                f"fingerprint: streaming={streaming.get('fingerprint')!r} replayed={replayed['fingerprint']!r}"
            )
        return ReplayCheckResult(
            directory=out_dir,
            n_replays=len(records),
            streaming=streaming,
            replayed=replayed,
            mismatches=mismatches,
        )
