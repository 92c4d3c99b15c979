from __future__ import annotations

import csv
import json
import tempfile
import threading
import unittest
from pathlib import Path

from grasp.logger import MetricsLogger
from grasp.rawlog import EventLogger
from tests.test_core_replay import sample_record


class MetricsLoggerTests(unittest.TestCase):
    def test_csv_session(self) -> None:
        with tempfile.TemporaryDirectory(prefix="metrics_") as tmp_dir:
            logger = MetricsLogger(tmp_dir)
            path = logger.start_session(format="csv", filename="session")
            logger.log_episode(sample_record(1))
            logger.log_episode(sample_record(2, success=False))
            summary = logger.end_session()
            with path.open(encoding="utf-8") as f:
                rows = list(csv.DictReader(f))
        self.assertEqual(path.name, "session.csv")
        self.assertEqual((summary["episode_count"], summary["success_count"]), (2, 1))
        self.assertEqual([row["seed"] for row in rows], ["1", "2"])
        self.assertEqual(rows[1]["final_state"], "FAILED")
        self.assertFalse(logger.is_active)

    def test_json_session(self) -> None:
        with tempfile.TemporaryDirectory(prefix="metrics_") as tmp_dir:
            logger = MetricsLogger(tmp_dir)
            path = logger.start_session(format="json")
            logger.log_episode(sample_record(3))
            logger.end_session()
            data = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(data["session"]["episode_count"], 1)
        self.assertEqual(data["episodes"][0]["kind"], "needle")

    def test_misuse(self) -> None:
        with tempfile.TemporaryDirectory(prefix="metrics_") as tmp_dir:
            logger = MetricsLogger(tmp_dir)
            with self.assertRaises(RuntimeError):
                logger.log_episode(sample_record())
            with self.assertRaises(ValueError):
                logger.start_session(format="xml")
            self.assertEqual(logger.end_session(), {})


class EventLoggerTests(unittest.TestCase):
    def test_blocks_from_threads_do_not_interleave(self) -> None:
        with tempfile.TemporaryDirectory(prefix="events_") as tmp_dir:
            log = EventLogger(Path(tmp_dir) / "logs" / "events.log")
            threads = [
                threading.Thread(target=log, args=("episode", f"seed={i} end", {"b": 2, "a": 1}))
                for i in range(8)
            ]
            for thread in threads:
                thread.start()
            for thread in threads:
                thread.join()
            lines = log.path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(len(lines), 24)
        for i in range(0, 24, 3):
            self.assertIn(" episode seed=", lines[i])
            self.assertEqual(lines[i + 1:i + 3], ["  a=1", "  b=2"])


if __name__ == "__main__":
    unittest.main()
