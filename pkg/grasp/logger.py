"""
Metrics Logger Module
=====================
Writes one row per finished episode of an evaluation session to CSV or JSON.
"""

from __future__ import annotations

import csv
import json
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union


class MetricsLogger:
    """
    Logs evaluation sessions episode by episode.

    Usage:
        logger = MetricsLogger("logs/")
        logger.start_session(format="csv")
        for record in records:
            logger.log_episode(record)
        summary = logger.end_session()
    """

    FIELDS = ["seed", "kind", "scale", "steps", "success", "score", "discounted_return", "final_state"]

    def __init__(self, log_dir: Union[str, Path]):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        self.session_file: Optional[Path] = None
        self.session_format: str = "csv"
        self.session_start: Optional[datetime] = None
        self.episode_count: int = 0
        self.success_count: int = 0
        self._file_handle = None
        self._csv_writer = None
        self._json_rows: List[Dict[str, Any]] = []

    def start_session(self, format: str = "csv", filename: Optional[str] = None) -> Path:
        """
        Start a new logging session.

        Args:
            format: "csv" or "json"
            filename: Optional custom filename (without extension)

        Returns:
            Path to the session file
        """
        self.session_format = format.lower()
        if self.session_format not in ("csv", "json"):
            raise ValueError(f"unsupported session format: {format}")
        self.session_start = datetime.now()
        self.episode_count = 0
        self.success_count = 0
        self._json_rows = []

        base_name = filename or f"eval_{time.strftime('%Y%m%d_%H%M%S')}"
        ext = ".csv" if self.session_format == "csv" else ".json"
        self.session_file = self.log_dir / f"{base_name}{ext}"

        if self.session_format == "csv":
            self._file_handle = open(self.session_file, "w", newline="", encoding="utf-8")
            self._csv_writer = csv.DictWriter(self._file_handle, fieldnames=self.FIELDS, extrasaction="ignore")
            self._csv_writer.writeheader()
        return self.session_file

    def log_episode(self, record) -> None:
        if not self.session_file:
            raise RuntimeError("No active session. Call start_session() first.")
        row = record.as_row()
        if self.session_format == "csv":
            self._csv_writer.writerow(row)
            self._file_handle.flush()
        else:
            self._json_rows.append(row)
        self.episode_count += 1
        self.success_count += int(record.success)

    def end_session(self) -> Dict[str, Any]:
        """End the current session and return its summary."""
        if not self.session_file:
            return {}
        session_end = datetime.now()
        summary = {
            "file": str(self.session_file),
            "format": self.session_format,
            "start_time": self.session_start.strftime("%Y-%m-%d %H:%M:%S") if self.session_start else None,
            "end_time": session_end.strftime("%Y-%m-%d %H:%M:%S"),
            "duration_seconds": (session_end - self.session_start).total_seconds() if self.session_start else 0,
            "episode_count": self.episode_count,
            "success_count": self.success_count,
        }
        if self.session_format == "json":
            with open(self.session_file, "w", encoding="utf-8") as f:
                json.dump({"session": summary, "episodes": self._json_rows}, f, indent=2)
        if self._file_handle:
            self._file_handle.close()
            self._file_handle = None
        self.session_file = None
        self._csv_writer = None
        self._json_rows = []
        return summary

    @property
    def is_active(self) -> bool:
        return self.session_file is not None
