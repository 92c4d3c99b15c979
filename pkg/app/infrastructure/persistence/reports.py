from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, List

from app.domain.entities import ReplayError
from app.domain.ports import ReportWriter

CSV_FIELDS = [
    "group",
    "n",
    "successes",
    "success_rate",
    "score_mean",
    "score_std",
    "return_mean",
    "length_mean",
]


def _prepare(path: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


def _csv_value(value: Any) -> Any:
    return repr(value) if isinstance(value, float) else value


def write_csv(rows: List[Dict[str, Any]], path: str) -> Path:
    target = _prepare(path)
    with target.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _csv_value(row.get(key, "")) for key in CSV_FIELDS})
    return target


def write_text(lines: List[str], path: str) -> Path:
    target = _prepare(path)
    target.write_text("\n".join(lines).rstrip() + "\n", encoding="utf-8")
    return target


def write_json(payload: Dict[str, Any], path: str) -> Path:
    target = _prepare(path)
    target.write_text(
        json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return target


def read_json(path: str) -> Dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ReplayError(f"{path}: report not found") from exc
    except json.JSONDecodeError as exc:
        raise ReplayError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(data, dict):
        raise ReplayError(f"{path}: report root must be an object")
    return data


class ReportWriterImpl(ReportWriter):
    def write_csv(self, rows: List[Dict[str, Any]], path: str) -> str:
        return str(write_csv(rows, path))

    def write_text(self, lines: List[str], path: str) -> str:
        return str(write_text(lines, path))

    def write_json(self, payload: Dict[str, Any], path: str) -> str:
        return str(write_json(payload, path))

    def read_json(self, path: str) -> Dict[str, Any]:
        return read_json(path)
