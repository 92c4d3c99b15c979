from __future__ import annotations

from pathlib import Path


def project_root() -> Path:
    """
    Locate repository root:
    Walk up until we find a 'data' folder holding the default config.
    """
    current = Path(__file__).resolve()
    for parent in [current] + list(current.parents):
        if (parent / "data" / "default_config.json").exists():
            return parent
    # Fallback to 3 levels up (app/infrastructure/persistence)
    return current.parents[3]


def data_dir() -> Path:
    return project_root() / "data"


def logs_dir() -> Path:
    return project_root() / "logs"


def event_log_path() -> Path:
    return logs_dir() / "grasp_events.log"


def default_config_path() -> Path:
    return data_dir() / "default_config.json"


def ensure_runtime_dirs() -> None:
    logs_dir().mkdir(parents=True, exist_ok=True)
