from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from app.infrastructure.persistence.data_paths import project_root

CONFIG_ENV = "GRASP_SIM_CONFIG"
WORKERS_ENV = "GRASP_SIM_WORKERS"
VERBOSE_ENV = "GRASP_SIM_VERBOSE"


def load_dotenv(path: Optional[Path] = None) -> None:
    target = path or _default_dotenv_path()
    if not target.exists():
        return

    for line in target.read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#") or "=" not in stripped:
            continue
        key, value = (part.strip() for part in stripped.split("=", 1))
        if not key:
            continue
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
            value = value[1:-1]
        os.environ.setdefault(key, value)


def env_config_path() -> Optional[str]:
    value = os.environ.get(CONFIG_ENV, "").strip()
    return value or None


def env_workers() -> Optional[int]:
    value = os.environ.get(WORKERS_ENV, "").strip()
    try:
        workers = int(value)
    except ValueError:
        return None
    return workers if workers >= 1 else None


def env_verbose() -> bool:
    return os.environ.get(VERBOSE_ENV, "").strip().lower() in ("1", "true", "yes", "on")


def _default_dotenv_path() -> Path:
    return project_root() / ".env"
