from __future__ import annotations

from pathlib import Path
from typing import Optional

from app.infrastructure.persistence.env import load_dotenv


def init_environment(dotenv_path: Optional[Path] = None) -> None:
    """Load .env before the container reads GRASP_SIM_* variables."""
    load_dotenv(dotenv_path)
