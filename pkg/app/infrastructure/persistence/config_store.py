from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional

from app.domain.entities import ConfigInvalidError
from app.domain.ports import ConfigRepository
from .data_paths import default_config_path


CONFIG_PATH = default_config_path()


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """The packaged file may be absent (built-in defaults apply); an explicit path may not."""
    target = Path(path) if path else CONFIG_PATH
    try:
        data = json.loads(target.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        if path:
            raise ConfigInvalidError(f"{target}: config file not found") from exc
        return {}
    except json.JSONDecodeError as exc:
        raise ConfigInvalidError(f"{target}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigInvalidError(f"{target}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigInvalidError(f"{target}: config root must be an object")
    return data


def save_config(config: Dict[str, Any], path: Optional[Path] = None) -> Path:
    target = Path(path) if path else CONFIG_PATH
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(
        json.dumps(config, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return target


class ConfigRepositoryImpl(ConfigRepository):
    def default_path(self) -> str:
        return str(CONFIG_PATH)

    def load(self, path: Optional[str] = None) -> Dict[str, Any]:
        return load_config(Path(path) if path else None)
