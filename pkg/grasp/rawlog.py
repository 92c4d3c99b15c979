import threading
import time
from pathlib import Path
from typing import Any, Dict, Optional, Union


class EventLogger:
    """Appends timestamped event blocks to a text log; safe to share across worker threads."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def __call__(self, kind: str, message: str, fields: Optional[Dict[str, Any]] = None):
        ts = time.strftime("%Y-%m-%d %H:%M:%S")
        lines = [f"[{ts}] {kind} {message}\n"]
        lines.extend(f"  {key}={value}\n" for key, value in sorted((fields or {}).items()))
        with self._lock:
            with self.path.open("a", encoding="utf-8") as f:
                f.writelines(lines)
