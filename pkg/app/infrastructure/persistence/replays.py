from __future__ import annotations

from pathlib import Path
from typing import Any, List, Sequence

from grasp.errors import ReplayFormatError, ReplayVersionError
from grasp.harness.replay import read_replay, replay_path, write_replay

from app.domain.entities import ReplayError
from app.domain.ports import ReplayStore

REPLAY_GLOB = "episode_*.replay"


class ReplayStoreImpl(ReplayStore):
    def save_all(self, records: Sequence[Any], directory: str) -> List[str]:
        paths = []
        for record in sorted(records, key=lambda r: r.seed):
            paths.append(str(write_replay(record, replay_path(directory, record.seed))))
        return paths

    def load_all(self, directory: str) -> List[Any]:
        records = []
        for path in sorted(Path(directory).glob(REPLAY_GLOB)):
            try:
                records.append(read_replay(path))
            except (ReplayFormatError, ReplayVersionError) as exc:
                raise ReplayError(f"{path}: {exc}") from exc
            except OSError as exc:
                raise ReplayError(f"{path}: {exc}") from exc
        return records
