"""Line-delimited episode logs::

    #replay version=1 fingerprint=<hex> seed=<int> kind=<str> scale=<float> gamma=<float> h_max=<int>
    step t=0 phase=BEGIN source=idle action=- command=0.0,0.0,0.0,0.0,1.0 reward=-0.001 state=NORMAL system=0.0,1.0,0.0 dsa=sha256:... events=-
    ...
    #end steps=<int> success=<0|1> return=<float>

Floats are written with repr(), so a write/read round trip is lossless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Union

from grasp.control.phases import Phase
from grasp.errors import ReplayFormatError, ReplayVersionError
from grasp.task.fsm import TaskState
from .episode import EpisodeRecord, EpisodeStep

FORMAT_VERSION = 1
HEADER_TAG = "#replay"
FOOTER_TAG = "#end"
STEP_TAG = "step"
STEP_KEYS = ("t", "phase", "source", "action", "command", "reward", "state", "system", "dsa", "events")


def replay_path(directory: Union[str, Path], seed: int) -> Path:
    return Path(directory) / f"episode_{seed}.replay"


def format_replay(record: EpisodeRecord) -> str:
    lines = [
        f"{HEADER_TAG} version={FORMAT_VERSION} fingerprint={record.fingerprint} seed={record.seed} "
        f"kind={record.kind} scale={record.scale!r} gamma={record.gamma!r} h_max={record.h_max}"
    ]
    for s in record.steps:
        fields = {
            "t": str(s.t),
            "phase": s.phase.name,
            "source": s.source,
            "action": "-" if s.action is None else str(s.action),
            "command": ",".join(repr(float(v)) for v in s.command),
            "reward": repr(float(s.reward)),
            "state": s.state.name,
            "system": ",".join(repr(float(v)) for v in s.system),
            "dsa": s.dsa_ref,
            "events": ",".join(s.events) or "-",
        }
        lines.append(STEP_TAG + " " + " ".join(f"{k}={fields[k]}" for k in STEP_KEYS))
    lines.append(
        f"{FOOTER_TAG} steps={record.length} success={int(record.success)} return={record.discounted_return!r}"
    )
    return "\n".join(lines) + "\n"


def write_replay(record: EpisodeRecord, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_replay(record), encoding="utf-8")
    return target


def read_replay(path: Union[str, Path]) -> EpisodeRecord:
    text = Path(path).read_text(encoding="utf-8")
    return parse_replay(text)


def parse_replay(text: str) -> EpisodeRecord:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(HEADER_TAG + " "):
        raise ReplayFormatError(1, "missing replay header")
    header = _fields(lines[0][len(HEADER_TAG) + 1 :], 1)
    version = _convert(header, "version", int, 1)
    if version != FORMAT_VERSION:
        raise ReplayVersionError(version, FORMAT_VERSION)

    steps: List[EpisodeStep] = []
    footer = None
    for line_no, line in enumerate(lines[1:], start=2):
        if footer is not None:
            if line.strip():
                raise ReplayFormatError(line_no, "content after the end marker")
            continue
        if line.startswith(FOOTER_TAG + " "):
            footer = (line_no, _fields(line[len(FOOTER_TAG) + 1 :], line_no))
        elif line.startswith(STEP_TAG + " "):
            steps.append(_parse_step(line[len(STEP_TAG) + 1 :], line_no))
        else:
            raise ReplayFormatError(line_no, f"unexpected line: {line[:40]!r}")
    if footer is None:
        raise ReplayFormatError(len(lines) + 1, "missing end marker (truncated file?)")

    record = EpisodeRecord(
        seed=_convert(header, "seed", int, 1),
        kind=_convert(header, "kind", str, 1),
        scale=_convert(header, "scale", float, 1),
        fingerprint=_convert(header, "fingerprint", str, 1),
        gamma=_convert(header, "gamma", float, 1),
        h_max=_convert(header, "h_max", int, 1),
        steps=tuple(steps),
    )
    footer_line, footer_fields = footer
    if _convert(footer_fields, "steps", int, footer_line) != record.length:
        raise ReplayFormatError(footer_line, "step count does not match the end marker")
    if _convert(footer_fields, "success", int, footer_line) != int(record.success):
        raise ReplayFormatError(footer_line, "success flag does not match the steps")
    if _convert(footer_fields, "return", float, footer_line) != record.discounted_return:
        raise ReplayFormatError(footer_line, "discounted return does not match the rewards")
    return record


def _parse_step(body: str, line_no: int) -> EpisodeStep:
    f = _fields(body, line_no)
    missing = [k for k in STEP_KEYS if k not in f]
    if missing:
        raise ReplayFormatError(line_no, f"missing field(s): {', '.join(missing)}")
    try:
        return EpisodeStep(
            t=int(f["t"]),
            phase=Phase[f["phase"]],
            source=f["source"],
            action=None if f["action"] == "-" else int(f["action"]),
            command=tuple(float(v) for v in f["command"].split(",")),
            reward=float(f["reward"]),
            state=TaskState[f["state"]],
            system=tuple(float(v) for v in f["system"].split(",")),
            dsa_ref=f["dsa"],
            events=() if f["events"] == "-" else tuple(f["events"].split(",")),
        )
    except (KeyError, ValueError) as exc:
        raise ReplayFormatError(line_no, f"bad step field: {exc}") from None


def _fields(body: str, line_no: int) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for token in body.split():
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise ReplayFormatError(line_no, f"expected key=value, got {token!r}")
        out[key] = value
    return out


def _convert(fields: Dict[str, str], key: str, kind, line_no: int):
    if key not in fields:
        raise ReplayFormatError(line_no, f"missing '{key}'")
    try:
        return kind(fields[key])
    except ValueError:
        raise ReplayFormatError(line_no, f"bad value for '{key}': {fields[key]!r}") from None
