from __future__ import annotations

import sys
from typing import Any, Dict, Iterable, List, Sequence, Tuple


def print_header(title: str) -> None:
    print("\n" + "=" * 60)
    print(f"  {title}")
    print("=" * 60)


def print_subheader(title: str) -> None:
    print("\n" + "-" * 40)
    print(f"  {title}")
    print("-" * 40)


def print_lines(lines: Iterable[str]) -> None:
    for line in lines:
        print(f"  {line}" if line else "")


def print_fields(fields: Sequence[Tuple[str, Any]]) -> None:
    width = max((len(label) for label, _ in fields), default=0)
    for label, value in fields:
        print(f"  {label:<{width}} : {value}")


def print_rows(columns: List[Tuple[str, str, int]], rows: List[Dict[str, Any]]) -> None:
    print("  " + " ".join(f"{title:<{width}}" for _, title, width in columns))
    for row in rows:
        cells = []
        for key, _, width in columns:
            value = row.get(key, "")
            text = f"{value:.4f}" if isinstance(value, float) else str(value)
            cells.append(f"{text:<{width}}")
        print("  " + " ".join(cells))


def print_error(message: str) -> None:
    print(f"Error: {message}", file=sys.stderr)
