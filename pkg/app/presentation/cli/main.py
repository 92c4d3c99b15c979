from __future__ import annotations

import argparse
import json
import os
from typing import List, Optional

from app.application.eval_report import format_table
from app.application.suites import POLICIES, suite_names
from app.bootstrap.container import AppContainer, get_container
from app.bootstrap.runtime import init_environment
from app.domain.entities import AppError, EvalRequest
from app.presentation.cli import ui

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

DEPTH_COLUMNS = [
    ("height_mm", "Height", 8),
    ("matched_fraction", "Matched", 9),
    ("mean_abs_error_mm", "Mean err", 10),
    ("max_abs_error_mm", "Max err", 10),
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="app_cli",
        description="Simulated vision-based grasping: evaluation and stereo tools",
    )
    parser.add_argument("--verbose", action="store_true", help="Append events to logs/grasp_events.log")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="Run seeded evaluation episodes")
    ev.add_argument("--config", help="Config JSON (default: data/default_config.json)")
    ev.add_argument("--suite", default="performance", choices=suite_names())
    ev.add_argument("--n", type=int, help="Number of episodes")
    ev.add_argument("--seed", type=int, help="Master seed")
    ev.add_argument("--out", help="Output directory (default: runs/<suite>)")
    ev.add_argument("--no-dr", action="store_true", help="Disable domain randomization")
    ev.add_argument("--stereo", action="store_true", help="Perceive through block-matched stereo depth")
    ev.add_argument("--policy", choices=POLICIES)
    ev.add_argument("--action-file", help="Action file for the external policy")
    ev.add_argument("--replay-dir", help="Replay directory for the replay policy")
    ev.add_argument("--workers", type=int, help="Parallel episode workers")
    ev.add_argument("--pdf", action="store_true", help="Also write report.pdf")

    st = sub.add_parser("stereo", help="Depth map from a rectified 8-bit PGM pair")
    st.add_argument("--left", required=True)
    st.add_argument("--right", required=True)
    st.add_argument("--out", required=True, help="16-bit PGM, pixel value is depth in millimeters")
    st.add_argument("--config")

    dc = sub.add_parser("depth-check", help="Stereo depth accuracy on synthetic planes")
    dc.add_argument("--config")
    dc.add_argument("--seed", type=int, default=0)

    rc = sub.add_parser("replay-check", help="Re-aggregate replays and compare with the streamed report")
    rc.add_argument("--dir", required=True, help="Output directory of a previous eval run")

    sc = sub.add_parser("show-config", help="Print the effective config and its fingerprint")
    sc.add_argument("--config")
    sc.add_argument("--suite", default="performance", choices=suite_names())
    return parser


def _policy_source(parser: argparse.ArgumentParser, args: argparse.Namespace) -> Optional[str]:
    if args.policy == "external":
        if not args.action_file:
            parser.error("--policy external requires --action-file")
        return args.action_file
    if args.policy == "replay":
        if not args.replay_dir:
            parser.error("--policy replay requires --replay-dir")
        return args.replay_dir
    return None


def _run_eval(container: AppContainer, args: argparse.Namespace, source: Optional[str]) -> int:
    if args.n is not None and args.n <= 0:
        ui.print_error("--n must be positive")
        return EXIT_USAGE
    request = EvalRequest(
        out_dir=args.out or os.path.join("runs", args.suite),
        suite=args.suite,
        config_path=args.config,
        n=args.n,
        seed=args.seed,
        no_dr=args.no_dr,
        stereo=args.stereo,
        policy=args.policy,
        policy_source=source,
        workers=args.workers,
        pdf=args.pdf,
    )
    outcome = container.evaluation.run(request)
    ui.print_header(f"Evaluation: {outcome.suite}")
    ui.print_lines(format_table(outcome.summary, outcome.suite))
    ui.print_subheader("Outputs")
    fields = [
        ("CSV", outcome.csv_path),
        ("Table", outcome.table_path),
        ("JSON", outcome.json_path),
        ("Replays", f"{len(outcome.replay_paths)} file(s)"),
    ]
    if outcome.pdf_path:
        fields.append(("PDF", outcome.pdf_path))
    if outcome.session_log:
        fields.append(("Session log", outcome.session_log))
    ui.print_fields(fields)
    return EXIT_OK


def _run_stereo(container: AppContainer, args: argparse.Namespace) -> int:
    result = container.stereo.reconstruct(args.left, args.right, args.out, args.config)
    ui.print_header("Stereo depth")
    ui.print_fields([
        ("Size", f"{result.width}x{result.height}"),
        ("Matched", f"{result.matched_fraction:.4f}"),
        ("Depth", result.depth_path),
    ])
    return EXIT_OK


def _run_depth_check(container: AppContainer, args: argparse.Namespace) -> int:
    rows = container.stereo.depth_check(args.seed, args.config)
    ui.print_header("Depth accuracy")
    distances = sorted({d for row in rows for d in row.pair_errors_mm})
    columns = list(DEPTH_COLUMNS) + [(f"pair_{d:g}", f"Pair {d:g}mm", 11) for d in distances]
    table = []
    for row in rows:
        entry = {
            "height_mm": row.height_mm,
            "matched_fraction": row.matched_fraction,
            "mean_abs_error_mm": row.mean_abs_error_mm,
            "max_abs_error_mm": row.max_abs_error_mm,
        }
        entry.update({f"pair_{d:g}": err for d, err in row.pair_errors_mm.items()})
        table.append(entry)
    ui.print_rows(columns, table)
    return EXIT_OK


def _run_replay_check(container: AppContainer, args: argparse.Namespace) -> int:
    result = container.replay_check.check(args.dir)
    ui.print_header("Replay check")
    ui.print_fields([
        ("Directory", result.directory),
        ("Replays", result.n_replays),
        ("Success rate", result.replayed["success_rate"]),
        ("Score mean", result.replayed["score_mean"]),
    ])
    if result.ok:
        print("  Streaming and replayed metrics agree.")
        return EXIT_OK
    ui.print_subheader("Mismatches")
    ui.print_lines(result.mismatches)
    return EXIT_ERROR


def _run_show_config(container: AppContainer, args: argparse.Namespace) -> int:
    effective = container.configs.effective(args.suite, args.config)
    print(json.dumps(effective.values, indent=2, sort_keys=True))
    print(f"fingerprint: {effective.fingerprint}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        source = _policy_source(parser, args) if args.command == "eval" else None
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    init_environment()
    container = get_container()
    if args.verbose:
        container.state.set_verbose(True)
    if getattr(args, "workers", None) is not None:
        if args.workers < 1:
            ui.print_error("--workers must be at least 1")
            return EXIT_USAGE
        container.state.set_workers(args.workers)

    try:
        if args.command == "eval":
            return _run_eval(container, args, source)
        if args.command == "stereo":
            return _run_stereo(container, args)
        if args.command == "depth-check":
            return _run_depth_check(container, args)
        if args.command == "replay-check":
            return _run_replay_check(container, args)
        return _run_show_config(container, args)
    except AppError as exc:
        ui.print_error(str(exc))
        return EXIT_ERROR
    except OSError as exc:
        ui.print_error(str(exc))
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
