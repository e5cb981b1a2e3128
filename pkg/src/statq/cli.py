"""Command-line surface: schedule generation, verification, embedding,
transcript checking and game simulation.

Every invocation emits one JSON document.  Exit codes: 0 success, 1 negative
result (counterexample found, string not embeddable, transcript violation),
2 usage or guard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .games import (
    ADVERSARIES,
    GameParams,
    KeyPrefixH,
    advantage_report,
    build_adversary,
)
from .interposer import QueryTranscript, check_transcript
from .schedule import (
    Characteristic,
    build_universal_schedule,
    schedule_from_json,
    schedule_to_dict,
)
from .verify import GuardLimits, GuardViolation, find_counterexample

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _parse_budgets(text: str) -> Characteristic:
    try:
        counts = [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"budgets must be comma-separated integers, got {text!r}")
    return Characteristic(counts)


def _emit(document: dict, out: str | None) -> None:
    text = json.dumps(document, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_schedule_gen(args: argparse.Namespace) -> int:
    schedule = build_universal_schedule(_parse_budgets(args.q))
    _emit(schedule_to_dict(schedule), args.out)
    return EXIT_OK


def _cmd_schedule_verify(args: argparse.Namespace) -> int:
    q = _parse_budgets(args.q)
    guard = GuardLimits(max_total=args.max_q) if args.max_q else GuardLimits()
    if args.schedule:
        candidate = schedule_from_json(Path(args.schedule).read_text())
        symbols = candidate.symbols
    else:
        symbols = build_universal_schedule(q).symbols
    counterexample = find_counterexample(symbols, q, guard)
    if counterexample is None:
        _emit({"result": "ok", "checked_budget": list(q.counts)}, args.out)
        return EXIT_OK
    _emit(
        {"result": "counterexample", "string": list(counterexample)},
        args.out,
    )
    return EXIT_NEGATIVE


def _cmd_embed(args: argparse.Namespace) -> int:
    from .embedding import embed_offline

    schedule = schedule_from_json(Path(args.schedule).read_text())
    queries = [int(part) for part in args.queries.split(",")] if args.queries else []
    indices = embed_offline(schedule.symbols, queries)
    if indices is None:
        _emit({"result": "not-subsequence"}, args.out)
        return EXIT_NEGATIVE
    _emit({"result": "embedding", "indices": list(indices)}, args.out)
    return EXIT_OK


def _cmd_verify_transcript(args: argparse.Namespace) -> int:
    schedule = schedule_from_json(Path(args.schedule).read_text())
    transcript = QueryTranscript.from_jsonl(Path(args.transcript).read_text())
    reason = check_transcript(transcript, schedule)
    if reason is None:
        _emit({"result": "ok", "slots": len(transcript)}, args.out)
        return EXIT_OK
    _emit({"result": "violation", "reason": reason}, args.out)
    return EXIT_NEGATIVE


def _cmd_simulate_prf(args: argparse.Namespace) -> int:
    key_count = 2**args.keybits
    params = GameParams(
        key_count=key_count,
        h=KeyPrefixH(key_count),
        epsilon=Fraction(1, key_count),
        q_hash=args.qH,
        q_prf=args.qO,
        seed=args.seed,
    )
    adversary = build_adversary(args.adversary)
    report = advantage_report(params, adversary, args.trials)
    _emit(report, args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statq",
        description="Static-order query schedules and the PRF game harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schedule-gen", help="build the universal schedule for a budget vector")
    p.add_argument("--q", required=True, help="comma-separated per-oracle budgets, e.g. 3,2")
    p.add_argument("--out", help="write the JSON document here instead of stdout")
    p.set_defaults(func=_cmd_schedule_gen)

    p = sub.add_parser(
        "schedule-verify",
        help="exhaustively check that every bounded string embeds into a schedule",
    )
    p.add_argument("--q", required=True, help="comma-separated per-oracle budgets")
    p.add_argument("--max-Q", dest="max_q", type=int, help="guard on the total budget")
    p.add_argument("--schedule", help="check this schedule document instead of the built one")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_schedule_verify)

    p = sub.add_parser("embed", help="greedy-embed a query string into a schedule")
    p.add_argument("--schedule", required=True, help="schedule JSON document")
    p.add_argument("--queries", required=True, help="comma-separated oracle ids")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("verify-transcript", help="validate an exported session transcript")
    p.add_argument("--schedule", required=True, help="schedule JSON document")
    p.add_argument("--transcript", required=True, help="JSON-lines transcript export")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_transcript)

    p = sub.add_parser("simulate-prf", help="estimate a PRF distinguishing advantage")
    p.add_argument("--keybits", type=int, required=True, help="key space size is 2^keybits")
    p.add_argument("--qH", type=int, required=True, help="hash-query budget")
    p.add_argument("--qO", type=int, required=True, help="challenge-query budget")
    p.add_argument(
        "--adversary", required=True, help=f"one of: {', '.join(sorted(ADVERSARIES))}"
    )
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_simulate_prf)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, GuardViolation, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
