"""Command-line front end.

Exit codes: 0 accept/ok, 1 invalid input, 2 protocol reject, 3 statistical fail.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import proofs, solver
from .audit import audit
from .cheats import CheatError
from .events import Transcript, TranscriptError
from .pentominoes import fivecells_templates, meadows_templates
from .puzzles import (
    FiveCellsPuzzle,
    PuzzleFormatError,
    load_partition,
    load_puzzle,
    serialize_partition,
    validate,
)
from .zk import simulate, zk_stats

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_REJECT = 2
EXIT_STAT_FAIL = 3


class InputError(Exception):
    pass


def _puzzle(path):
    try:
        return load_puzzle(path)
    except (OSError, PuzzleFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _partition(path, puz):
    try:
        part = load_partition(path)
    except (OSError, PuzzleFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None
    if (part.rows, part.cols) != (puz.rows, puz.cols):
        raise InputError(f"{path}: partition is {part.rows}x{part.cols}, puzzle is {puz.rows}x{puz.cols}")
    return part


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_solve(args) -> int:
    puz = _puzzle(args.puzzle)
    sols = solver.solve(puz, args.limit)
    _write("\n".join(serialize_partition(p) for p in sols), args.output)
    print(f"{len(sols)} solution(s)", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    puz = _puzzle(args.puzzle)
    part = _partition(args.partition, puz)
    violations = validate(puz, part)
    for v in violations:
        print(f"{v.kind} {v.region} {v.detail}".rstrip())
    print("valid" if not violations else "invalid")
    return EXIT_OK if not violations else EXIT_INVALID


def cmd_prove(args) -> int:
    puz = _puzzle(args.puzzle)
    part = _partition(args.partition, puz)
    try:
        verdict, transcript = proofs.prove(puz, part, args.seed, args.cheat or ())
    except CheatError as exc:
        raise InputError(str(exc)) from None
    if args.output:
        transcript.dump(args.output)
    print(verdict)
    return EXIT_OK if verdict.accept else EXIT_REJECT


def cmd_audit(args) -> int:
    puz = _puzzle(args.puzzle)
    try:
        transcript = Transcript.load(args.transcript)
    except OSError as exc:
        raise InputError(f"{args.transcript}: {exc}") from None
    except (TranscriptError, ValueError):
        transcript = None
    if transcript is None:
        print("Reject(malformed-transcript)")
        return EXIT_REJECT
    verdict = audit(puz, transcript)
    print(verdict)
    return EXIT_OK if verdict.accept else EXIT_REJECT


def cmd_simulate(args) -> int:
    puz = _puzzle(args.puzzle)
    transcript = simulate(puz, args.seed)
    if args.output:
        transcript.dump(args.output)
    else:
        sys.stdout.write(transcript.dumps())
    print(transcript.verdict, file=sys.stderr)
    return EXIT_OK


def cmd_zk_stats(args) -> int:
    puz = _puzzle(args.puzzle)
    part = _partition(args.partition, puz)
    if args.runs < 1:
        raise InputError("--runs must be positive")
    if not 0 < args.alpha < 1:
        raise InputError("--alpha must lie in (0, 1)")
    report = zk_stats(puz, proofs.script_for(puz, part), args.runs, args.alpha, args.seed, args.jobs)
    sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_STAT_FAIL


def cmd_templates(args) -> int:
    if args.kind == "fivecells":
        templates = fivecells_templates()
    else:
        if args.n is None or args.n < 1:
            raise InputError("--n (positive) is required for meadows templates")
        templates = meadows_templates(args.n)
    blocks = [f"# template {i}\n{t.render()}" for i, t in enumerate(templates)]
    sys.stdout.write("\n".join(blocks))
    return EXIT_OK


def cmd_counts(args) -> int:
    puz = _puzzle(args.puzzle)
    layout = proofs.layout_for(puz)
    kind = "fivecells" if isinstance(puz, FiveCellsPuzzle) else "meadows"
    print(f"kind: {kind}")
    print(f"regions: {puz.k}")
    print(f"padded grid: {layout.height}x{layout.width}")
    print(f"templates: {len(layout.templates)}")
    print(f"shuffles: {proofs.shuffle_count(puz)}")
    print(f"printed cards: {proofs.printed_cards(puz)}")
    print(f"peak cards: {proofs.peak_cards(puz)}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input, not a protocol reject (argparse's default 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cardzkp", description="Card-based zero-knowledge proofs for Five Cells and Meadows.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate solutions")
    p.add_argument("puzzle")
    p.add_argument("--limit", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a partition against the puzzle rules")
    p.add_argument("puzzle")
    p.add_argument("partition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prove", help="run the card protocol")
    p.add_argument("puzzle")
    p.add_argument("partition")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cheat", action="append", metavar="DIRECTIVE",
                   help="overlap, forge-template, bad-rebuild, malformed-helper, anchor=I:R,C, template=I:T")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("audit", help="recompute a transcript's verdict")
    p.add_argument("puzzle")
    p.add_argument("transcript")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("simulate", help="produce a verifier view without a solution")
    p.add_argument("puzzle")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("zk-stats", help="compare real and simulated transcript distributions")
    p.add_argument("puzzle")
    p.add_argument("partition")
    p.add_argument("--runs", type=int, default=500)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_zk_stats)

    p = sub.add_parser("templates", help="print the template pile")
    p.add_argument("--kind", choices=("fivecells", "meadows"), required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_templates)

    p = sub.add_parser("counts", help="card and shuffle counts of an honest run")
    p.add_argument("puzzle")
    p.set_defaults(func=cmd_counts)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2**64:
        print("error: --seed must lie in [0, 2**64)", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
