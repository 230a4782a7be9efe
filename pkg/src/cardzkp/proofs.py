"""Puzzle-agnostic entry points over the Five Cells and Meadows protocols."""
from __future__ import annotations

from typing import Iterable, Union

from . import fivecells, meadows
from .cheats import apply_cheat
from .events import Transcript, Verdict
from .protocol import Layout, ProverScript
from .puzzles import FiveCellsPuzzle, Partition, Puzzle
from .table import RandomSource, Table


def _module(puz: Puzzle):
    return fivecells if isinstance(puz, FiveCellsPuzzle) else meadows


def layout_for(puz: Puzzle) -> Layout:
    if isinstance(puz, FiveCellsPuzzle):
        return fivecells.fivecells_layout(puz)
    return meadows.meadows_layout(puz)


def script_for(puz: Puzzle, part: Partition, cheats: Iterable[str] = ()) -> ProverScript:
    script = _module(puz).script_from_partition(puz, part)
    layout = layout_for(puz)
    for directive in cheats:
        script = apply_cheat(script, directive, layout)
    return script


def run(
    puz: Puzzle,
    prover: Union[Partition, ProverScript],
    seed: Union[int, RandomSource],
    *,
    ground_truth: bool = False,
    phantom: bool = False,
) -> tuple[Verdict, Transcript, Table]:
    runner = fivecells.run_fivecells if isinstance(puz, FiveCellsPuzzle) else meadows.run_meadows
    return runner(puz, prover, seed, ground_truth=ground_truth, phantom=phantom)


def prove(puz: Puzzle, part: Partition, seed: int, cheats: Iterable[str] = ()) -> tuple[Verdict, Transcript]:
    verdict, transcript, _ = run(puz, script_for(puz, part, cheats), seed)
    return verdict, transcript


def shuffle_count(puz: Puzzle) -> int:
    return _module(puz).shuffle_count(puz)


def peak_cards(puz: Puzzle) -> int:
    return _module(puz).peak_cards(puz)


def printed_cards(puz: Puzzle) -> int:
    # templates print one card per covered cell
    return puz.rows * puz.cols
