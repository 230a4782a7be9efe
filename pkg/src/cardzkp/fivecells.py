"""Five Cells: pad by four rows/columns, 63 pentomino templates, clue and dummy reveals."""
from __future__ import annotations

from typing import Union

from .events import Transcript, Verdict
from .pentominoes import (
    TEMPLATE_SIDE,
    border_counts,
    enumerate_fixed_pentominoes,
    fivecells_templates,
    normalize,
    template_from_cells,
)
from .protocol import GRID, Layout, Placement, ProverScript, execute
from .puzzles import FiveCellsPuzzle, Partition, anchor_of
from .subprotocols import Rejected
from .table import RandomSource, Table

PAD = 4
CLUE_MISMATCH = "clue-mismatch"


def fivecells_layout(puz: FiveCellsPuzzle) -> Layout:
    return Layout(puz.m, puz.n, PAD, TEMPLATE_SIDE, fivecells_templates(), puz.k)


def script_from_partition(puz: FiveCellsPuzzle, part: Partition, order=None) -> ProverScript:
    """The prover's plan for ``part``: one placement per region, sorted by anchor.

    A region that is not a pentomino gets a forged template (its own border
    counts, clipped to 5x5) swapped into a pile slot; the initial template
    check then rejects. ``order`` optionally permutes the region sequence.
    """
    index = {shape: i for i, shape in enumerate(enumerate_fixed_pentominoes())}
    regions = sorted(part.regions().values(), key=anchor_of)
    if order is not None:
        regions = [regions[j] for j in order]
    script = ProverScript([])
    next_forged = 0
    for cells in regions:
        shape = normalize(cells)
        if shape in index:
            slot = index[shape]
        else:
            r0, c0 = anchor_of(cells)
            counts = {
                (r - r0, c - c0): v
                for (r, c), v in border_counts(cells).items()
                if r - r0 < TEMPLATE_SIDE and c - c0 < TEMPLATE_SIDE
            }
            slot = next_forged
            next_forged += 1
            script.forged[slot] = template_from_cells(counts, TEMPLATE_SIDE, TEMPLATE_SIDE)
        script.placements.append(Placement(anchor_of(cells), slot))
    _fit_iterations(script, puz.k)
    return script


def _fit_iterations(script: ProverScript, k: int) -> None:
    # the verifier runs exactly k iterations whatever the prover holds
    del script.placements[k:]
    while len(script.placements) < k:
        script.placements.append(script.placements[-1])


def clue_reveals(puz: FiveCellsPuzzle, layout: Layout):
    def final(table: Table, seq: list) -> None:
        for (r, c) in puz.clue_cells():
            i = layout.index(r, c)
            clue = puz.clues[(r, c)]
            face = table.reveal_card(seq[i][0], GRID, i, "clue", clue)
            if face != clue:
                raise Rejected(CLUE_MISMATCH, f"cell {(r, c)} shows {face}, clue is {clue}")

    return final


def run_fivecells(
    puz: FiveCellsPuzzle,
    prover: Union[Partition, ProverScript],
    seed: Union[int, RandomSource],
    *,
    ground_truth: bool = False,
    phantom: bool = False,
) -> tuple[Verdict, Transcript, Table]:
    layout = fivecells_layout(puz)
    script = script_from_partition(puz, prover) if isinstance(prover, Partition) else prover
    return execute(
        layout,
        script,
        seed,
        final=clue_reveals(puz, layout),
        ground_truth=ground_truth,
        phantom=phantom,
    )


def prove_fivecells(puz, prover, seed) -> tuple[Verdict, Transcript]:
    verdict, transcript, _ = run_fivecells(puz, prover, seed)
    return verdict, transcript


def phantom_script(puz: FiveCellsPuzzle) -> ProverScript:
    """A prover with no solution: every region at the grid corner, every template slot 0."""
    return ProverScript([Placement((0, 0), 0)] * puz.k)


def shuffle_count(puz: FiveCellsPuzzle) -> int:
    # per region: two cuts of two shuffles each, plus a two-shuffle cut per template cell
    return puz.k * (2 * 2 + 2 * TEMPLATE_SIDE**2)


def peak_cards(puz: FiveCellsPuzzle) -> int:
    """Cards on the table at the busiest moment (first printing cut of a region).

    Grid plus its two helper rows, the template pile plus its two helper
    rows, and the two helper cards of a printing cut.
    """
    grid = (puz.m + PAD) * (puz.n + PAD)
    pile = len(fivecells_templates())
    return 3 * grid + pile * TEMPLATE_SIDE**2 + 2 * pile + 2 * 2
