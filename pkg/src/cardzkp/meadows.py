"""Meadows: pad by n-1 rows/columns, n square templates, per-iteration dot schedule."""
from __future__ import annotations

from typing import Union

from .events import Transcript, Verdict
from .pentominoes import meadows_templates, template_from_cells
from .protocol import GRID, Layout, Placement, ProverScript, execute
from .puzzles import MeadowsPuzzle, Partition, anchor_of, square_of
from .subprotocols import Rejected
from .table import BLANK, RandomSource, Table

DOT_SCHEDULE_VIOLATION = "dot-schedule-violation"
FINAL_NOT_ALL_ONES = "final-not-all-ones"


def meadows_layout(puz: MeadowsPuzzle) -> Layout:
    return Layout(puz.n, puz.n, puz.n - 1, puz.n, meadows_templates(puz.n), puz.k)


def script_from_partition(puz: MeadowsPuzzle, part: Partition) -> ProverScript:
    """One placement per dot, in dot order: the square containing that dot.

    Regions without a dot come after the dotted ones; a non-square region
    is printed from a forged template (caught by the initial check).
    """
    dots = puz.dots
    regions = list(part.regions().values())

    def first_dot(cells):
        inside = [dots.index(d) for d in cells if d in dots]
        return (min(inside) if inside else len(dots), anchor_of(cells))

    regions.sort(key=first_dot)
    script = ProverScript([])
    next_forged = 0
    for cells in regions:
        sq = square_of(cells)
        if sq is not None:
            slot = sq[2] - 1
        else:
            r0, c0 = anchor_of(cells)
            values = {(r - r0, c - c0): 1 for r, c in cells if r - r0 < puz.n and c - c0 < puz.n}
            slot = next_forged
            next_forged += 1
            script.forged[slot] = template_from_cells(values, puz.n, puz.n)
        script.placements.append(Placement(anchor_of(cells), slot))
    del script.placements[puz.k:]
    while len(script.placements) < puz.k:
        script.placements.append(script.placements[-1])
    return script


def dot_schedule(puz: MeadowsPuzzle, layout: Layout):
    """After printing square i, dots 0..i must show 1 and later dots blank."""
    positions = [layout.index(r, c) for r, c in puz.dots]

    def after_print(table: Table, seq: list, i: int) -> None:
        shown = []
        for j, idx in enumerate(positions):
            expect = 1 if j <= i else BLANK
            card = seq[idx][0]
            face = table.reveal_card(card, GRID, idx, "dot", expect)
            shown.append(card)
            if face != expect:
                raise Rejected(DOT_SCHEDULE_VIOLATION, f"iteration {i}: dot {j} shows {face}")
        table.turn_face_down(shown, GRID, None)

    return after_print


def all_ones(layout: Layout):
    def final(table: Table, seq: list) -> None:
        for i in layout.real_cells():
            face = table.reveal_card(seq[i][0], GRID, i, "final", 1)
            if face != 1:
                raise Rejected(FINAL_NOT_ALL_ONES, f"real cell {i} shows {face}")

    return final


def run_meadows(
    puz: MeadowsPuzzle,
    prover: Union[Partition, ProverScript],
    seed: Union[int, RandomSource],
    *,
    ground_truth: bool = False,
    phantom: bool = False,
) -> tuple[Verdict, Transcript, Table]:
    layout = meadows_layout(puz)
    script = script_from_partition(puz, prover) if isinstance(prover, Partition) else prover
    return execute(
        layout,
        script,
        seed,
        after_print=dot_schedule(puz, layout),
        final=all_ones(layout),
        ground_truth=ground_truth,
        phantom=phantom,
    )


def prove_meadows(puz, prover, seed) -> tuple[Verdict, Transcript]:
    verdict, transcript, _ = run_meadows(puz, prover, seed)
    return verdict, transcript


def phantom_script(puz: MeadowsPuzzle) -> ProverScript:
    return ProverScript([Placement((0, 0), 0)] * puz.k)


def shuffle_count(puz: MeadowsPuzzle) -> int:
    return puz.k * (2 * puz.n**2 + 4)


def peak_cards(puz: MeadowsPuzzle) -> int:
    grid = (2 * puz.n - 1) ** 2
    return 3 * grid + puz.n * puz.n**2 + 2 * puz.n + 2 * 2
