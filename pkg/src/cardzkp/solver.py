"""Brute-force solvers: every placement consistent with the clues, then exact cover."""
from __future__ import annotations

from typing import Optional

from .exact_cover import search
from .pentominoes import border_counts, enumerate_fixed_pentominoes
from .puzzles import FiveCellsPuzzle, MeadowsPuzzle, Partition, Puzzle


def fivecells_placements(puz: FiveCellsPuzzle) -> list[tuple[int, ...]]:
    """In-grid pentomino placements whose border counts agree with every clue they cover.

    A cell's border count depends only on its own region's shape, so clue
    consistency is decided per placement.
    """
    out = []
    for r0 in range(puz.m):
        for c0 in range(puz.n):
            for shape in enumerate_fixed_pentominoes():
                counts = border_counts(shape)
                cells = []
                for dr, dc in shape:
                    r, c = r0 + dr, c0 + dc
                    if r >= puz.m or c >= puz.n:
                        break
                    clue = puz.clues.get((r, c))
                    if clue is not None and clue != counts[(dr, dc)]:
                        break
                    cells.append(r * puz.n + c)
                else:
                    out.append(tuple(sorted(cells)))
    return out


def meadows_placements(puz: MeadowsPuzzle) -> list[tuple[int, ...]]:
    """Squares inside the grid containing exactly one dot."""
    dots = set(puz.dots)
    n = puz.n
    out = []
    for r0 in range(n):
        for c0 in range(n):
            for side in range(1, n - max(r0, c0) + 1):
                cells = [(r, c) for r in range(r0, r0 + side) for c in range(c0, c0 + side)]
                if sum(cell in dots for cell in cells) == 1:
                    out.append(tuple(r * n + c for r, c in cells))
    return out


def _placements(puz: Puzzle):
    if isinstance(puz, FiveCellsPuzzle):
        return fivecells_placements(puz)
    return meadows_placements(puz)


def solve(puz: Puzzle, limit: Optional[int] = None) -> list[Partition]:
    placements = _placements(puz)
    _, sols = search(puz.rows * puz.cols, placements, limit, True)
    cols = puz.cols
    return [
        Partition.from_regions(
            puz.rows,
            cols,
            [[divmod(i, cols) for i in placements[pid]] for pid in sol],
        )
        for sol in sols
    ]


def count_solutions(puz: Puzzle, limit: Optional[int] = None) -> int:
    count, _ = search(puz.rows * puz.cols, _placements(puz), limit, False)
    return count


def solve_fivecells(puz: FiveCellsPuzzle, limit: Optional[int] = None) -> list[Partition]:
    return solve(puz, limit)


def solve_meadows(puz: MeadowsPuzzle, limit: Optional[int] = None) -> list[Partition]:
    return solve(puz, limit)
