"""Pure-Python exact-cover search; the fallback for the compiled kernel.

Cells are covered in increasing index order: the lowest uncovered cell is
filled by each placement whose lowest cell it is, in input order. Both
backends visit solutions in exactly this order.
"""
from __future__ import annotations

from typing import Optional, Sequence


def search(
    n_cells: int,
    placements: Sequence[Sequence[int]],
    limit: Optional[int] = None,
    collect: bool = True,
) -> tuple[int, list[list[int]]]:
    """Count (and optionally list) sets of placements covering every cell once.

    Stops after ``limit`` solutions; returns ``(count, solutions)`` where
    each solution lists placement indices in the order they were chosen.
    """
    by_cell: list[list[tuple[int, int]]] = [[] for _ in range(n_cells)]
    for pid, cells in enumerate(placements):
        if not cells:
            continue
        mask = 0
        for c in cells:
            if not 0 <= c < n_cells:
                raise ValueError(f"placement {pid} covers cell {c} outside 0..{n_cells - 1}")
            mask |= 1 << c
        by_cell[min(cells)].append((pid, mask))
    full = (1 << n_cells) - 1
    solutions: list[list[int]] = []
    chosen: list[int] = []
    count = 0

    def first_free(covered: int) -> int:
        free = ~covered & full
        return (free & -free).bit_length() - 1

    def rec(covered: int) -> bool:
        nonlocal count
        if covered == full:
            count += 1
            if collect:
                solutions.append(list(chosen))
            return limit is not None and count >= limit
        cell = first_free(covered)
        for pid, mask in by_cell[cell]:
            if covered & mask:
                continue
            chosen.append(pid)
            stop = rec(covered | mask)
            chosen.pop()
            if stop:
                return True
        return False

    if limit is None or limit > 0:
        if n_cells == 0:
            return (1, [[]] if collect else [])
        rec(0)
    return count, solutions
