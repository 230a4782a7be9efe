"""Fixed pentominoes, their border counts, and the card templates built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .table import BLANK, Face, face_str

Cell = tuple[int, int]
Shape = tuple[Cell, ...]

NEIGHBOURS = ((-1, 0), (1, 0), (0, -1), (0, 1))
TEMPLATE_SIDE = 5


def normalize(cells: Iterable[Cell]) -> Shape:
    """Translate so the minimum row and column are 0; sorted cell tuple."""
    cells = list(cells)
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted((r - r0, c - c0) for r, c in cells))


def dihedral_images(shape: Shape) -> list[Shape]:
    """The 8 rotations/reflections of ``shape``, each normalized."""
    out = []
    for flip in (False, True):
        cells = [(r, -c) if flip else (r, c) for r, c in shape]
        for _ in range(4):
            cells = [(c, -r) for r, c in cells]
            out.append(normalize(cells))
    return out


def is_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    todo = [start]
    while todo:
        r, c = todo.pop()
        for dr, dc in NEIGHBOURS:
            nb = (r + dr, c + dc)
            if nb in cells and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(cells)


@lru_cache(maxsize=None)
def enumerate_fixed_polyominoes(size: int) -> tuple[Shape, ...]:
    """All fixed polyominoes of ``size`` cells, grown cell by cell, in lexicographic order."""
    if size < 1:
        raise ValueError("size must be positive")
    shapes = {((0, 0),)}
    for _ in range(size - 1):
        grown = set()
        for shape in shapes:
            occupied = set(shape)
            for r, c in shape:
                for dr, dc in NEIGHBOURS:
                    nb = (r + dr, c + dc)
                    if nb not in occupied:
                        grown.add(normalize(shape + (nb,)))
        shapes = grown
    return tuple(sorted(shapes))


def enumerate_fixed_pentominoes() -> tuple[Shape, ...]:
    return enumerate_fixed_polyominoes(5)


@lru_cache(maxsize=None)
def _pentomino_index() -> dict[Shape, int]:
    return {shape: i for i, shape in enumerate(enumerate_fixed_pentominoes())}


def pentomino_index(cells: Iterable[Cell]) -> int:
    """Canonical index of a fixed pentomino; ``KeyError`` if ``cells`` is not one."""
    return _pentomino_index()[normalize(cells)]


def border_counts(cells: Iterable[Cell]) -> dict[Cell, int]:
    """For each cell, how many of its four edges are not shared with another cell of the region."""
    cells = set(cells)
    return {
        (r, c): sum((r + dr, c + dc) not in cells for dr, dc in NEIGHBOURS)
        for r, c in cells
    }


@dataclass(frozen=True)
class Template:
    p: int
    q: int
    faces: tuple[tuple[Face, ...], ...]

    def flat(self) -> tuple[Face, ...]:
        return tuple(f for row in self.faces for f in row)

    def render(self) -> str:
        return "\n".join(" ".join(face_str(f) for f in row) for row in self.faces) + "\n"

    @classmethod
    def from_rows(cls, text: str) -> "Template":
        rows = [line.split() for line in text.strip().splitlines()]
        faces = tuple(tuple(None if t == "." else int(t) for t in row) for row in rows)
        return cls(len(faces), len(faces[0]), faces)


def template_from_cells(values: dict[Cell, Face], p: int, q: int) -> Template:
    faces = tuple(tuple(values.get((r, c), BLANK) for c in range(q)) for r in range(p))
    return Template(p, q, faces)


def build_fivecells_template(shape: Iterable[Cell]) -> Template:
    shape = normalize(shape)
    if len(shape) != 5 or not is_connected(shape):
        raise ValueError(f"not a pentomino: {shape}")
    return template_from_cells(border_counts(shape), TEMPLATE_SIDE, TEMPLATE_SIDE)


def build_meadows_template(side: int, n: int) -> Template:
    if not 1 <= side <= n:
        raise ValueError(f"square side {side} outside 1..{n}")
    values = {(r, c): 1 for r in range(side) for c in range(side)}
    return template_from_cells(values, n, n)


@lru_cache(maxsize=None)
def fivecells_templates() -> tuple[Template, ...]:
    return tuple(build_fivecells_template(s) for s in enumerate_fixed_pentominoes())


@lru_cache(maxsize=None)
def meadows_templates(n: int) -> tuple[Template, ...]:
    return tuple(build_meadows_template(s, n) for s in range(1, n + 1))
