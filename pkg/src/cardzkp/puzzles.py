"""Puzzle instances, partitions, text formats, and direct rule validators.

Formats (UTF-8, LF)::

    fivecells M N          meadows N          AABBB
    3 . . . .              . . * . .          AAABC
    ...                    ...                ...

A Five Cells row holds N tokens, each ``.`` or a clue digit 0-3. A Meadows
row holds N tokens, ``.`` or ``*`` (a dot). Rows may also be written with
no separators. A partition file is one line per grid row of single-letter
region labels (A-Z, a-z).
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .pentominoes import Cell, border_counts, is_connected, normalize, pentomino_index

LABELS = string.ascii_uppercase + string.ascii_lowercase
MAX_CLUE = 3


class PuzzleFormatError(ValueError):
    def __init__(self, kind: str, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.kind = kind
        self.line = line
        self.column = column


@dataclass(frozen=True)
class FiveCellsPuzzle:
    m: int
    n: int
    clues: dict = field(default_factory=dict)  # (r, c) -> 0..3

    kind = "fivecells"

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("grid dimensions must be positive")
        if (self.m * self.n) % 5:
            raise ValueError(f"{self.m}x{self.n} grid is not divisible into pentominoes")
        for (r, c), v in self.clues.items():
            if not (0 <= r < self.m and 0 <= c < self.n):
                raise ValueError(f"clue cell {(r, c)} outside the grid")
            if not 0 <= v <= MAX_CLUE:
                raise ValueError(f"clue {v} at {(r, c)} outside 0..{MAX_CLUE}")

    @property
    def rows(self) -> int:
        return self.m

    @property
    def cols(self) -> int:
        return self.n

    @property
    def k(self) -> int:
        return self.m * self.n // 5

    def clue_cells(self) -> list[Cell]:
        return sorted(self.clues)

    def __hash__(self):
        return hash((self.m, self.n, tuple(sorted(self.clues.items()))))


@dataclass(frozen=True)
class MeadowsPuzzle:
    n: int
    dots: tuple  # row-major order

    kind = "meadows"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grid side must be positive")
        dots = tuple(sorted(set(self.dots)))
        if len(dots) != len(self.dots):
            raise ValueError("dotted cells must be distinct")
        if not dots:
            raise ValueError("a Meadows puzzle needs at least one dot")
        for r, c in dots:
            if not (0 <= r < self.n and 0 <= c < self.n):
                raise ValueError(f"dot {(r, c)} outside the grid")
        object.__setattr__(self, "dots", dots)

    @property
    def rows(self) -> int:
        return self.n

    @property
    def cols(self) -> int:
        return self.n

    @property
    def k(self) -> int:
        return len(self.dots)


Puzzle = Union[FiveCellsPuzzle, MeadowsPuzzle]


@dataclass(frozen=True)
class Partition:
    """Region label per cell; regions are the label classes."""

    labels: tuple  # tuple of row strings

    @property
    def rows(self) -> int:
        return len(self.labels)

    @property
    def cols(self) -> int:
        return len(self.labels[0]) if self.labels else 0

    def regions(self) -> dict[str, list[Cell]]:
        out: dict[str, list[Cell]] = {}
        for r, row in enumerate(self.labels):
            for c, lab in enumerate(row):
                out.setdefault(lab, []).append((r, c))
        return out

    def canonical(self) -> "Partition":
        """Relabel regions A, B, ... in order of first appearance."""
        mapping: dict[str, str] = {}
        rows = []
        for row in self.labels:
            out = []
            for lab in row:
                if lab not in mapping:
                    mapping[lab] = LABELS[len(mapping)]
                out.append(mapping[lab])
            rows.append("".join(out))
        return Partition(tuple(rows))

    @classmethod
    def from_regions(cls, rows: int, cols: int, regions: list[list[Cell]]) -> "Partition":
        if len(regions) > len(LABELS):
            raise ValueError(f"more than {len(LABELS)} regions")
        grid = [["?"] * cols for _ in range(rows)]
        for lab, cells in zip(LABELS, regions):
            for r, c in cells:
                grid[r][c] = lab
        return cls(tuple("".join(row) for row in grid)).canonical()

    def __str__(self) -> str:
        return serialize_partition(self)


@dataclass(frozen=True)
class Violation:
    kind: str
    region: str = ""
    detail: str = ""


def _shape_violations(puz: Puzzle, part: Partition) -> list[Violation]:
    if part.rows != puz.rows or any(len(row) != puz.cols for row in part.labels):
        return [Violation("shape-mismatch", detail=f"partition is not {puz.rows}x{puz.cols}")]
    return []


def extended_solution(puz: FiveCellsPuzzle, part: Partition) -> tuple[tuple[int, ...], ...]:
    """Each cell's count of edges that are region borders (the outer boundary included)."""
    values = {}
    for cells in part.regions().values():
        values.update(border_counts(cells))
    return tuple(tuple(values[(r, c)] for c in range(puz.n)) for r in range(puz.m))


def validate_fivecells(puz: FiveCellsPuzzle, part: Partition) -> list[Violation]:
    bad = _shape_violations(puz, part)
    if bad:
        return bad
    for lab, cells in sorted(part.regions().items()):
        if len(cells) != 5:
            bad.append(Violation("region-size", lab, f"{len(cells)} cells"))
        elif not is_connected(cells):
            bad.append(Violation("not-connected", lab))
        else:
            pentomino_index(cells)  # always succeeds for 5 connected cells
    ext = extended_solution(puz, part)
    for (r, c), v in sorted(puz.clues.items()):
        if ext[r][c] != v:
            bad.append(Violation("clue-mismatch", part.labels[r][c], f"cell {(r, c)}: {ext[r][c]} != {v}"))
    return bad


def square_of(cells: list[Cell]):
    """``(top, left, side)`` if ``cells`` is exactly an axis-aligned square, else None."""
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    side = max(r for r, _ in cells) - r0 + 1
    if max(c for _, c in cells) - c0 + 1 != side or len(cells) != side * side:
        return None
    return r0, c0, side


def validate_meadows(puz: MeadowsPuzzle, part: Partition) -> list[Violation]:
    bad = _shape_violations(puz, part)
    if bad:
        return bad
    dots = set(puz.dots)
    for lab, cells in sorted(part.regions().items()):
        if square_of(cells) is None:
            bad.append(Violation("not-square", lab))
        n_dots = sum(cell in dots for cell in cells)
        if n_dots != 1:
            bad.append(Violation("dot-count", lab, f"{n_dots} dots"))
    return bad


def validate(puz: Puzzle, part: Partition) -> list[Violation]:
    if isinstance(puz, FiveCellsPuzzle):
        return validate_fivecells(puz, part)
    return validate_meadows(puz, part)


# -- text formats -----------------------------------------------------------


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = [(i, line.rstrip("\r")) for i, line in enumerate(text.split("\n"), start=1)]
    while lines and not lines[-1][1].strip():
        lines.pop()
    return lines


def _row_tokens(line: str, n: int) -> list[tuple[int, str]]:
    """Tokens with their 1-based columns; a single unseparated run is split per char."""
    tokens = []
    col = 0
    for part in line.split(" "):
        col += 1
        if part:
            tokens.append((col, part))
        col += len(part)
    if len(tokens) == 1 and len(tokens[0][1]) == n and n > 1:
        start, run = tokens[0]
        tokens = [(start + i, ch) for i, ch in enumerate(run)]
    return tokens


def _parse_header(lines) -> tuple[str, list[int]]:
    if not lines:
        raise PuzzleFormatError("bad-header", "empty puzzle file", 1)
    lineno, line = lines[0]
    words = line.split()
    if not words or words[0] not in ("fivecells", "meadows"):
        raise PuzzleFormatError("bad-header", "expected 'fivecells M N' or 'meadows N'", lineno, 1)
    want = 2 if words[0] == "fivecells" else 1
    if len(words) != want + 1 or not all(w.isdigit() and int(w) > 0 for w in words[1:]):
        raise PuzzleFormatError("bad-header", f"malformed dimension line {line!r}", lineno, 1)
    return words[0], [int(w) for w in words[1:]]


def _grid_rows(lines, rows: int, cols: int):
    body = lines[1:]
    if len(body) != rows:
        at = body[rows][0] if len(body) > rows else (lines[-1][0] + 1)
        raise PuzzleFormatError("row-count", f"expected {rows} grid rows, found {len(body)}", at)
    for lineno, line in body:
        tokens = _row_tokens(line, cols)
        if len(tokens) != cols:
            raise PuzzleFormatError("row-length", f"expected {cols} cells, found {len(tokens)}", lineno, 1)
        yield lineno, tokens


def parse_puzzle(text: str) -> Puzzle:
    lines = _content_lines(text)
    kind, dims = _parse_header(lines)
    if kind == "fivecells":
        m, n = dims
        if (m * n) % 5:
            raise PuzzleFormatError("not-divisible", f"grid size {m}x{n} is not divisible by 5", lines[0][0], 1)
        clues = {}
        for r, (lineno, tokens) in enumerate(_grid_rows(lines, m, n)):
            for c, (col, tok) in enumerate(tokens):
                if tok == ".":
                    continue
                if not tok.isdigit():
                    raise PuzzleFormatError("unknown-symbol", f"unknown symbol {tok!r}", lineno, col)
                if int(tok) > MAX_CLUE:
                    raise PuzzleFormatError("clue-range", f"clue {tok} outside 0..{MAX_CLUE}", lineno, col)
                clues[(r, c)] = int(tok)
        return FiveCellsPuzzle(m, n, clues)
    (n,) = dims
    dots = []
    for r, (lineno, tokens) in enumerate(_grid_rows(lines, n, n)):
        for c, (col, tok) in enumerate(tokens):
            if tok == "*":
                dots.append((r, c))
            elif tok != ".":
                raise PuzzleFormatError("unknown-symbol", f"unknown symbol {tok!r}", lineno, col)
    if not dots:
        raise PuzzleFormatError("no-dots", "a Meadows puzzle needs at least one dot", lines[0][0], 1)
    return MeadowsPuzzle(n, tuple(dots))


def serialize_puzzle(puz: Puzzle) -> str:
    if isinstance(puz, FiveCellsPuzzle):
        out = [f"fivecells {puz.m} {puz.n}"]
        for r in range(puz.m):
            out.append(" ".join(str(puz.clues[(r, c)]) if (r, c) in puz.clues else "." for c in range(puz.n)))
    else:
        dots = set(puz.dots)
        out = [f"meadows {puz.n}"]
        for r in range(puz.n):
            out.append(" ".join("*" if (r, c) in dots else "." for c in range(puz.n)))
    return "\n".join(out) + "\n"


def parse_partition(text: str) -> Partition:
    rows = []
    for lineno, line in _content_lines(text):
        row = line.replace(" ", "")
        for col, ch in enumerate(row, start=1):
            if ch not in LABELS:
                raise PuzzleFormatError("unknown-symbol", f"invalid region label {ch!r}", lineno, col)
        if not row:
            raise PuzzleFormatError("row-length", "empty partition row", lineno, 1)
        if rows and len(row) != len(rows[0]):
            raise PuzzleFormatError("row-length", f"expected {len(rows[0])} labels, found {len(row)}", lineno, 1)
        rows.append(row)
    if not rows:
        raise PuzzleFormatError("row-count", "empty partition file", 1)
    return Partition(tuple(rows))


def serialize_partition(part: Partition) -> str:
    return "\n".join(part.labels) + "\n"


def load_puzzle(path: Union[str, Path]) -> Puzzle:
    return parse_puzzle(Path(path).read_text(encoding="utf-8"))


def load_partition(path: Union[str, Path]) -> Partition:
    return parse_partition(Path(path).read_text(encoding="utf-8"))


def anchor_of(cells: list[Cell]) -> Cell:
    """Top-left corner of a region's bounding box."""
    return min(r for r, _ in cells), min(c for _, c in cells)


def region_shape(cells: list[Cell]):
    return normalize(cells)
