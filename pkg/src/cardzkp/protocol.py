"""The printing-based ZKP skeleton shared by Five Cells and Meadows.

A run lays a padded blank grid face-down as one row-major sequence, builds
a pile of face-down templates and has them checked, then for each region:
cuts the grid to the region's anchor, cuts the template pile to the
region's type, prints, closes both cuts (rebuilding the used template) and
re-checks the pile. Puzzle-specific reveals hook in after each printing
and at the end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .events import ACCEPT, Face, PlaceHidden, Transcript, Verdict
from .pentominoes import Cell, Template
from .subprotocols import (
    AreaHandle,
    Rejected,
    chosen_cut_close,
    chosen_cut_open,
    honest_print_choice,
    print_template,
)
from .table import BLANK, RandomSource, Table

TEMPLATE_CHECK_FAILED = "template-check-failed"
DUMMY_NOT_BLANK = "dummy-not-blank"

GRID = "grid"
TEMPLATES = "templates"
PRINT = "print"


@dataclass(frozen=True)
class Placement:
    """One printing iteration: area anchor (padded-grid row, col) and template pile slot."""

    anchor: Cell
    template: int


@dataclass
class ProverScript:
    """What the prover does, honest or not.

    ``forged`` replaces pile slots before the initial check; ``rebuild``
    maps an iteration to the faces rebuilt in place of the used template;
    ``malformed_helper`` puts two 1s in the first cut's hidden helper row.
    """

    placements: list[Placement]
    forged: dict[int, Template] = field(default_factory=dict)
    rebuild: dict[int, Template] = field(default_factory=dict)
    malformed_helper: bool = False


@dataclass(frozen=True)
class Layout:
    """Public geometry of a run."""

    m: int
    n: int
    pad: int
    side: int  # template is side x side
    templates: tuple[Template, ...]
    iterations: int

    @property
    def height(self) -> int:
        return self.m + self.pad

    @property
    def width(self) -> int:
        return self.n + self.pad

    @property
    def length(self) -> int:
        return self.height * self.width

    def index(self, r: int, c: int) -> int:
        return r * self.width + c

    def is_real(self, i: int) -> bool:
        r, c = divmod(i, self.width)
        return r < self.m and c < self.n

    def real_cells(self) -> list[int]:
        return [self.index(r, c) for r in range(self.m) for c in range(self.n)]

    def dummy_cells(self) -> list[int]:
        return [i for i in range(self.length) if not self.is_real(i)]


def _malformed(q: int, secret: int) -> list[Face]:
    row = [0] * q
    row[secret] = 1
    row[(secret + 1) % q] = 1
    return row


StepHook = Callable[[Table, list, int], None]


def run_protocol(
    table: Table,
    layout: Layout,
    script: ProverScript,
    after_print: Optional[StepHook] = None,
    final: Optional[Callable[[Table, list], None]] = None,
) -> Verdict:
    """Execute one run on ``table``; returns (and logs) the verdict."""
    try:
        _run(table, layout, script, after_print, final)
    except Rejected as exc:
        verdict = Verdict(False, exc.reason)
    else:
        verdict = ACCEPT
    table.emit(verdict)
    return verdict


def check_pile(table: Table, pile: Sequence, layout: Layout) -> None:
    faces = table.template_check(pile, TEMPLATES)
    if faces != tuple(t.flat() for t in layout.templates):
        raise Rejected(TEMPLATE_CHECK_FAILED)


def _run(table, layout, script, after_print, final):
    if layout.iterations != len(script.placements):
        raise ValueError(f"script has {len(script.placements)} placements, run needs {layout.iterations}")
    grid = table.new_face_down_grid(layout.height, layout.width, BLANK, GRID)
    seq = [stack for row in grid.rows for stack in row]

    # the prover's own record of what each pile slot holds
    pile_faces = [t.flat() for t in layout.templates]
    for slot, forged in script.forged.items():
        pile_faces[slot] = forged.flat()
    pile = [table.new_stack(faces) for faces in pile_faces]
    table.emit(PlaceHidden(TEMPLATES, None, sum(len(f) for f in pile_faces)))
    check_pile(table, pile, layout)

    side = layout.side
    for i, placement in enumerate(script.placements):
        r, c = placement.anchor
        secret = layout.index(r, c) % layout.length
        helper = _malformed(layout.length, secret) if script.malformed_helper and i == 0 else None
        area_cut = chosen_cut_open(table, seq, secret, GRID, helper)
        area = AreaHandle(area_cut, side, side, layout.width)

        template_cut = chosen_cut_open(table, pile, placement.template, TEMPLATES)
        faces = pile_faces[placement.template]
        print_template(table, template_cut.selected, area, lambda k: honest_print_choice(faces[k]), PRINT)
        seq = chosen_cut_close(area_cut)
        if after_print is not None:
            after_print(table, seq, i)

        rebuilt = script.rebuild.get(i)
        new_faces = rebuilt.flat() if rebuilt is not None else layout.templates[placement.template].flat()
        template_cut.replace(0, table.new_stack(new_faces))
        table.emit(PlaceHidden(TEMPLATES, None, len(new_faces)))
        pile = chosen_cut_close(template_cut)
        pile_faces[placement.template] = new_faces
        check_pile(table, pile, layout)

    if final is not None:
        final(table, seq)
    _reveal_dummies(table, layout, seq)


def _reveal_dummies(table: Table, layout: Layout, seq: list) -> None:
    for i in layout.dummy_cells():
        face = table.reveal_card(seq[i][0], GRID, i, "dummy", BLANK)
        if face is not BLANK:
            raise Rejected(DUMMY_NOT_BLANK, f"dummy cell {i} holds {face}")


def execute(
    layout: Layout,
    script: ProverScript,
    seed: int | RandomSource,
    *,
    after_print: Optional[StepHook] = None,
    final=None,
    ground_truth: bool = False,
    phantom: bool = False,
) -> tuple[Verdict, Transcript, Table]:
    table = Table(seed, ground_truth=ground_truth, phantom=phantom)
    verdict = run_protocol(table, layout, script, after_print, final)
    return verdict, table.transcript, table
