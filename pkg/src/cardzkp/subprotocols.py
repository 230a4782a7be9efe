"""Chosen cut and printing, as sessions over :class:`~cardzkp.table.Table` state."""
from __future__ import annotations

from typing import Callable, Optional, Sequence

from .events import CyclicRealign, Face
from .table import BLANK, Card, PileMatrix, Slot, Stack, Table

OVERLAP = "overlap"
MALFORMED_HELPER = "malformed-helper"


class Rejected(Exception):
    """The verifier rejects; ``reason`` is the machine-readable cause."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(reason if not detail else f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail


def locate_one(faces: Sequence[Face]) -> int:
    """Index of the only 1 in a revealed helper row; rejects anything else."""
    if any(f not in (0, 1) for f in faces) or sum(faces) != 1:
        raise Rejected(MALFORMED_HELPER, f"helper row {list(faces)}")
    return faces.index(1)


def honest_helper(q: int, secret_index: int) -> list[Face]:
    return [1 if j == secret_index else 0 for j in range(q)]


class ChosenCutSession:
    """An open chosen cut: row 0 of ``matrix`` holds the shuffled target sequence.

    ``anchor`` is the public column of the revealed helper 1. The stack
    there is the prover's selection; other stacks are reachable by their
    offset from the anchor since the cut preserves cyclic order.
    """

    def __init__(self, table: Table, pile: str, matrix: PileMatrix, anchor: int):
        self.table = table
        self.pile = pile
        self.matrix = matrix
        self.anchor = anchor
        self.closed = False

    @property
    def q(self) -> int:
        return self.matrix.n_cols

    @property
    def selected(self) -> Slot:
        return self.matrix.rows[0][self.anchor]

    def stack_at(self, offset: int) -> Slot:
        return self.matrix.rows[0][(self.anchor + offset) % self.q]

    def replace(self, offset: int, stack: Slot) -> None:
        self.matrix.rows[0][(self.anchor + offset) % self.q] = stack

    def consume(self) -> None:
        """Leave the selected slot vacant (its card was used up)."""
        self.matrix.rows[0][self.anchor] = None


def chosen_cut_open(
    table: Table,
    stacks: Sequence[Slot],
    secret_index: int,
    pile: str,
    helper: Optional[Sequence[Face]] = None,
) -> ChosenCutSession:
    """Select ``stacks[secret_index]`` without revealing the index.

    ``helper`` overrides the prover's hidden row (honest: a single 1 at
    ``secret_index``); a cheating helper is caught when the row is revealed.
    """
    q = len(stacks)
    if q < 1:
        raise ValueError("chosen cut needs at least one stack")
    if not 0 <= secret_index < q:
        raise ValueError(f"secret index {secret_index} outside 0..{q - 1}")
    faces = honest_helper(q, secret_index) if helper is None else list(helper)
    if len(faces) != q:
        raise ValueError("helper row length must equal the sequence length")
    hidden = table.place_hidden(faces, pile, 1)
    public = table.place_public_row([1] + [0] * (q - 1), pile, 2)
    table.turn_face_down(public, pile, 2)
    matrix = PileMatrix([list(stacks), [[c] for c in hidden], [[c] for c in public]])
    table.pile_shifting_shuffle(matrix, pile)
    revealed = table.reveal_row([s[0] for s in matrix.rows[1]], pile, 1)
    anchor = locate_one(revealed)
    return ChosenCutSession(table, pile, matrix, anchor)


def chosen_cut_close(session: ChosenCutSession) -> list[Slot]:
    """Shuffle again, reveal the public helper row, and realign to the original order."""
    if session.closed:
        raise ValueError("chosen cut session already closed")
    table, pile, matrix = session.table, session.pile, session.matrix
    table.turn_face_down([s[0] for s in matrix.rows[1]], pile, 1)
    table.pile_shifting_shuffle(matrix, pile)
    revealed = table.reveal_row([s[0] for s in matrix.rows[2]], pile, 2)
    t = locate_one(revealed)
    if t:
        matrix.rows = [row[t:] + row[:t] for row in matrix.rows]
    table.emit(CyclicRealign(pile, t))
    table.discard(c for row in matrix.rows[1:] for s in row for c in s)
    session.closed = True
    return matrix.rows[0]


class AreaHandle:
    """A ``p x q`` window of a flattened grid, addressed from an open cut's anchor."""

    def __init__(self, session: ChosenCutSession, p: int, q: int, width: int):
        self.session = session
        self.p = p
        self.q = q
        self.offsets = [r * width + c for r in range(p) for c in range(q)]

    def __len__(self) -> int:
        return len(self.offsets)

    def stack(self, k: int) -> Slot:
        return self.session.stack_at(self.offsets[k])

    def put(self, k: int, stack: Stack) -> None:
        self.session.replace(self.offsets[k], stack)


def honest_print_choice(template_face: Face) -> int:
    """Honest printing choice for one cell: keep the template's number, or drop its blank."""
    return 1 if template_face is not BLANK else 0


def print_template(
    table: Table,
    template: Sequence[Card],
    area: AreaHandle,
    select: Callable[[int], int],
    pile: str = "print",
) -> None:
    """Stamp ``template`` (row-major, one card per cell) onto ``area``.

    For each cell the template card is stacked on the area card and a
    two-card chosen cut picks the one to discard: ``select(k)`` returns 0
    for the template card or 1 for the area card. The discarded card is
    revealed and must be blank, otherwise :class:`Rejected` (overlap).
    """
    if len(template) != len(area):
        raise ValueError("template and area sizes differ")
    for k in range(len(area)):
        area_stack = area.stack(k)
        if area_stack is None or len(area_stack) != 1:
            raise ValueError(f"area cell {k} must hold exactly one card")
        pair: list[Slot] = [[template[k]], area_stack]
        session = chosen_cut_open(table, pair, select(k), pile)
        chosen = session.selected[0]
        face = table.reveal_card(chosen, pile, session.anchor, "print", BLANK)
        if face is not BLANK:
            raise Rejected(OVERLAP, f"area cell {k} already holds {face}")
        table.remove_card(chosen, pile, session.anchor)
        session.consume()
        rest = chosen_cut_close(session)
        remaining = next(s for s in rest if s is not None)
        area.put(k, remaining)
        if remaining[0] is template[k] and template[k]._face is not BLANK:
            table.counters.printed += 1
