"""Simulated card table: ground-truth card state, randomness, and the event log.

All observable actions go through :class:`Table`, which appends the
verifier-visible part to its transcript. Card faces can only be read back
through reveal operations (which log them) or, in ground-truth mode, via
:meth:`Table.peek` for tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .events import (
    Face,
    PlaceHidden,
    PlacePublic,
    PileShiftShuffle,
    RemoveCard,
    RevealCard,
    RevealRow,
    TemplateCheck,
    Transcript,
    TurnFaceDown,
)

BLANK: Face = None
MAX_FACE = 9


class HiddenFaceError(RuntimeError):
    """A face-down card's face was read without revealing it."""


class GroundTruthDisabled(RuntimeError):
    """A ground-truth accessor was used on a table not in test mode."""


class InvariantError(RuntimeError):
    """Engine state violates a structural invariant (a programming error)."""


def check_face(face: Face) -> Face:
    if face is not None and (type(face) is not int or not 0 <= face <= MAX_FACE):
        raise ValueError(f"card face must be blank or an integer 0..{MAX_FACE}, got {face!r}")
    return face


def face_str(face: Face) -> str:
    return "." if face is None else str(face)


@dataclass(slots=True, eq=False)
class Card:
    _face: Face
    face_up: bool
    uid: int

    @property
    def face(self) -> Face:
        if not self.face_up:
            raise HiddenFaceError(f"card {self.uid} is face-down")
        return self._face

    def __repr__(self) -> str:
        shown = face_str(self._face) if self.face_up else "?"
        return f"Card({shown}, uid={self.uid})"


Stack = list  # list[Card], top first
Slot = Optional[Stack]  # None marks a vacancy left by a consumed card


class RandomSource:
    """Seeded source of uniform cyclic shifts.

    Backed by :class:`random.Random`, whose ``randrange`` draws by
    rejection over raw bits, so every shift in ``0..q-1`` is exactly
    equally likely.
    """

    def __init__(self, seed: int):
        if not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ValueError("seed must be an integer in [0, 2**64)")
        self.seed = seed
        self._rng = random.Random(seed)

    def uniform_shift(self, q: int) -> int:
        if q < 1:
            raise ValueError("shift modulus must be positive")
        return self._rng.randrange(q)


class ScriptedShifts(RandomSource):
    """Replays a fixed list of shifts; for exhaustive tests over shift choices."""

    def __init__(self, shifts: Iterable[int]):
        self.seed = 0
        self._shifts = list(shifts)
        self._pos = 0

    def uniform_shift(self, q: int) -> int:
        s = self._shifts[self._pos]
        self._pos += 1
        if not 0 <= s < q:
            raise ValueError(f"scripted shift {s} outside 0..{q - 1}")
        return s


class PileMatrix:
    """Rows of equal-height card stacks; the unit a pile-shifting shuffle acts on."""

    __slots__ = ("rows",)

    def __init__(self, rows: list[list[Slot]]):
        self.rows = rows

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def check_heights(self) -> None:
        width = self.n_cols
        for r, row in enumerate(self.rows):
            if len(row) != width:
                raise InvariantError(f"row {r} has {len(row)} columns, expected {width}")
            heights = {len(s) for s in row if s is not None}
            if len(heights) > 1:
                raise InvariantError(f"row {r} has unequal stack heights {sorted(heights)}")

    def card_count(self) -> int:
        return sum(len(s) for row in self.rows for s in row if s is not None)

    def cards(self) -> list[Card]:
        return [c for row in self.rows for s in row if s is not None for c in s]


@dataclass
class Counters:
    shuffles: int = 0
    created: int = 0
    live: int = 0
    peak: int = 0
    printed: int = 0


class Table:
    """Ground truth for one protocol run.

    ``ground_truth=True`` enables :meth:`peek` and records every shift in
    :attr:`shift_log`. ``phantom=True`` makes verifier-checked reveals show
    the verifier's expected face, which is how the simulator produces an
    accepting view without a solution.
    """

    def __init__(
        self,
        rng: Union[RandomSource, int],
        *,
        ground_truth: bool = False,
        phantom: bool = False,
    ):
        self.rng = rng if isinstance(rng, RandomSource) else RandomSource(rng)
        self.ground_truth = ground_truth
        self.phantom = phantom
        self.transcript = Transcript()
        self.counters = Counters()
        self.shift_log: list[tuple[str, int, int]] = []
        self._next_uid = 0

    # -- card lifecycle -------------------------------------------------

    def new_card(self, face: Face, face_up: bool = False) -> Card:
        card = Card(check_face(face), face_up, self._next_uid)
        self._next_uid += 1
        c = self.counters
        c.created += 1
        c.live += 1
        if c.live > c.peak:
            c.peak = c.live
        return card

    def new_stack(self, faces: Sequence[Face]) -> Stack:
        return [self.new_card(f) for f in faces]

    def discard(self, cards: Iterable[Card]) -> None:
        self.counters.live -= sum(1 for _ in cards)

    def emit(self, event) -> None:
        self.transcript.append(event)

    def peek(self, card: Card) -> Face:
        if not self.ground_truth:
            raise GroundTruthDisabled("peek requires a ground-truth table")
        return card._face

    # -- public placement -----------------------------------------------

    def new_face_down_grid(self, rows: int, cols: int, face: Face, pile: str = "grid") -> PileMatrix:
        """Place ``rows x cols`` single-card stacks of ``face`` publicly, then turn them down."""
        if rows < 1 or cols < 1:
            raise ValueError("grid dimensions must be positive")
        check_face(face)
        n = rows * cols
        self.emit(PlacePublic(pile, None, (face,) * n))
        matrix = PileMatrix([[[self.new_card(face)] for _ in range(cols)] for _ in range(rows)])
        self.emit(TurnFaceDown(pile, None, n))
        return matrix

    def place_public_row(self, faces: Sequence[Face], pile: str, row: Optional[int]) -> list[Card]:
        faces = tuple(faces)
        self.emit(PlacePublic(pile, row, faces))
        cards = [self.new_card(f, face_up=True) for f in faces]
        return cards

    def place_hidden(self, faces: Sequence[Face], pile: str, row: Optional[int]) -> list[Card]:
        cards = [self.new_card(f) for f in faces]
        self.emit(PlaceHidden(pile, row, len(cards)))
        return cards

    # -- shuffling ------------------------------------------------------

    def pile_shifting_shuffle(self, matrix: PileMatrix, pile: str) -> None:
        """Rotate every row by one uniform hidden shift: column ``s`` becomes column 0."""
        matrix.check_heights()
        q = matrix.n_cols
        s = self.rng.uniform_shift(q)
        if self.ground_truth:
            self.shift_log.append((pile, q, s))
        if s:
            matrix.rows = [row[s:] + row[:s] for row in matrix.rows]
        self.counters.shuffles += 1
        self.emit(PileShiftShuffle(pile, q))

    # -- turning cards --------------------------------------------------

    def turn_face_down(self, cards: Sequence[Card], pile: str, row: Optional[int] = None) -> None:
        for card in cards:
            if not card.face_up:
                raise ValueError(f"card {card.uid} is already face-down")
            card.face_up = False
        self.emit(TurnFaceDown(pile, row, len(cards)))

    def reveal_row(self, cards: Sequence[Card], pile: str, row: int) -> tuple:
        for card in cards:
            if card.face_up:
                raise ValueError(f"card {card.uid} is already face-up")
            card.face_up = True
        faces = tuple(card._face for card in cards)
        self.emit(RevealRow(pile, row, faces))
        return faces

    def reveal_card(
        self,
        card: Card,
        pile: str,
        index: int,
        purpose: str,
        expect: Face = BLANK,
    ) -> Face:
        """Turn one card face-up and log its face.

        ``expect`` is the verifier's public expectation; only a phantom
        table uses it, substituting it for the real face.
        """
        if card.face_up:
            raise ValueError(f"card {card.uid} is already face-up")
        card.face_up = True
        face = expect if self.phantom else card._face
        self.emit(RevealCard(pile, index, face, purpose))
        return face

    def remove_card(self, card: Card, pile: str, index: int) -> None:
        self.discard([card])
        self.emit(RemoveCard(pile, index))

    def template_check(self, stacks: Sequence[Stack], pile: str) -> tuple:
        """Reveal every card of every stack, log the faces, turn them back down."""
        faces = []
        for stack in stacks:
            for card in stack:
                if card.face_up:
                    raise ValueError(f"card {card.uid} is already face-up")
            faces.append(tuple(card._face for card in stack))
        faces = tuple(faces)
        self.emit(TemplateCheck(pile, faces))
        return faces
