"""Replay of every verifier check from a transcript and the public puzzle alone."""
from __future__ import annotations

from typing import Optional

from .events import (
    ACCEPT,
    CyclicRealign,
    PileShiftShuffle,
    PlaceHidden,
    PlacePublic,
    RemoveCard,
    RevealCard,
    RevealRow,
    TemplateCheck,
    Transcript,
    TurnFaceDown,
    Verdict,
)
from .fivecells import CLUE_MISMATCH, fivecells_layout
from .meadows import DOT_SCHEDULE_VIOLATION, FINAL_NOT_ALL_ONES, meadows_layout
from .protocol import DUMMY_NOT_BLANK, GRID, PRINT, TEMPLATE_CHECK_FAILED, TEMPLATES, Layout
from .puzzles import FiveCellsPuzzle, MeadowsPuzzle, Puzzle
from .subprotocols import MALFORMED_HELPER, OVERLAP
from .table import BLANK

MALFORMED_TRANSCRIPT = "malformed-transcript"
VERDICT_MISMATCH = "verdict-mismatch"


class _Malformed(Exception):
    pass


class _Truncated(Exception):
    pass


class _Failed(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _Cursor:
    def __init__(self, events):
        self.events = events
        self.pos = 0

    def take(self, kind, **want):
        if self.pos >= len(self.events):
            raise _Truncated()
        event = self.events[self.pos]
        if type(event) is not kind:
            raise _Malformed(f"event {self.pos}: expected {kind.__name__}, got {type(event).__name__}")
        for name, value in want.items():
            if getattr(event, name) != value:
                raise _Malformed(f"event {self.pos}: {kind.__name__}.{name}={getattr(event, name)!r}, expected {value!r}")
        self.pos += 1
        return event


def _one_position(faces) -> int:
    if any(f not in (0, 1) for f in faces) or sum(faces) != 1:
        raise _Failed(MALFORMED_HELPER)
    return faces.index(1)


class _Replay:
    def __init__(self, puz: Puzzle, layout: Layout, cur: _Cursor):
        self.puz = puz
        self.layout = layout
        self.cur = cur
        self.canonical = tuple(t.flat() for t in layout.templates)

    def cut_open(self, pile: str, q: int) -> int:
        c = self.cur
        c.take(PlaceHidden, pile=pile, row=1, count=q)
        c.take(PlacePublic, pile=pile, row=2, faces=(1,) + (0,) * (q - 1))
        c.take(TurnFaceDown, pile=pile, row=2, count=q)
        c.take(PileShiftShuffle, pile=pile, column_count=q)
        ev = c.take(RevealRow, pile=pile, row=1)
        if len(ev.faces) != q:
            raise _Malformed("helper row length")
        return _one_position(ev.faces)

    def cut_close(self, pile: str, q: int) -> None:
        c = self.cur
        c.take(TurnFaceDown, pile=pile, row=1, count=q)
        c.take(PileShiftShuffle, pile=pile, column_count=q)
        ev = c.take(RevealRow, pile=pile, row=2)
        if len(ev.faces) != q:
            raise _Malformed("helper row length")
        t = _one_position(ev.faces)
        c.take(CyclicRealign, pile=pile, offset_observed=t)

    def template_check(self) -> None:
        ev = self.cur.take(TemplateCheck, pile=TEMPLATES)
        if ev.faces != self.canonical:
            raise _Failed(TEMPLATE_CHECK_FAILED)

    def reveal(self, index: int, purpose: str, expect, reason: str) -> None:
        ev = self.cur.take(RevealCard, pile=GRID, index=index, purpose=purpose)
        if ev.face != expect:
            raise _Failed(reason)

    def run(self) -> None:
        lay, c = self.layout, self.cur
        cells = lay.side * lay.side
        n_templates = len(lay.templates)
        c.take(PlacePublic, pile=GRID, row=None, faces=(BLANK,) * lay.length)
        c.take(TurnFaceDown, pile=GRID, row=None, count=lay.length)
        c.take(PlaceHidden, pile=TEMPLATES, row=None, count=n_templates * cells)
        self.template_check()
        for i in range(lay.iterations):
            self.cut_open(GRID, lay.length)
            self.cut_open(TEMPLATES, n_templates)
            for _ in range(cells):
                anchor = self.cut_open(PRINT, 2)
                ev = c.take(RevealCard, pile=PRINT, index=anchor, purpose="print")
                if ev.face is not BLANK:
                    raise _Failed(OVERLAP)
                c.take(RemoveCard, pile=PRINT, index=anchor)
                self.cut_close(PRINT, 2)
            self.cut_close(GRID, lay.length)
            self.after_print(i)
            c.take(PlaceHidden, pile=TEMPLATES, row=None, count=cells)
            self.cut_close(TEMPLATES, n_templates)
            self.template_check()
        self.final()
        for idx in lay.dummy_cells():
            self.reveal(idx, "dummy", BLANK, DUMMY_NOT_BLANK)

    def after_print(self, i: int) -> None:
        if isinstance(self.puz, MeadowsPuzzle):
            for j, (r, c) in enumerate(self.puz.dots):
                self.reveal(self.layout.index(r, c), "dot", 1 if j <= i else BLANK, DOT_SCHEDULE_VIOLATION)
            self.cur.take(TurnFaceDown, pile=GRID, row=None, count=self.puz.k)

    def final(self) -> None:
        if isinstance(self.puz, FiveCellsPuzzle):
            for r, c in self.puz.clue_cells():
                self.reveal(self.layout.index(r, c), "clue", self.puz.clues[(r, c)], CLUE_MISMATCH)
        else:
            for idx in self.layout.real_cells():
                self.reveal(idx, "final", 1, FINAL_NOT_ALL_ONES)


def layout_for(puz: Puzzle) -> Layout:
    return fivecells_layout(puz) if isinstance(puz, FiveCellsPuzzle) else meadows_layout(puz)


def recompute_verdict(puz: Puzzle, transcript: Transcript) -> Optional[Verdict]:
    """The verdict the verifier's checks imply; None if the transcript is truncated.

    Raises ``ValueError`` for structural violations.
    """
    events = list(transcript)
    if events and isinstance(events[-1], Verdict):
        events.pop()
    cur = _Cursor(events)
    try:
        _Replay(puz, layout_for(puz), cur).run()
    except _Failed as exc:
        if cur.pos != len(events):
            raise ValueError("events continue after a failed check")
        return Verdict(False, exc.reason)
    except _Truncated:
        return None
    except _Malformed as exc:
        raise ValueError(str(exc)) from None
    if cur.pos != len(events):
        raise ValueError("trailing events after the final check")
    return ACCEPT


def audit(puz: Puzzle, transcript: Transcript) -> Verdict:
    """Recompute the verdict from public data and compare it with the embedded one.

    Returns the recomputed verdict when they agree, ``Reject(verdict-mismatch)``
    when they do not, and ``Reject(malformed-transcript)`` for schema or
    structure violations.
    """
    embedded = transcript.verdict
    if embedded is None or sum(isinstance(e, Verdict) for e in transcript) != 1:
        return Verdict(False, MALFORMED_TRANSCRIPT)
    try:
        recomputed = recompute_verdict(puz, transcript)
    except ValueError:
        return Verdict(False, MALFORMED_TRANSCRIPT)
    if recomputed is None:  # protocol ended early without a failed check
        return Verdict(False, MALFORMED_TRANSCRIPT)
    if recomputed != embedded:
        return Verdict(False, VERDICT_MISMATCH)
    return recomputed
