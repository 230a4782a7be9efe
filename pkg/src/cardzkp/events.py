"""Verifier-visible events and the transcript that collects them.

Every event records a public action on the table. Nothing here carries a
shuffle offset or the face of a card that was not turned face-up; the
table engine is the only producer and it never passes hidden state in.

Transcripts serialize as JSON lines, one event per line, with the event
name first and the remaining fields in declaration order::

    {"event":"PileShiftShuffle","pile":"grid","column_count":81}

Blank faces serialize as ``null``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from typing import IO, Iterable, Iterator, Optional, Union

Face = Optional[int]


@dataclass(frozen=True, slots=True)
class PlacePublic:
    """Face-up cards placed in view of both parties (a row, or a whole pile)."""

    pile: str
    row: Optional[int]
    faces: tuple


@dataclass(frozen=True, slots=True)
class PlaceHidden:
    """Face-down cards placed by the prover; only the count is visible."""

    pile: str
    row: Optional[int]
    count: int


@dataclass(frozen=True, slots=True)
class TurnFaceDown:
    pile: str
    row: Optional[int]
    count: int


@dataclass(frozen=True, slots=True)
class PileShiftShuffle:
    pile: str
    column_count: int


@dataclass(frozen=True, slots=True)
class RevealRow:
    pile: str
    row: int
    faces: tuple


@dataclass(frozen=True, slots=True)
class RevealCard:
    pile: str
    index: int
    face: Face
    purpose: str


@dataclass(frozen=True, slots=True)
class RemoveCard:
    pile: str
    index: int


@dataclass(frozen=True, slots=True)
class CyclicRealign:
    pile: str
    offset_observed: int


@dataclass(frozen=True, slots=True)
class TemplateCheck:
    """All template stacks revealed in pile order, then turned face-down again."""

    pile: str
    faces: tuple


@dataclass(frozen=True, slots=True)
class Verdict:
    accept: bool
    reason: Optional[str] = None

    def __str__(self) -> str:
        return "Accept" if self.accept else f"Reject({self.reason})"


ACCEPT = Verdict(True)

Event = Union[
    PlacePublic,
    PlaceHidden,
    TurnFaceDown,
    PileShiftShuffle,
    RevealRow,
    RevealCard,
    RemoveCard,
    CyclicRealign,
    TemplateCheck,
    Verdict,
]

EVENT_TYPES = {
    cls.__name__: cls
    for cls in (
        PlacePublic,
        PlaceHidden,
        TurnFaceDown,
        PileShiftShuffle,
        RevealRow,
        RevealCard,
        RemoveCard,
        CyclicRealign,
        TemplateCheck,
        Verdict,
    )
}

# fields holding (possibly nested) face tuples
_TUPLE_FIELDS = {"faces"}


class TranscriptError(ValueError):
    """Raised for transcripts that do not match the event schema."""


class Transcript:
    """Ordered verifier view of one protocol run."""

    def __init__(self, events: Iterable[Event] = ()):
        self.events: list[Event] = list(events)

    def append(self, event: Event) -> None:
        if self.events and isinstance(self.events[-1], Verdict):
            raise TranscriptError("transcript already closed by a verdict")
        self.events.append(event)

    @property
    def verdict(self) -> Optional[Verdict]:
        if self.events and isinstance(self.events[-1], Verdict):
            return self.events[-1]
        return None

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Transcript) and self.events == other.events

    def count(self, kind: type) -> int:
        return sum(1 for e in self.events if type(e) is kind)

    def dumps(self) -> str:
        return "".join(event_to_json(e) + "\n" for e in self.events)

    def dump(self, fp: Union[IO[str], str, os.PathLike]) -> None:
        """Write JSONL to an open text file or a path."""
        if isinstance(fp, (str, os.PathLike)):
            with open(fp, "w", encoding="utf-8", newline="\n") as f:
                f.write(self.dumps())
        else:
            fp.write(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        events = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                events.append(event_from_json(line))
            except TranscriptError as exc:
                raise TranscriptError(f"line {lineno}: {exc}") from None
        t = cls(events)
        verdicts = [i for i, e in enumerate(events) if isinstance(e, Verdict)]
        if verdicts != [len(events) - 1]:
            raise TranscriptError("transcript must end with exactly one verdict")
        return t

    @classmethod
    def load(cls, fp: Union[IO[str], str, os.PathLike]) -> "Transcript":
        if isinstance(fp, (str, os.PathLike)):
            with open(fp, encoding="utf-8") as f:
                return cls.loads(f.read())
        return cls.loads(fp.read())


def _listify(value):
    if isinstance(value, tuple):
        return [_listify(v) for v in value]
    return value


def _tuplify(value):
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


def event_to_json(event: Event) -> str:
    record = {"event": type(event).__name__}
    for f in fields(event):
        record[f.name] = _listify(getattr(event, f.name))
    return json.dumps(record, separators=(",", ":"))


def event_from_json(line: str) -> Event:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TranscriptError(f"invalid JSON: {exc}") from None
    if not isinstance(record, dict):
        raise TranscriptError("event record must be an object")
    name = record.pop("event", None)
    cls = EVENT_TYPES.get(name)
    if cls is None:
        raise TranscriptError(f"unknown event {name!r}")
    expected = [f.name for f in fields(cls)]
    if set(record) != set(expected) and not (
        cls is Verdict and set(record) <= set(expected) and "accept" in record
    ):
        raise TranscriptError(f"{name}: fields {sorted(record)} != {expected}")
    kwargs = {k: (_tuplify(v) if k in _TUPLE_FIELDS else v) for k, v in record.items()}
    return cls(**kwargs)
