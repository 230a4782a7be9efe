"""Cheating-prover directives applied on top of an honest script.

Directive syntax (several may be combined):

``overlap``            iteration 1 repeats iteration 0's placement
``forge-template``     pile slot 0 holds a corrupted template from the start
``bad-rebuild``        the template used in iteration 0 is rebuilt wrongly
``malformed-helper``   the first chosen cut's hidden helper has two 1s
``anchor=I:R,C``       iteration I prints at padded-grid cell (R, C)
``template=I:T``       iteration I uses pile slot T
"""
from __future__ import annotations

import copy

from .pentominoes import Template
from .protocol import Layout, Placement, ProverScript
from .table import BLANK

SIMPLE = ("overlap", "forge-template", "bad-rebuild", "malformed-helper")


class CheatError(ValueError):
    pass


def corrupt(template: Template) -> Template:
    """The same template with its first non-blank card changed."""
    faces = [list(row) for row in template.faces]
    for row in faces:
        for c, face in enumerate(row):
            if face is not BLANK:
                row[c] = BLANK if face == 1 else 1
                return Template(template.p, template.q, tuple(map(tuple, faces)))
    faces[0][0] = 1
    return Template(template.p, template.q, tuple(map(tuple, faces)))


def _ints(text: str, count: int, directive: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", ":").split(":")]
    except ValueError:
        values = []
    if len(values) != count:
        raise CheatError(f"malformed cheat directive {directive!r}")
    return values


def apply_cheat(script: ProverScript, directive: str, layout: Layout) -> ProverScript:
    """A new script with ``directive`` applied; the input is left unchanged."""
    script = copy.deepcopy(script)
    placements = script.placements
    if directive == "overlap":
        if len(placements) < 2:
            raise CheatError("overlap needs at least two iterations")
        placements[1] = placements[0]
    elif directive == "forge-template":
        script.forged[0] = corrupt(layout.templates[0])
    elif directive == "bad-rebuild":
        script.rebuild[0] = corrupt(layout.templates[placements[0].template])
    elif directive == "malformed-helper":
        script.malformed_helper = True
    elif directive.startswith("anchor="):
        i, r, c = _ints(directive[len("anchor="):], 3, directive)
        _check_iteration(i, placements, directive)
        if not (0 <= r < layout.height and 0 <= c < layout.width):
            raise CheatError(f"anchor {(r, c)} outside the padded grid")
        placements[i] = Placement((r, c), placements[i].template)
    elif directive.startswith("template="):
        i, t = _ints(directive[len("template="):], 2, directive)
        _check_iteration(i, placements, directive)
        if not 0 <= t < len(layout.templates):
            raise CheatError(f"template slot {t} outside 0..{len(layout.templates) - 1}")
        placements[i] = Placement(placements[i].anchor, t)
    else:
        raise CheatError(f"unknown cheat directive {directive!r}")
    return script


def _check_iteration(i: int, placements: list, directive: str) -> None:
    if not 0 <= i < len(placements):
        raise CheatError(f"{directive!r}: iteration {i} outside 0..{len(placements) - 1}")
