import random

import pytest

from catalogue import FIG1, FIG1_SOL, fig1_cheats
from cardzkp import fivecells, solver
from cardzkp.events import PileShiftShuffle, RevealCard, RevealRow, TemplateCheck, Verdict
from cardzkp.fivecells import peak_cards, prove_fivecells, run_fivecells, script_from_partition, shuffle_count
from cardzkp.protocol import GRID, PRINT
from cardzkp.puzzles import FiveCellsPuzzle, extended_solution

CHEATS = fig1_cheats()


@pytest.mark.parametrize("seed", range(25))
def test_fig1_accepted(seed):
    verdict, transcript = prove_fivecells(FIG1, FIG1_SOL, seed)
    assert verdict.accept
    assert transcript.verdict == verdict


def _corpus():
    rng = random.Random(2024)
    out = []
    for m, n in [(1, 5), (2, 5), (5, 2), (3, 5), (5, 3), (4, 5)]:
        puz = FiveCellsPuzzle(m, n, {})
        sols = solver.solve(puz)
        part = rng.choice(sols)
        ext = extended_solution(puz, part)
        clues = {(r, c): v for r, row in enumerate(ext) for c, v in enumerate(row) if rng.random() < 0.4}
        out.append((FiveCellsPuzzle(m, n, clues), part))
    return out


@pytest.mark.parametrize("puz,part", _corpus())
def test_corpus_completeness(puz, part):
    for seed in range(5):
        assert prove_fivecells(puz, part, seed)[0].accept


@pytest.mark.parametrize("name", sorted(CHEATS))
def test_cheats_rejected(name):
    script, reason = CHEATS[name]
    for seed in range(20):
        verdict, _ = prove_fivecells(FIG1, script, seed)
        assert verdict == Verdict(False, reason)


def test_anchor_outside_real_grid_is_caught():
    # shapes and clues cannot both survive once a region leaves the real grid
    script = script_from_partition(FIG1, FIG1_SOL)
    for r, c in [(5, 0), (0, 5), (6, 6)]:
        script.placements[4] = type(script.placements[4])((r, c), script.placements[4].template)
        assert not prove_fivecells(FIG1, script, 0)[0].accept


def test_fig1_accounting():
    verdict, transcript, table = run_fivecells(FIG1, FIG1_SOL, 7)
    assert verdict.accept
    assert transcript.count(PileShiftShuffle) == table.counters.shuffles == 270 == shuffle_count(FIG1)
    assert table.counters.printed == 25
    assert table.counters.peak == peak_cards(FIG1) == 1948


def test_non_disclosure():
    _, transcript, _ = run_fivecells(FIG1, FIG1_SOL, 11)
    grid_reveals = [e for e in transcript if isinstance(e, RevealCard) and e.pile == GRID]
    real = {r * 9 + c for r in range(5) for c in range(5)}
    clue_idx = {r * 9 + c: v for (r, c), v in FIG1.clues.items()}
    for e in grid_reveals:
        if e.index in real:
            assert e.purpose == "clue" and clue_idx[e.index] == e.face
        else:
            assert e.purpose == "dummy" and e.face is None
    assert len(grid_reveals) == len(FIG1.clues) + 81 - 25
    assert all(e.face is None for e in transcript if isinstance(e, RevealCard) and e.pile == PRINT)


def test_template_checks_identical_across_iterations():
    _, transcript, _ = run_fivecells(FIG1, FIG1_SOL, 3)
    checks = [e for e in transcript if isinstance(e, TemplateCheck)]
    assert len(checks) == FIG1.k + 1
    assert len({e.faces for e in checks}) == 1


def test_helper_reveals_have_a_single_one():
    _, transcript, _ = run_fivecells(FIG1, FIG1_SOL, 3)
    for e in transcript:
        if isinstance(e, RevealRow):
            assert sorted(e.faces)[-1] == 1 and sum(e.faces) == 1


@pytest.mark.parametrize("order", [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3]])
def test_any_region_order_accepted(order):
    script = script_from_partition(FIG1, FIG1_SOL, order)
    assert prove_fivecells(FIG1, script, 5)[0].accept


def test_information_barrier_scan():
    # no event field carries a shuffle amount; the shift log stays in the table
    _, transcript, table = run_fivecells(FIG1, FIG1_SOL, 9, ground_truth=True)
    assert len(table.shift_log) == 270
    names = {f for e in transcript for f in type(e).__dataclass_fields__}
    assert not {"shift", "offset", "secret", "anchor"} & names


def test_phantom_run_accepted():
    verdict, transcript, _ = run_fivecells(FIG1, fivecells.phantom_script(FIG1), 1, phantom=True)
    assert verdict.accept
