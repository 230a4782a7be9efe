from collections import Counter

import pytest

from cardzkp.events import PileShiftShuffle, PlacePublic, RevealCard, TurnFaceDown
from cardzkp.table import (
    BLANK,
    GroundTruthDisabled,
    HiddenFaceError,
    InvariantError,
    PileMatrix,
    RandomSource,
    ScriptedShifts,
    Table,
)
from cardzkp.zk import uniformity_test


@pytest.mark.parametrize("rows,cols", [(1, 1), (9, 9), (13, 13)])
def test_face_down_grid(rows, cols):
    table = Table(0)
    grid = table.new_face_down_grid(rows, cols, BLANK)
    cards = grid.cards()
    assert len(cards) == rows * cols
    assert not any(c.face_up for c in cards)
    assert [type(e) for e in table.transcript] == [PlacePublic, TurnFaceDown]
    assert table.transcript.events[1].count == rows * cols


def test_zero_dimension_rejected():
    with pytest.raises(ValueError):
        Table(0).new_face_down_grid(0, 3, BLANK)


def test_six_column_rotation_by_four():
    # columns 1..6, shift 4 brings column 5 to the front
    table = Table(ScriptedShifts([4]))
    m = PileMatrix([[[table.new_card(c)] for c in range(1, 7)] for _ in range(5)])
    table.pile_shifting_shuffle(m, "m")
    for row in m.rows:
        assert [s[0]._face for s in row] == [5, 6, 1, 2, 3, 4]
    assert table.transcript.events == [PileShiftShuffle("m", 6)]


def test_single_column_is_identity():
    table = Table(123)
    m = PileMatrix([[[table.new_card(1)]]])
    before = m.cards()
    table.pile_shifting_shuffle(m, "m")
    assert m.cards() == before


@pytest.mark.parametrize("cols", range(2, 9))
def test_shift_uniformity(cols):
    table = Table(1000 + cols, ground_truth=True)
    m = PileMatrix([[[table.new_card(0)] for _ in range(cols)]])
    for _ in range(6000):
        table.pile_shifting_shuffle(m, "m")
    shifts = [s for _, _, s in table.shift_log]
    _, p = uniformity_test(shifts, cols)
    assert p > 0.001


def test_six_columns_frequencies_near_1000():
    rng = RandomSource(42)
    counts = Counter(rng.uniform_shift(6) for _ in range(6000))
    assert set(counts) == set(range(6))
    assert all(800 < v < 1200 for v in counts.values())


def test_conservation_across_shuffles():
    table = Table(5)
    m = PileMatrix([[[table.new_card(i % 4), table.new_card(None)] for i in range(7)] for _ in range(3)])
    uids = sorted(c.uid for c in m.cards())
    for _ in range(50):
        table.pile_shifting_shuffle(m, "m")
        assert sorted(c.uid for c in m.cards()) == uids


def test_unequal_heights_is_internal_error():
    table = Table(0)
    m = PileMatrix([[[table.new_card(0)], [table.new_card(0), table.new_card(1)]]])
    with pytest.raises(InvariantError):
        table.pile_shifting_shuffle(m, "m")


def test_reveal_then_turn_down_round_trip():
    table = Table(0)
    card = table.new_card(2)
    with pytest.raises(HiddenFaceError):
        _ = card.face
    assert table.reveal_card(card, "grid", 0, "test", 2) == 2
    with pytest.raises(ValueError):
        table.reveal_card(card, "grid", 0, "test")
    table.turn_face_down([card], "grid")
    assert card._face == 2 and not card.face_up
    assert [type(e) for e in table.transcript] == [RevealCard, TurnFaceDown]


def test_ground_truth_is_opt_in():
    card_table = Table(0)
    with pytest.raises(GroundTruthDisabled):
        card_table.peek(card_table.new_card(1))
    assert Table(0, ground_truth=True).peek(Table(0).new_card(1)) == 1


def test_seed_range():
    with pytest.raises(ValueError):
        RandomSource(-1)
    with pytest.raises(ValueError):
        RandomSource(2**64)
    RandomSource(2**64 - 1)


def test_sequential_uids():
    table = Table(0)
    assert [table.new_card(None).uid for _ in range(4)] == [0, 1, 2, 3]
