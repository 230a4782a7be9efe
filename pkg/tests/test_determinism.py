from pathlib import Path

import pytest

from catalogue import FIG1, FIG1_SOL, FIG2, FIG2_SOL
from cardzkp.events import Transcript
from cardzkp.proofs import prove
from cardzkp.zk import simulate

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("name,puz,part", [("fig1", FIG1, FIG1_SOL), ("fig2", FIG2, FIG2_SOL)])
def test_golden_transcript(name, puz, part):
    expected = (GOLDEN / f"{name}_seed7.jsonl").read_bytes()
    _, transcript = prove(puz, part, 7)
    assert transcript.dumps().encode() == expected
    assert Transcript.loads(expected.decode()) == transcript


@pytest.mark.parametrize("seed", [0, 7, 2**64 - 1])
def test_same_seed_same_bytes(seed):
    assert prove(FIG1, FIG1_SOL, seed)[1].dumps() == prove(FIG1, FIG1_SOL, seed)[1].dumps()
    assert simulate(FIG2, seed).dumps() == simulate(FIG2, seed).dumps()


def test_different_seeds_differ():
    assert prove(FIG1, FIG1_SOL, 1)[1].dumps() != prove(FIG1, FIG1_SOL, 2)[1].dumps()
