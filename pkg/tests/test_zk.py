from collections import Counter

import pytest

from catalogue import FIG1, FIG1_SOL, FIG2, FIG2_SOL, fig1_cheats
from cardzkp import solver
from cardzkp.events import RevealCard, RevealRow
from cardzkp.fivecells import script_from_partition
from cardzkp.proofs import run
from cardzkp.protocol import PRINT
from cardzkp.puzzles import FiveCellsPuzzle
from cardzkp.table import RandomSource
from cardzkp.zk import (
    SiteTally,
    VerifierView,
    homogeneity_test,
    simulate,
    uniformity_test,
    zk_equivalence,
    zk_stats,
)

N = 300


def real_runs(puz, prover, n, offset=0):
    return [run(puz, prover, s + offset)[1] for s in range(n)]


def sim_runs(puz, n, offset=10_000):
    return [simulate(puz, s + offset) for s in range(n)]


@pytest.mark.parametrize("puz,part", [(FIG1, FIG1_SOL), (FIG2, FIG2_SOL)])
def test_simulated_structure_matches_real(puz, part):
    real = VerifierView(run(puz, part, 0)[1])
    sim = VerifierView(simulate(puz, 0))
    assert real.skeleton == sim.skeleton
    assert set(real.random_sites) == set(sim.random_sites)


def test_simulated_print_reveals_blank():
    t = simulate(FIG1, 4)
    prints = [e for e in t if isinstance(e, RevealCard) and e.pile == PRINT]
    assert len(prints) == 25 * FIG1.k and all(e.face is None for e in prints)


def test_simulated_anchor_uniformity():
    by_q = {}
    for s in range(250):
        for e in simulate(FIG1, s):
            if isinstance(e, RevealRow) and e.row == 1:
                by_q.setdefault(len(e.faces), []).append(e.faces.index(1))
    assert set(by_q) == {2, 63, 81}
    for q, values in by_q.items():
        assert uniformity_test(values, q)[1] > 0.001, q


def test_real_vs_sim_fig1():
    report = zk_equivalence(real_runs(FIG1, FIG1_SOL, N), sim_runs(FIG1, N))
    assert report.passed, report.render()
    assert not report.deterministic_mismatches


def test_real_vs_sim_fig2():
    report = zk_equivalence(real_runs(FIG2, FIG2_SOL, N), sim_runs(FIG2, N))
    assert report.passed, report.render()


def test_sim_vs_sim():
    assert zk_equivalence(sim_runs(FIG1, N, 0), sim_runs(FIG1, N, 5000)).passed


def test_permuted_region_order_is_indistinguishable():
    permuted = script_from_partition(FIG1, FIG1_SOL, [3, 1, 4, 0, 2])
    report = zk_equivalence(real_runs(FIG1, FIG1_SOL, N), real_runs(FIG1, permuted, N, 50_000))
    assert report.passed, report.render()


def multi_solution_puzzle():
    # drop clues from the reference Five Cells instance until the solver finds several solutions
    clues = dict(FIG1.clues)
    for cell in sorted(clues):
        del clues[cell]
        puz = FiveCellsPuzzle(5, 5, dict(clues))
        sols = solver.solve(puz, limit=2)
        if len(sols) == 2:
            return puz, sols
    raise AssertionError("no multi-solution instance found")


def test_solution_independence():
    puz, (a, b) = multi_solution_puzzle()
    assert a != b
    report = zk_equivalence(real_runs(puz, a, N), real_runs(puz, b, N, 70_000))
    assert report.passed, report.render()


class _Stuck(RandomSource):
    def uniform_shift(self, q):
        return 0


def test_biased_shuffle_is_detected():
    biased = [run(FIG1, FIG1_SOL, _Stuck(0))[1] for _ in range(50)]
    report = zk_equivalence(biased, sim_runs(FIG1, 200))
    assert not report.passed


def test_structural_mismatch_reported():
    cheat, _ = fig1_cheats()["clue-mismatch"]
    report = zk_equivalence(real_runs(FIG1, FIG1_SOL, 3), real_runs(FIG1, cheat, 3))
    assert report.deterministic_mismatches and not report.passed


def test_merge_equals_single_pass():
    runs = real_runs(FIG1, FIG1_SOL, 40)
    sims = sim_runs(FIG1, 40)
    whole = SiteTally()
    for t in runs:
        whole.add(t, "real")
    for t in sims:
        whole.add(t, "sim")
    left, right = SiteTally(), SiteTally()
    for t in runs[:15]:
        left.add(t, "real")
    for t in sims[:25]:
        left.add(t, "sim")
    for t in runs[15:]:
        right.add(t, "real")
    for t in sims[25:]:
        right.add(t, "sim")
    left.merge(right)
    assert left.values == whole.values and left.runs == whole.runs


def test_zk_stats_independent_of_jobs():
    script = script_from_partition(FIG1, FIG1_SOL)
    one = zk_stats(FIG1, script, 30, seed=5, jobs=1)
    three = zk_stats(FIG1, script, 30, seed=5, jobs=3)
    assert one.render() == three.render()


def test_homogeneity_edge_cases():
    assert homogeneity_test(Counter(), Counter({1: 3})) == (0.0, 1.0)
    assert homogeneity_test(Counter({0: 5}), Counter({0: 9})) == (0.0, 1.0)
    _, p = homogeneity_test(Counter({0: 100}), Counter({1: 100}))
    assert p < 1e-10
