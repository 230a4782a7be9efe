import itertools
import os
import random
import subprocess
import sys

import pytest

from cardzkp import exact_cover, solver
from cardzkp.puzzles import FiveCellsPuzzle, MeadowsPuzzle, Partition, validate


def naive_fivecells(puz):
    """All partitions from combinations of connected 5-subsets, checked cell by cell."""
    cells = [(r, c) for r in range(puz.m) for c in range(puz.n)]

    def connected(group):
        group = set(group)
        seen, todo = set(), [next(iter(group))]
        while todo:
            r, c = todo.pop()
            if (r, c) in seen:
                continue
            seen.add((r, c))
            todo += [x for x in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)) if x in group]
        return seen == group

    pieces = [g for g in itertools.combinations(cells, 5) if connected(g)]
    out = set()
    for combo in itertools.combinations(pieces, puz.k):
        covered = [x for g in combo for x in g]
        if len(set(covered)) != len(cells):
            continue
        owner = {x: i for i, g in enumerate(combo) for x in g}
        ok = True
        for (r, c), clue in puz.clues.items():
            borders = sum(owner.get(nb) != owner[(r, c)] for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)))
            ok &= borders == clue
        if ok:
            out.add(Partition.from_regions(puz.m, puz.n, [list(g) for g in combo]))
    return out


def naive_meadows(puz):
    n = puz.n
    squares = [
        frozenset((r, c) for r in range(r0, r0 + s) for c in range(c0, c0 + s))
        for s in range(1, n + 1)
        for r0 in range(n - s + 1)
        for c0 in range(n - s + 1)
    ]
    dots = set(puz.dots)
    squares = [q for q in squares if len(q & dots) == 1]
    out = set()
    for combo in itertools.combinations(squares, puz.k):
        if sum(map(len, combo)) == n * n and len(frozenset().union(*combo)) == n * n:
            out.add(Partition.from_regions(n, n, [sorted(q) for q in combo]))
    return out


def random_fivecells(rng, m, n):
    cells = [(r, c) for r in range(m) for c in range(n)]
    chosen = rng.sample(cells, rng.randint(0, 4))
    return FiveCellsPuzzle(m, n, {x: rng.randint(0, 3) for x in chosen})


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("shape", [(1, 5), (2, 5), (3, 5)])
def test_fivecells_solver_matches_naive(seed, shape):
    puz = random_fivecells(random.Random(seed * 31 + shape[0]), *shape)
    got = solver.solve(puz)
    assert set(got) == naive_fivecells(puz)
    assert len(got) == len(set(got))
    for part in got:
        assert validate(puz, part) == []


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_meadows_solver_matches_naive(seed, n):
    rng = random.Random(seed * 17 + n)
    cells = [(r, c) for r in range(n) for c in range(n)]
    puz = MeadowsPuzzle(n, tuple(rng.sample(cells, rng.randint(1, n * n))))
    got = solver.solve(puz)
    assert set(got) == naive_meadows(puz)
    for part in got:
        assert validate(puz, part) == []


def test_golden_solution_counts(fig1, fig2):
    for puz, part in (fig1, fig2):
        sols = solver.solve(puz)
        assert len(sols) == 1 == solver.count_solutions(puz)
        assert sols[0] == part.canonical()


@pytest.mark.parametrize("n,count", [(5, 4006), (6, 27950)])
def test_empty_grid_tiling_counts(n, count):
    assert solver.count_solutions(FiveCellsPuzzle(5, n, {})) == count


def test_limit():
    puz = FiveCellsPuzzle(5, 5, {})
    assert len(solver.solve(puz, limit=3)) == 3
    assert solver.count_solutions(puz, limit=10) == 10
    assert solver.count_solutions(puz, limit=0) == 0


@pytest.mark.skipif(exact_cover.compiled_search is None, reason="compiled kernel not built")
@pytest.mark.parametrize("limit", [None, 1, 7])
def test_backends_agree_in_order(limit):
    puz = FiveCellsPuzzle(5, 5, {(0, 0): 2})
    pl = solver.fivecells_placements(puz)
    assert exact_cover.compiled_search(25, pl, limit, True) == exact_cover.py_search(25, pl, limit, True)


@pytest.mark.parametrize("search", [f for f in (exact_cover.py_search, exact_cover.compiled_search) if f])
def test_search_edge_cases(search):
    assert search(0, [], None, True) == (1, [[]])
    assert search(2, [(0,), (1,), (0, 1)], None, True) == (2, [[0, 1], [2]])
    assert search(2, [(0,)], None, True) == (0, [])
    with pytest.raises(ValueError):
        search(2, [(0, 5)], None, True)


def test_pure_python_fallback_selected_by_env():
    code = "from cardzkp import exact_cover as e; print(e.BACKEND, e.search is e.py_search)"
    env = dict(os.environ, CARDZKP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "True"]
