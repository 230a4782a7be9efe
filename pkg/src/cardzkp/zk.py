"""Simulators that never see a solution, and statistical comparison of verifier views.

A transcript is split event-by-event into a deterministic skeleton and,
at the position-uniform sites (helper-row reveals, realignment offsets,
printing-cut positions), a random value. Two transcript populations are
equivalent when every skeleton matches exactly and every random site
passes a chi-square homogeneity test at a Bonferroni-corrected level.
"""
from __future__ import annotations

import dataclasses
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from scipy import stats

from .events import CyclicRealign, RemoveCard, RevealCard, RevealRow, Transcript
from .fivecells import run_fivecells
from .fivecells import phantom_script as fivecells_phantom
from .meadows import phantom_script as meadows_phantom
from .meadows import run_meadows
from .protocol import PRINT
from .puzzles import FiveCellsPuzzle, MeadowsPuzzle, Puzzle

ARMS = ("real", "sim")


def simulate_fivecells(puz: FiveCellsPuzzle, seed: int) -> Transcript:
    """An accepting verifier view produced from the puzzle alone."""
    return run_fivecells(puz, fivecells_phantom(puz), seed, phantom=True)[1]


def simulate_meadows(puz: MeadowsPuzzle, seed: int) -> Transcript:
    return run_meadows(puz, meadows_phantom(puz), seed, phantom=True)[1]


def simulate(puz: Puzzle, seed: int) -> Transcript:
    if isinstance(puz, FiveCellsPuzzle):
        return simulate_fivecells(puz, seed)
    return simulate_meadows(puz, seed)


def split_event(event):
    """``(skeleton, random_value)``; the value is None at deterministic sites."""
    kind = type(event)
    if kind is RevealRow:
        return (kind, event.pile, event.row, len(event.faces)), event.faces.index(1) if 1 in event.faces else -1
    if kind is CyclicRealign:
        return (kind, event.pile), event.offset_observed
    if kind in (RevealCard, RemoveCard) and event.pile == PRINT:
        return dataclasses.replace(event, index=-1), event.index
    return event, None


class VerifierView:
    """A transcript annotated with which events are position-uniform sites."""

    def __init__(self, transcript: Transcript):
        self.transcript = transcript
        self.skeleton = []
        self.random_sites: dict[int, int] = {}
        for i, event in enumerate(transcript):
            skel, value = split_event(event)
            self.skeleton.append(skel)
            if value is not None:
                self.random_sites[i] = value


@dataclass
class SiteResult:
    index: int
    label: str
    counts: dict  # arm -> Counter
    statistic: float
    p_value: float
    passed: bool


@dataclass
class DistributionReport:
    alpha: float
    threshold: float  # per-site level after Bonferroni correction
    runs: dict
    sites: list = field(default_factory=list)
    deterministic_mismatches: list = field(default_factory=list)  # (index, description)

    @property
    def passed(self) -> bool:
        return not self.deterministic_mismatches and all(s.passed for s in self.sites)

    @property
    def min_p_value(self) -> float:
        return min((s.p_value for s in self.sites), default=1.0)

    def render(self) -> str:
        lines = [
            f"runs: {', '.join(f'{arm}={n}' for arm, n in self.runs.items())}",
            f"alpha: {self.alpha} (per site {self.threshold:.3g}, {len(self.sites)} random sites)",
            f"deterministic mismatches: {len(self.deterministic_mismatches)}",
        ]
        for idx, what in self.deterministic_mismatches[:10]:
            lines.append(f"  event {idx}: {what}")
        failing = [s for s in self.sites if not s.passed]
        lines.append(f"random sites failing: {len(failing)}")
        for s in failing[:10]:
            lines.append(f"  event {s.index} {s.label}: chi2={s.statistic:.2f} p={s.p_value:.3g}")
        lines.append(f"min p-value: {self.min_p_value:.3g}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


class SiteTally:
    """Streaming per-site counts over two transcript populations."""

    def __init__(self):
        self.skeleton: Optional[list] = None
        self.values: dict[int, dict[str, Counter]] = {}
        self.runs = {arm: 0 for arm in ARMS}
        self.mismatches: list[tuple[int, str]] = []

    def add(self, transcript: Transcript, arm: str) -> None:
        view = VerifierView(transcript)
        self.runs[arm] += 1
        if self.skeleton is None:
            self.skeleton = view.skeleton
            for i in view.random_sites:
                self.values[i] = {a: Counter() for a in ARMS}
        elif view.skeleton != self.skeleton:
            self._note_mismatch(view.skeleton, arm)
            return
        for i, value in view.random_sites.items():
            self.values[i][arm][value] += 1

    def _note_mismatch(self, skeleton, arm) -> None:
        ref = self.skeleton
        for i, (a, b) in enumerate(zip(ref, skeleton)):
            if a != b:
                self.mismatches.append((i, f"{arm} run differs: {b!r} vs {a!r}"))
                return
        self.mismatches.append((min(len(ref), len(skeleton)), f"{arm} run length {len(skeleton)} vs {len(ref)}"))

    def merge(self, other: "SiteTally") -> None:
        if other.skeleton is None:
            return
        if self.skeleton is None:
            self.skeleton = other.skeleton
            self.values = {i: {a: Counter() for a in ARMS} for i in other.values}
        elif other.skeleton != self.skeleton:
            self._note_mismatch(other.skeleton, "merged")
            return
        for arm in ARMS:
            self.runs[arm] += other.runs[arm]
        for i, arms in other.values.items():
            for arm in ARMS:
                self.values[i][arm].update(arms[arm])
        self.mismatches.extend(other.mismatches)

    def report(self, alpha: float) -> DistributionReport:
        n_sites = max(len(self.values), 1)
        threshold = alpha / n_sites
        report = DistributionReport(alpha, threshold, dict(self.runs), deterministic_mismatches=list(self.mismatches))
        for i in sorted(self.values):
            counts = self.values[i]
            stat, p = homogeneity_test(counts["real"], counts["sim"])
            skel = self.skeleton[i]
            label = f"{skel[0].__name__}{list(skel[1:])}" if isinstance(skel, tuple) else type(skel).__name__
            report.sites.append(SiteResult(i, label, counts, stat, p, p > threshold))
        return report


def homogeneity_test(a: Counter, b: Counter) -> tuple[float, float]:
    """Pearson chi-square test that two categorical samples share a distribution."""
    categories = sorted(set(a) | set(b))
    if len(categories) < 2 or not sum(a.values()) or not sum(b.values()):
        return 0.0, 1.0
    table = [[a[c] for c in categories], [b[c] for c in categories]]
    result = stats.chi2_contingency(table, correction=False)
    return float(result.statistic), float(result.pvalue)


def uniformity_test(values: Iterable[int], q: int) -> tuple[float, float]:
    """Chi-square goodness of fit of ``values`` against uniform on 0..q-1."""
    counts = Counter(values)
    observed = [counts.get(j, 0) for j in range(q)]
    if q < 2:
        return 0.0, 1.0
    result = stats.chisquare(observed)
    return float(result.statistic), float(result.pvalue)


def zk_equivalence(real: Iterable[Transcript], sim: Iterable[Transcript], alpha: float = 0.001) -> DistributionReport:
    tally = SiteTally()
    for t in real:
        tally.add(t, "real")
    for t in sim:
        tally.add(t, "sim")
    return tally.report(alpha)


def _tally_chunk(puz: Puzzle, script, seeds: range, sim_offset: int) -> SiteTally:
    tally = SiteTally()
    for s in seeds:
        tally.add(_run(puz, script, s, phantom=False), "real")
        tally.add(simulate(puz, s + sim_offset), "sim")
    return tally


def _run(puz, script, seed, phantom):
    runner = run_fivecells if isinstance(puz, FiveCellsPuzzle) else run_meadows
    return runner(puz, script, seed, phantom=phantom)[1]


def zk_stats(puz: Puzzle, prover, runs: int, alpha: float = 0.001, seed: int = 0, jobs: int = 1) -> DistributionReport:
    """Compare ``runs`` real transcripts of ``prover`` against ``runs`` simulated ones.

    Real runs use seeds ``seed .. seed+runs-1``, simulated runs the next
    ``runs`` seeds. With ``jobs > 1`` chunks run on a thread pool and their
    tallies are merged; the result does not depend on ``jobs``.
    """
    jobs = max(1, min(jobs, runs))
    bounds = [seed + runs * j // jobs for j in range(jobs + 1)]
    chunks = [range(bounds[j], bounds[j + 1]) for j in range(jobs)]
    if jobs == 1:
        tallies = [_tally_chunk(puz, prover, chunks[0], runs)]
    else:
        with ThreadPoolExecutor(jobs) as pool:
            tallies = list(pool.map(lambda ch: _tally_chunk(puz, prover, ch, runs), chunks))
    total = SiteTally()
    for t in tallies:
        total.merge(t)
    return total.report(alpha)
