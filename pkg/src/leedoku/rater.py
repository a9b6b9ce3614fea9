"""Human-style solver and the difficulty score / level pipeline.

The solver alternates a deterministic phase (naked singles exhausted, then
one hidden-single sweep, repeated to a fixed point) with a trial phase that
guesses at a uniformly chosen most-constrained cell.  A contradiction
reverts to the state before the guess and tries another candidate,
unwinding further when a cell's candidates run out.  Every digit placement
counts as an insertion, including placements that are later reverted; the
difficulty score of a puzzle is the mean insertion count over repeated
runs minus the number of initially blank cells.

Levels: easy = score 0, medium = score in (0, 10], hard = score > 10.
Easy is RNG-independent (the deterministic phase alone finishes).
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .minimal import Puzzle, _rng_next, _rng_seed
from .palette import PaletteGrid


class Contradiction(Exception):
    """A blank cell lost all candidates, or a digit lost all homes."""


class SolveState:
    """Mutable solving state: grid plus row/column/region used-masks."""

    def __init__(self, palette: PaletteGrid, grid0: np.ndarray):
        self.n = palette.n
        self.region = palette.region_ids()
        self.region_cells = region_cell_table(palette)
        self.grid = np.asarray(grid0, dtype=np.uint8).reshape(-1).copy()
        self.insertions = 0
        n = self.n
        self.rowm = np.zeros(n, dtype=np.int64)
        self.colm = np.zeros(n, dtype=np.int64)
        self.regm = np.zeros(n, dtype=np.int64)
        for c in range(n * n):
            v = int(self.grid[c])
            if v:
                self._mask(c, v, set=True)

    def _mask(self, cell: int, v: int, set: bool) -> None:
        bit = 1 << (v - 1)
        n = self.n
        if set:
            self.rowm[cell // n] |= bit
            self.colm[cell % n] |= bit
            self.regm[self.region[cell]] |= bit
        else:
            self.rowm[cell // n] &= ~bit
            self.colm[cell % n] &= ~bit
            self.regm[self.region[cell]] &= ~bit

    def candidates(self, cell: int) -> int:
        """Bitmask of playable values at a blank cell."""
        n = self.n
        full = (1 << n) - 1
        return full & ~(int(self.rowm[cell // n]) | int(self.colm[cell % n])
                        | int(self.regm[self.region[cell]]))

    def place(self, cell: int, v: int) -> None:
        self.grid[cell] = v
        self._mask(cell, v, set=True)
        self.insertions += 1

    def complete(self) -> bool:
        return not (self.grid == 0).any()

    def snapshot(self):
        return (self.grid.copy(), self.rowm.copy(), self.colm.copy(),
                self.regm.copy())

    def restore(self, snap) -> None:
        g, r, c, q = snap
        self.grid[:] = g
        self.rowm[:] = r
        self.colm[:] = c
        self.regm[:] = q


def region_cell_table(palette: PaletteGrid) -> np.ndarray:
    """(n, n) table of the flat cell indices of each 0-based region."""
    n = palette.n
    out = np.zeros((n, n), dtype=np.int64)
    fill = [0] * n
    for c, g in enumerate(palette.region_ids()):
        out[g, fill[g]] = c
        fill[g] += 1
    return out


def naked_single_pass(state: SolveState, strict: bool = True) -> list[tuple[int, int]]:
    """Place every blank cell whose candidate set is a singleton.

    Scans row-major with placements taking effect immediately; with strict
    (the default) an empty candidate set raises Contradiction, otherwise
    dead cells are skipped the way a place-if-single scan would.  Returns
    (cell, value) pairs.
    """
    placed = []
    for c in range(state.n * state.n):
        if state.grid[c] == 0:
            a = state.candidates(c)
            if a == 0:
                if strict:
                    raise Contradiction(f"cell {c} has no candidates")
                continue
            if a & (a - 1) == 0:
                v = a.bit_length()
                state.place(c, v)
                placed.append((c, v))
    return placed


def hidden_single_pass(state: SolveState, strict: bool = True) -> list[tuple[int, int]]:
    """For each unit and digit with a single possible home, place it.

    Unit order is rows, columns, regions (digits ascending within each).
    A missing digit with no home is a contradiction: raised immediately
    when strict, otherwise noted and raised once the current unit type
    finishes (its remaining deductions still count as placements).
    """
    n = state.n
    placed = []

    def scan(unit_cells, used_mask_of):
        dead = False
        for u in range(n):
            for v in range(1, n + 1):
                bit = 1 << (v - 1)
                if used_mask_of(u) & bit:
                    continue
                spots = [c for c in unit_cells(u)
                         if state.grid[c] == 0 and state.candidates(c) & bit]
                if not spots:
                    if strict:
                        raise Contradiction(f"digit {v} has no home in a unit")
                    dead = True
                elif len(spots) == 1:
                    state.place(spots[0], v)
                    placed.append((spots[0], v))
        if dead:
            raise Contradiction("a digit has no home in a unit")

    scan(lambda r: range(r * n, r * n + n), lambda r: int(state.rowm[r]))
    scan(lambda c: range(c, n * n, n), lambda c: int(state.colm[c]))
    scan(lambda g: [int(x) for x in state.region_cells[g]],
         lambda g: int(state.regm[g]))
    return placed


def deterministic_fixpoint(state: SolveState, strict: bool = True) -> SolveState:
    """Alternate the two passes until neither places anything."""
    while True:
        while naked_single_pass(state, strict=strict):
            pass
        if not hidden_single_pass(state, strict=strict):
            return state


@dataclass
class SolveTrace:
    insertions: int
    guesses: int
    backtracks: int
    solved: bool
    seed: int


def trial_solve(puzzle: Puzzle, seed: int = 0) -> SolveTrace:
    """One randomized solve of a uniquely solvable puzzle (pure Python).

    Bit-for-bit equivalent to the compiled batch solver; useful for traces
    and tests.  Uses the lenient pass semantics (see hidden_single_pass),
    so a wrong guess is noticed either by the hidden sweep or when the
    candidate analysis finds a dead cell at the next guess point.
    """
    state = SolveState(puzzle.palette, puzzle.grid0())
    rng = _rng_seed(seed)
    try:
        deterministic_fixpoint(state, strict=False)
    except Contradiction:
        return SolveTrace(state.insertions, 0, 0, False, seed)
    guesses = backtracks = 0
    stack: list[list] = []
    while not state.complete():
        n = state.n
        blanks = [c for c in range(n * n) if state.grid[c] == 0]
        counts = {c: bin(state.candidates(c)).count("1") for c in blanks}
        best = min(counts.values())
        if best == 0:
            # dead cell at candidate analysis: the last guess failed
            backtracks += 1
            if not stack:
                return SolveTrace(state.insertions, guesses, backtracks,
                                  False, seed)
        else:
            pool = [c for c in blanks if counts[c] == best]
            rng, r = _rng_next(rng)
            cell = pool[r % len(pool)]
            cands = [v for v in range(1, n + 1)
                     if state.candidates(cell) & (1 << (v - 1))]
            for i in range(len(cands) - 1, 0, -1):
                rng, r = _rng_next(rng)
                j = r % (i + 1)
                cands[i], cands[j] = cands[j], cands[i]
            stack.append([state.snapshot(), cell, cands, 0])
        while True:
            frame = stack[-1]
            snap, cell, cands, idx = frame
            if idx == len(cands):
                stack.pop()
                if not stack:
                    return SolveTrace(state.insertions, guesses, backtracks,
                                      False, seed)
                continue
            frame[3] += 1
            state.restore(snap)
            state.place(cell, cands[idx])
            guesses += 1
            try:
                deterministic_fixpoint(state, strict=False)
                break
            except Contradiction:
                backtracks += 1
    if puzzle.solution is not None:
        assert (state.grid == np.asarray(puzzle.solution).reshape(-1)).all()
    return SolveTrace(state.insertions, guesses, backtracks, True, seed)


@dataclass
class DifficultyReport:
    puzzle_id: str
    runs: int
    base_seed: int
    mean_insertions: float
    blanks: int

    @property
    def score(self) -> float:
        return self.mean_insertions - self.blanks

    @property
    def level(self) -> str:
        return level_for(self.score)


def level_for(score: float) -> str:
    if score == 0:
        return "easy"
    if score <= 10:
        return "medium"
    return "hard"


def difficulty_score(puzzle: Puzzle, runs: int = 100,
                     base_seed: int = 0) -> DifficultyReport:
    """Mean insertions over runs seeds (base_seed .. base_seed+runs-1)."""
    region = puzzle.palette.region_ids()
    rct = region_cell_table(puzzle.palette)
    n = puzzle.n
    g = puzzle.grid0()
    blanks = int((g == 0).sum())
    grid = g.copy()
    rowm = np.zeros(n, dtype=np.int64)
    colm = np.zeros(n, dtype=np.int64)
    regm = np.zeros(n, dtype=np.int64)
    for c in range(n * n):
        if grid[c]:
            bit = np.int64(1) << int(grid[c] - 1)
            rowm[c // n] |= bit
            colm[c % n] |= bit
            regm[region[c]] |= bit
    ins, ok = _kernels.fixpoint(grid, rowm, colm, regm, region, rct, n)
    if ok and (grid != 0).all():
        mean = float(blanks)
    else:
        total = 0
        for run in range(runs):
            i, _, _, solved = _kernels.trial_run(g, region, rct, n,
                                                 base_seed + run)
            if not solved:
                raise ValueError("puzzle is not uniquely solvable")
            total += int(i)
        mean = total / runs
    pid = puzzle.meta.get("id", f"k{puzzle.k}")
    return DifficultyReport(str(pid), runs, base_seed, mean, blanks)


def estimate_solve_time(report: DifficultyReport,
                        seconds_per_insertion: float = 5) -> float:
    """(blanks + score) * seconds per placement."""
    return (report.blanks + report.score) * seconds_per_insertion


@dataclass
class RatingRow:
    k: int
    easy: int
    medium: int
    hard: int

    @property
    def total(self) -> int:
        return self.easy + self.medium + self.hard


@dataclass
class RatingTable:
    rows: list[RatingRow]
    max_score: float
    runs: int
    base_seed: int

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["k", "easy", "medium", "hard", "total"])
            for r in self.rows:
                w.writerow([r.k, r.easy, r.medium, r.hard, r.total])

    def to_json(self) -> dict:
        return {"runs": self.runs, "base_seed": self.base_seed,
                "max_score": self.max_score,
                "rows": [{"k": r.k, "easy": r.easy, "medium": r.medium,
                          "hard": r.hard, "total": r.total}
                         for r in self.rows]}


def rate_census(palette: PaletteGrid, representatives,
                masks_by_k: dict[int, list[np.ndarray]],
                runs: int = 100, base_seed: int = 0,
                workers: int = 1) -> RatingTable:
    """Rate every minimal puzzle of a census; one table row per hint count.

    masks_by_k[k] holds, per representative, the hint-cell bitmasks of its
    minimal k-hint puzzles (as produced by minimal_census).
    """
    reps = np.stack([np.asarray(r, dtype=np.uint8).reshape(-1)
                     for r in representatives])
    region = palette.region_ids()
    rct = region_cell_table(palette)
    n = palette.n
    ncells = n * n
    rows = []
    max_score = 0.0
    for k in sorted(masks_by_k):
        per_rep = masks_by_k[k]
        rep_idx = np.concatenate([np.full(len(m), i, dtype=np.int64)
                                  for i, m in enumerate(per_rep)])
        masks = np.concatenate([np.asarray(m, dtype=np.int64)
                                for m in per_rep])
        P = len(masks)
        mean_ins = np.zeros(P, dtype=np.float64)
        easy = np.zeros(P, dtype=np.uint8)
        if workers > 1 and P > 256:
            bounds = np.linspace(0, P, workers + 1, dtype=np.int64)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futs = [pool.submit(_kernels.rate_batch, reps, rep_idx, masks,
                                    region, rct, n, runs, base_seed,
                                    mean_ins, easy, bounds[i], bounds[i + 1])
                        for i in range(workers)]
                for f in futs:
                    f.result()
        else:
            _kernels.rate_batch(reps, rep_idx, masks, region, rct, n, runs,
                                base_seed, mean_ins, easy, 0, P)
        blanks = ncells - k
        scores = mean_ins - blanks
        if P:
            max_score = max(max_score, float(scores.max()))
        n_easy = int(easy.sum())
        n_medium = int(((scores > 0) & (scores <= 10)).sum())
        n_hard = int((scores > 10).sum())
        rows.append(RatingRow(k, n_easy, n_medium, n_hard))
    return RatingTable(rows, max_score, runs, base_seed)
