"""Uniqueness solving, minimal puzzles, and the exhaustive minimal census.

A puzzle is a palette plus a hint map; a minimal puzzle has a unique
solution that any single hint removal destroys.  The order-5 census scans
every k-hint subset of each class-representative grid; uniqueness there is
decided against the full solution list of the palette via per-cell
agreement bitsets, which is what the backtracking counter would compute,
only thousands of times faster.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path

import numpy as np

from . import _kernels
from .palette import PaletteGrid
from .enumerator import enumerate_all_grids


@dataclass
class Puzzle:
    palette: PaletteGrid
    hints: dict[tuple[int, int], int]
    solution: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.hints)

    @property
    def n(self) -> int:
        return self.palette.n

    def blanks(self) -> int:
        return self.n * self.n - len(self.hints)

    def grid0(self) -> np.ndarray:
        """Flat uint8 grid, 0 for blank cells."""
        n = self.n
        g = np.zeros(n * n, dtype=np.uint8)
        for (r, c), v in self.hints.items():
            g[r * n + c] = v
        return g


def puzzle_from_grid(palette: PaletteGrid, grid, cells) -> Puzzle:
    """Puzzle keeping the given (row, col) cells of a solved grid as hints."""
    arr = np.asarray(grid, dtype=np.uint8)
    hints = {(r, c): int(arr[r, c]) for r, c in cells}
    return Puzzle(palette, hints, solution=arr.copy())


def count_solutions(puzzle: Puzzle, cap: int = 2) -> int:
    """Number of completions, saturated at cap; 0 if the hints clash."""
    if cap < 1:
        raise ValueError("cap must be positive")
    return int(_kernels.count_solutions_dfs(puzzle.grid0(),
                                            puzzle.palette.region_ids(),
                                            puzzle.n, cap))


def is_minimal(puzzle: Puzzle) -> bool:
    """Unique solution, and every single hint removal loses uniqueness."""
    if count_solutions(puzzle, cap=2) != 1:
        return False
    region = puzzle.palette.region_ids()
    n = puzzle.n
    g = puzzle.grid0()
    for (r, c) in puzzle.hints:
        g2 = g.copy()
        g2[r * n + c] = 0
        if _kernels.count_solutions_dfs(g2, region, n, 2) < 2:
            return False
    return True


@dataclass
class MinimalCensus:
    k: int
    per_class: list[int]                # minimal count per representative
    weights: list[int]                  # grids per class (orbit size * n!)
    masks: list[np.ndarray] | None      # per class, cell bitmasks of hints

    @property
    def up_to_equivalence(self) -> int:
        return sum(self.per_class)

    @property
    def total(self) -> int:
        return sum(c * w for c, w in zip(self.per_class, self.weights))


def _agreement_bitsets(solutions: np.ndarray, rep: np.ndarray):
    """Per-cell bitsets over the solution list: bit s = solution s matches
    the representative at that cell."""
    S, ncells = solutions.shape
    W = (S + 63) // 64
    agree = np.zeros((ncells, W), dtype=np.uint64)
    universe = np.zeros(W, dtype=np.uint64)
    for s in range(S):
        universe[s >> 6] |= np.uint64(1) << np.uint64(s & 63)
    match = solutions == rep[np.newaxis, :]
    for c in range(ncells):
        idx = np.nonzero(match[:, c])[0]
        for s in idx:
            agree[c, s >> 6] |= np.uint64(1) << np.uint64(s & 63)
    return agree, universe


def minimal_census(palette: PaletteGrid, representatives, weights,
                   k: int, collect_masks: bool = True,
                   solutions: np.ndarray | None = None) -> MinimalCensus:
    """Exhaustive minimal count over all k-hint subsets per representative.

    weights[i] is the number of grids the i-th representative stands for
    (its orbit size times n!); totals weight the per-class counts, the
    up-to-equivalence count sums them unweighted.
    """
    if solutions is None:
        solutions = enumerate_all_grids(palette)
    ncells = palette.n * palette.n
    per_class = []
    masks_out = [] if collect_masks else None
    for rep in representatives:
        rep_flat = np.asarray(rep, dtype=np.uint8).reshape(-1)
        agree, universe = _agreement_bitsets(solutions, rep_flat)
        cap = 1 << 22
        out = np.zeros(cap, dtype=np.int64)
        cnt = int(_kernels.minimal_scan(agree, universe, k, out, cap))
        if cnt > cap:
            raise RuntimeError("minimal_scan capacity exceeded")
        per_class.append(cnt)
        if collect_masks:
            masks_out.append(out[:cnt].copy())
    return MinimalCensus(k, per_class, list(weights), masks_out)


class KRangeError(RuntimeError):
    """Sampled minimal puzzle fell outside the requested hint range."""

    def __init__(self, k: int, lo: int, hi: int):
        super().__init__(f"minimal puzzle has k={k}, outside [{lo}, {hi}]")
        self.k = k


def sample_minimal(grid, palette: PaletteGrid, k_range=(10, 18),
                   seed: int = 0) -> Puzzle:
    """Greedy random hint removal from a solved grid until minimal.

    Removal order is a seed-determined shuffle; a hint is dropped whenever
    the puzzle stays uniquely solvable without it.  One pass suffices:
    removing hints only ever adds solutions, so a hint that could not be
    dropped earlier can never become droppable.  Raises KRangeError (retry
    with another seed) if the final hint count is out of range.
    """
    arr = np.asarray(grid, dtype=np.uint8)
    n = palette.n
    region = palette.region_ids()
    g = arr.reshape(-1).copy()
    order = list(range(n * n))
    state = _rng_seed(seed)
    for i in range(len(order) - 1, 0, -1):
        state, r = _rng_next(state)
        j = r % (i + 1)
        order[i], order[j] = order[j], order[i]
    for cell in order:
        keep = g[cell]
        g[cell] = 0
        if _kernels.count_solutions_dfs(g, region, n, 2) != 1:
            g[cell] = keep
    k = int(np.count_nonzero(g))
    lo, hi = k_range
    if not lo <= k <= hi:
        raise KRangeError(k, lo, hi)
    hints = {(c // n, c % n): int(g[c]) for c in range(n * n) if g[c]}
    return Puzzle(palette, hints, solution=arr.copy(),
                  meta={"k": k, "seed": seed})


def sample_minimal_retry(grid, palette: PaletteGrid, k_range=(10, 18),
                         seed: int = 0, attempts: int = 1000) -> Puzzle:
    """sample_minimal, retrying consecutive seeds until k lands in range."""
    for s in range(seed, seed + attempts):
        try:
            return sample_minimal(grid, palette, k_range, seed=s)
        except KRangeError:
            continue
    raise KRangeError(-1, *k_range)


# Pure Python twin of the kernels' RNG (seed mixing + xorshift64*).
_MASK64 = (1 << 64) - 1


def _rng_seed(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z or 0x9E3779B97F4A7C15


def _rng_next(state: int) -> tuple[int, int]:
    state ^= state >> 12
    state = (state ^ (state << 25)) & _MASK64
    state ^= state >> 27
    return state, (state * 0x2545F4914F6CDD1D) & _MASK64


# --- puzzle JSON ------------------------------------------------------------

PUZZLE_VERSION = 1


def puzzle_to_json(puzzle: Puzzle) -> dict:
    doc = {
        "version": PUZZLE_VERSION,
        "n": puzzle.n,
        "palette": [list(row) for row in puzzle.palette.cells],
        "hints": [{"r": r, "c": c, "v": v}
                  for (r, c), v in sorted(puzzle.hints.items())],
        "meta": dict(puzzle.meta),
    }
    doc["meta"].setdefault("k", puzzle.k)
    if puzzle.solution is not None:
        doc["solution"] = np.asarray(puzzle.solution).tolist()
    return doc


def puzzle_from_json(doc: dict) -> Puzzle:
    if doc.get("version") != PUZZLE_VERSION:
        raise ValueError(f"unsupported puzzle version {doc.get('version')}")
    n = int(doc["n"])
    cells = tuple(tuple(int(v) for v in row) for row in doc["palette"])
    if len(cells) != n or any(len(r) != n for r in cells):
        raise ValueError("palette shape does not match n")
    palette = PaletteGrid(n, cells, provenance=doc.get("meta", {}).get("code", ""))
    hints = {(int(h["r"]), int(h["c"])): int(h["v"]) for h in doc["hints"]}
    sol = None
    if "solution" in doc:
        sol = np.asarray(doc["solution"], dtype=np.uint8)
        if sol.shape != (n, n):
            raise ValueError("solution shape does not match n")
    return Puzzle(palette, hints, solution=sol, meta=dict(doc.get("meta", {})))


def save_puzzle(puzzle: Puzzle, path) -> None:
    Path(path).write_text(json.dumps(puzzle_to_json(puzzle), indent=1) + "\n")


def load_puzzle(path) -> Puzzle:
    return puzzle_from_json(json.loads(Path(path).read_text()))
