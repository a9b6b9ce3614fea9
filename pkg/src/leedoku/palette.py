"""Palette grids: the region structures of Sudoku-type games.

A palette grid of order n is an n x n array over 1..n in which every symbol
occupies exactly n cells; its preimage partition plays the role the 3x3
boxes play in the classical game.  Palettes here come from four sources:
radius-t balls of a perfect code, core-anchored anticodes of a diameter
perfect code, the classical b x b box pattern, and a fixed irregular
(jigsaw) 9x9 fixture used for validator tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lee_codes import Code, Point, anticode, ball, default_core_offset, \
    is_diameter_perfect, is_perfect


@dataclass(frozen=True)
class PaletteGrid:
    """Order-n array of region symbols 1..n, each appearing n times."""

    n: int
    cells: tuple[tuple[int, ...], ...]
    provenance: str = ""

    def regions(self) -> dict[int, frozenset[tuple[int, int]]]:
        """Preimage partition: symbol -> set of (row, col) it occupies."""
        out: dict[int, set[tuple[int, int]]] = {k: set() for k in range(1, self.n + 1)}
        for r, row in enumerate(self.cells):
            for c, sym in enumerate(row):
                out[sym].add((r, c))
        return {k: frozenset(v) for k, v in out.items()}

    def region_ids(self) -> np.ndarray:
        """Flat per-cell region indices 0..n-1 (row-major), for kernels."""
        arr = np.array(self.cells, dtype=np.uint8) - 1
        return arr.reshape(-1)

    def as_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.uint8)


def _grid_to_cells(grid) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in grid)


def validate_palette(p: PaletteGrid) -> bool:
    """True iff every symbol 1..n appears exactly n times."""
    counts = [0] * (p.n + 1)
    for row in p.cells:
        if len(row) != p.n:
            return False
        for sym in row:
            if not 1 <= sym <= p.n:
                return False
            counts[sym] += 1
    return all(c == p.n for c in counts[1:])


def palette_from_perfect(code: Code) -> PaletteGrid:
    """Palette whose region i is the radius-t ball of the i-th codeword.

    Codewords are numbered 1..n in (row, col) lexicographic order.
    """
    if not is_perfect(code):
        raise ValueError("code's balls do not tile Z_n^2")
    n = code.n
    grid = [[0] * n for _ in range(n)]
    for i, c in enumerate(code.codewords, start=1):
        for p in ball(c, code.t):
            grid[p.x][p.y] = i
    return PaletteGrid(n, _grid_to_cells(grid),
                       provenance=f"perfect t={code.t} offset={code.offset.coords()}")


def palette_from_diameter(code: Code, core_offset: Point | None = None) -> PaletteGrid:
    """Palette whose region i is the anticode anchored at the i-th codeword."""
    n = code.n
    if core_offset is None:
        core_offset = default_core_offset(n)
    if not is_diameter_perfect(code, core_offset):
        raise ValueError("code's anticode translates do not tile Z_n^2")
    grid = [[0] * n for _ in range(n)]
    for i, c in enumerate(code.codewords, start=1):
        for p in anticode((c, c + core_offset), code.t):
            grid[p.x][p.y] = i
    return PaletteGrid(n, _grid_to_cells(grid),
                       provenance=f"diameter t={code.t} {code.family.value} "
                                  f"offset={code.offset.coords()} "
                                  f"core={core_offset.coords()}")


def standard_palette(b: int) -> PaletteGrid:
    """The classical order-b^2 palette of b x b boxes."""
    if b < 2:
        raise ValueError("box side must be at least 2")
    n = b * b
    grid = [[(r // b) * b + (c // b) + 1 for c in range(n)] for r in range(n)]
    return PaletteGrid(n, _grid_to_cells(grid), provenance=f"standard b={b}")


# Irregular 9x9 region fixture; exercises the validator and solver on a
# palette with no code structure behind it.
_JIGSAW_9 = (
    (1, 1, 1, 1, 2, 2, 3, 3, 3),
    (1, 1, 1, 2, 2, 3, 3, 3, 3),
    (1, 4, 2, 2, 5, 3, 6, 3, 6),
    (1, 4, 2, 5, 5, 5, 6, 6, 6),
    (4, 4, 2, 2, 5, 5, 5, 5, 6),
    (4, 4, 7, 7, 7, 7, 9, 5, 6),
    (4, 4, 7, 8, 7, 7, 9, 6, 6),
    (4, 8, 7, 8, 8, 7, 9, 9, 9),
    (8, 8, 8, 8, 8, 9, 9, 9, 9),
)


def jigsaw_palette() -> PaletteGrid:
    """A fixed irregular 9x9 palette (read-only fixture)."""
    return PaletteGrid(9, _JIGSAW_9, provenance="jigsaw fixture")
