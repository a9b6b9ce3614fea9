"""Exhaustive enumeration of Sudoku grids for a palette, plus the grid-level
validators (Latin, orthogonal, canonical relabeling, special grids).

A canonical grid has 1..n as its first row; every relabeling class of grids
contains exactly one canonical member, so censuses store canonical grids
only and total counts are canonical * n!.

Census file format (little-endian): magic "CDKU", version u8, n u8,
canonical_count u64, then canonical_count records of n*n bytes each
(symbols 1..n, row-major, in lexicographic record order).
"""

from __future__ import annotations

import hashlib
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from pathlib import Path

import numpy as np

from . import _kernels
from .lee_codes import Code
from .palette import PaletteGrid, palette_from_diameter, palette_from_perfect, \
    validate_palette

CENSUS_MAGIC = b"CDKU"
CENSUS_VERSION = 1
_HEADER = struct.Struct("<4sBBQ")


def is_latin(grid) -> bool:
    """Every row and column contains each of 1..n exactly once."""
    arr = np.asarray(grid)
    n = arr.shape[0]
    if arr.shape != (n, n):
        return False
    want = frozenset(range(1, n + 1))
    for i in range(n):
        if set(int(v) for v in arr[i, :]) != want:
            return False
        if set(int(v) for v in arr[:, i]) != want:
            return False
    return True


def is_orthogonal(grid, palette: PaletteGrid) -> bool:
    """The n^2 (palette symbol, grid symbol) pairs are pairwise distinct."""
    arr = np.asarray(grid)
    n = palette.n
    if arr.shape != (n, n):
        raise ValueError(f"grid shape {arr.shape} does not match order {n}")
    pairs = set()
    for r in range(n):
        for c in range(n):
            pairs.add((palette.cells[r][c], int(arr[r, c])))
    return len(pairs) == n * n


def canonical_relabel(grid) -> np.ndarray:
    """Relabel symbols so the first row reads 1..n; idempotent."""
    arr = np.asarray(grid, dtype=np.uint8)
    n = arr.shape[0]
    sigma = np.empty(n + 1, dtype=np.uint8)
    sigma[arr[0, :]] = np.arange(1, n + 1, dtype=np.uint8)
    return sigma[arr]


@dataclass
class GridCensus:
    """Canonical-grid census for one palette."""

    palette_id: str
    n: int
    canonical_count: int
    path: Path | None = None
    data: np.ndarray | None = None      # in-memory records, 1-based symbols

    @property
    def total_count(self) -> int:
        return self.canonical_count * factorial(self.n)

    def grids(self) -> np.ndarray:
        """(canonical_count, n*n) uint8 record array (memmapped if on disk)."""
        if self.data is not None:
            return self.data
        n, count, grids = read_census(self.path)
        return grids


def write_census(path, n: int, records) -> None:
    path = Path(path)
    with open(path, "wb") as f:
        f.write(_HEADER.pack(CENSUS_MAGIC, CENSUS_VERSION, n, len(records)))
        f.write(np.ascontiguousarray(records, dtype=np.uint8).tobytes())
    _write_checksum(path)


def read_census(path) -> tuple[int, int, np.ndarray]:
    path = Path(path)
    with open(path, "rb") as f:
        magic, version, n, count = _HEADER.unpack(f.read(_HEADER.size))
    if magic != CENSUS_MAGIC:
        raise ValueError(f"{path}: not a census file")
    if version != CENSUS_VERSION:
        raise ValueError(f"{path}: unsupported census version {version}")
    grids = np.memmap(path, dtype=np.uint8, mode="r", offset=_HEADER.size,
                      shape=(count, n * n))
    return n, count, grids


def _write_checksum(path: Path) -> None:
    # content address for staleness checks, kept beside the binary
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    path.with_suffix(path.suffix + ".sha256").write_text(digest + "\n")


def census_checksum_ok(path) -> bool:
    path = Path(path)
    side = path.with_suffix(path.suffix + ".sha256")
    if not side.exists():
        return True
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    return side.read_text().strip() == digest


def _seeded_state(palette: PaletteGrid, prefix_rows: np.ndarray):
    """Grid + masks reflecting the fixed prefix rows (0-based values)."""
    n = palette.n
    region = palette.region_ids()
    grid = np.zeros(n * n, dtype=np.uint8)
    rowm = np.zeros(n, dtype=np.int64)
    colm = np.zeros(n, dtype=np.int64)
    regm = np.zeros(n, dtype=np.int64)
    flat = prefix_rows.reshape(-1)
    for c, v in enumerate(flat):
        bit = np.int64(1) << int(v)
        grid[c] = v
        rowm[c // n] |= bit
        colm[c % n] |= bit
        regm[region[c]] |= bit
    return region, grid, rowm, colm, regm


def _row1_prefixes(palette: PaletteGrid) -> np.ndarray:
    """All valid second rows given the identity first row (0-based)."""
    n = palette.n
    row0 = np.arange(n, dtype=np.uint8)
    region, grid, rowm, colm, regm = _seeded_state(palette, row0)
    cap = factorial(n)
    out = np.zeros((cap, 2 * n), dtype=np.uint8)
    count = _kernels.search(n, region, grid, rowm, colm, regm, n, 2 * n, out, cap)
    return out[:count, n:2 * n].copy()


def _solve_prefix(palette: PaletteGrid, row1: np.ndarray, cap: int) -> np.ndarray:
    """All canonical grids extending identity-row0 + the given row1."""
    n = palette.n
    ncells = n * n
    row0 = np.arange(n, dtype=np.uint8)
    prefix = np.concatenate([row0, row1])
    while True:
        region, grid, rowm, colm, regm = _seeded_state(palette, prefix)
        out = np.zeros((cap, ncells), dtype=np.uint8)
        count = _kernels.search(n, region, grid, rowm, colm, regm,
                                2 * n, ncells, out, cap)
        if count <= cap:
            return out[:count]
        cap = count


def enumerate_canonical(palette: PaletteGrid, out_path=None,
                        workers: int = 1, prefix_cap: int = 1 << 16) -> GridCensus:
    """Stream every canonical Latin grid orthogonal to the palette.

    The search fixes row 0 to 1..n and splits work on valid row-1 prefixes;
    per-prefix outputs are merged in prefix order, so the record stream is
    in lexicographic order regardless of worker count.
    """
    if not validate_palette(palette):
        raise ValueError("not a palette grid (symbol counts are off)")
    n = palette.n
    prefixes = _row1_prefixes(palette)

    def job(row1):
        return _solve_prefix(palette, row1, prefix_cap)

    chunks: list[np.ndarray] = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for arr in pool.map(job, prefixes):
                chunks.append(arr)
    else:
        for row1 in prefixes:
            chunks.append(job(row1))

    count = sum(len(c) for c in chunks)
    if out_path is not None:
        out_path = Path(out_path)
        with open(out_path, "wb") as f:
            f.write(_HEADER.pack(CENSUS_MAGIC, CENSUS_VERSION, n, count))
            for arr in chunks:
                if len(arr):
                    f.write((arr + 1).astype(np.uint8).tobytes())
        _write_checksum(out_path)
        return GridCensus(palette.provenance, n, count, path=out_path)
    if count:
        data = np.concatenate(chunks) + 1
    else:
        data = np.zeros((0, n * n), dtype=np.uint8)
    return GridCensus(palette.provenance, n, count, data=data.astype(np.uint8))


def enumerate_all_grids(palette: PaletteGrid, cap: int = 1 << 22) -> np.ndarray:
    """Every grid for the palette, no canonicalization (small orders only).

    Returns (count, n*n) uint8 with 1-based symbols, lexicographically
    sorted.  Refuses orders above 6; larger solution spaces do not fit.
    """
    n = palette.n
    if n > 6:
        raise ValueError("full grid enumeration is for orders <= 6")
    region = palette.region_ids()
    grid = np.zeros(n * n, dtype=np.uint8)
    rowm = np.zeros(n, dtype=np.int64)
    colm = np.zeros(n, dtype=np.int64)
    regm = np.zeros(n, dtype=np.int64)
    # search() needs one placed prefix cell; branch on cell 0 explicitly
    outs = []
    for v0 in range(n):
        g = grid.copy()
        rm, cm, gm = rowm.copy(), colm.copy(), regm.copy()
        g[0] = v0
        bit = np.int64(1) << v0
        rm[0] |= bit
        cm[0] |= bit
        gm[region[0]] |= bit
        out = np.zeros((cap, n * n), dtype=np.uint8)
        cnt = _kernels.search(n, region, g, rm, cm, gm, 1, n * n, out, cap)
        if cnt > cap:
            raise RuntimeError("cap exceeded in full enumeration")
        outs.append(out[:cnt])
    return np.concatenate(outs) + 1


def family_palettes(family: list[Code]) -> list[PaletteGrid]:
    from .lee_codes import CodeFamily
    return [palette_from_perfect(code) if code.family is CodeFamily.PERFECT
            else palette_from_diameter(code) for code in family]


def is_special(grid, family: list[Code]) -> bool:
    """True iff the grid is a Sudoku grid for every code in the family."""
    if not is_latin(grid):
        return False
    return all(is_orthogonal(grid, p) for p in family_palettes(family))


@dataclass
class SpecialCount:
    canonical_hits: np.ndarray          # (hits, n*n) canonical special grids
    total: int                          # hits * n!


def count_special(census: GridCensus, family: list[Code],
                  workers: int = 1) -> SpecialCount:
    """Census grids orthogonal to every family palette; total counts all
    relabelings."""
    grids = census.grids()
    n = census.n
    fam_regions = np.stack([p.region_ids() for p in family_palettes(family)])
    flags = np.zeros(len(grids), dtype=np.uint8)
    if workers > 1 and len(grids) > 1 << 16:
        bounds = np.linspace(0, len(grids), workers + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_kernels.special_flags, grids, fam_regions,
                                n, flags, bounds[i], bounds[i + 1])
                    for i in range(workers)]
            for f in futs:
                f.result()
    else:
        _kernels.special_flags(grids, fam_regions, n, flags, 0, len(grids))
    hits = np.nonzero(flags)[0]
    return SpecialCount(np.array(grids[hits]), int(len(hits)) * factorial(n))
