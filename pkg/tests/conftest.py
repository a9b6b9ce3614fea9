"""Shared fixtures: known-good matrices and session-scoped censuses.

The 5x5 and 8x8 palette/grid matrices below are fixed reference data for
the two worked cases (the linear codes over Z_5 and Z_8); tests compare
generated structures against them.  The large order-8 censuses are built
once per session; set LEEDOKU_CENSUS_DIR to a writable directory to reuse
them across sessions.
"""

from __future__ import annotations

import os
from math import factorial
from pathlib import Path

import numpy as np
import pytest

from leedoku.lee_codes import Point, construct_diameter_code, construct_perfect_code
from leedoku.palette import PaletteGrid, palette_from_diameter, palette_from_perfect
from leedoku.enumerator import GridCensus, enumerate_all_grids, enumerate_canonical, \
    read_census
from leedoku.symmetry import group_for_perfect, orbit_members

WORKERS = min(2, os.cpu_count() or 1)

# 5x5 palette of the linear code <(3,1)> over Z_5 (region i = ball of the
# i-th codeword in lexicographic order) and a grid orthogonal to it.
PALETTE_5 = [
    [1, 1, 2, 5, 1],
    [1, 2, 2, 2, 3],
    [3, 4, 2, 3, 3],
    [4, 4, 4, 5, 3],
    [1, 4, 5, 5, 5],
]

GRID_5 = [
    [4, 5, 1, 2, 3],
    [1, 2, 3, 4, 5],
    [3, 4, 5, 1, 2],
    [5, 1, 2, 3, 4],
    [2, 3, 4, 5, 1],
]

# 8x8 palette of the cyclic code <(1,3)> over Z_8 with cores one row down,
# region numbering by the anticode whose core starts at (3i, i).
PALETTE_8 = [
    [8, 8, 2, 3, 5, 5, 5, 8],
    [8, 8, 3, 3, 3, 5, 6, 8],
    [8, 1, 3, 3, 3, 6, 6, 6],
    [1, 1, 1, 3, 4, 6, 6, 6],
    [1, 1, 1, 4, 4, 4, 6, 7],
    [7, 1, 2, 4, 4, 4, 7, 7],
    [7, 2, 2, 2, 4, 5, 7, 7],
    [8, 2, 2, 2, 5, 5, 5, 7],
]

GRID_8 = [
    [2, 4, 6, 1, 5, 3, 8, 7],
    [8, 5, 3, 6, 4, 7, 2, 1],
    [6, 1, 2, 5, 7, 8, 4, 3],
    [4, 2, 7, 8, 3, 6, 1, 5],
    [5, 3, 8, 4, 2, 1, 7, 6],
    [1, 6, 4, 7, 8, 5, 3, 2],
    [7, 8, 1, 3, 6, 2, 5, 4],
    [3, 7, 5, 2, 1, 4, 6, 8],
]

# The two order-8 grids that work for every horizontal-core tiling code.
SPECIAL_8_A = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [4, 5, 6, 7, 8, 1, 2, 3],
    [7, 8, 1, 2, 3, 4, 5, 6],
    [2, 3, 4, 5, 6, 7, 8, 1],
    [5, 6, 7, 8, 1, 2, 3, 4],
    [8, 1, 2, 3, 4, 5, 6, 7],
    [3, 4, 5, 6, 7, 8, 1, 2],
    [6, 7, 8, 1, 2, 3, 4, 5],
]

SPECIAL_8_B = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [4, 7, 6, 1, 8, 3, 2, 5],
    [3, 8, 5, 2, 7, 4, 1, 6],
    [2, 1, 4, 3, 6, 5, 8, 7],
    [5, 6, 7, 8, 1, 2, 3, 4],
    [8, 3, 2, 5, 4, 7, 6, 1],
    [7, 4, 1, 6, 3, 8, 5, 2],
    [6, 5, 8, 7, 2, 1, 4, 3],
]

# Classical 9x9 box palette.
PALETTE_9_BOXES = [
    [1, 1, 1, 2, 2, 2, 3, 3, 3],
    [1, 1, 1, 2, 2, 2, 3, 3, 3],
    [1, 1, 1, 2, 2, 2, 3, 3, 3],
    [4, 4, 4, 5, 5, 5, 6, 6, 6],
    [4, 4, 4, 5, 5, 5, 6, 6, 6],
    [4, 4, 4, 5, 5, 5, 6, 6, 6],
    [7, 7, 7, 8, 8, 8, 9, 9, 9],
    [7, 7, 7, 8, 8, 8, 9, 9, 9],
    [7, 7, 7, 8, 8, 8, 9, 9, 9],
]

Z5_ORBITS_REF = {
    "rotation": {4: 3, 2: 1, 1: 3},
    "translation": {5: 3, 1: 2},
    "full": {10: 1, 5: 1, 1: 2},
}

MINIMAL_REF = {  # k: (minimal total, classes)
    4: (154_200, 507),
    5: (5_721_600, 14_860),
    6: (8_908_800, 19_096),
    7: (1_113_600, 1_296),
}

Z8_CASE1_ORBITS_REF = {
    "half_turn": {2: 3_467_680, 1: 4_736},
    "reflection": {2: 3_470_048},
    "translation": {8: 844_905, 4: 44_411, 2: 1_554, 1: 104},
    "full": {32: 202_658, 16: 26_927, 8: 2_906, 4: 236, 2: 8},
}

Z8_CASE2_ORBITS_REF = {
    "half_turn": {2: 2_418_613, 1: 1_901},
    "translation": {8: 603_554, 4: 2_601, 2: 132, 1: 27},
    "full": {16: 300_965, 8: 2_886, 4: 139, 2: 19, 1: 5},
}

DIFFICULTY_REF = {  # k: (easy, medium, hard)
    4: (219, 106, 182),
    5: (8_868, 4_274, 1_718),
    6: (11_270, 7_175, 651),
    7: (1_020, 274, 2),
}

Z8_CANONICAL = {"I": 6_940_096, "II": 4_839_127}


@pytest.fixture(scope="session")
def pal5_linear():
    return palette_from_perfect(construct_perfect_code(1, swap_coords=True))


@pytest.fixture(scope="session")
def pal5_translated():
    code = construct_perfect_code(1, offset=Point(2, 2, 5), swap_coords=True)
    return palette_from_perfect(code)


@pytest.fixture(scope="session")
def census5_linear(pal5_linear):
    return enumerate_canonical(pal5_linear)


@pytest.fixture(scope="session")
def census5_translated(pal5_translated):
    return enumerate_canonical(pal5_translated)


@pytest.fixture(scope="session")
def sols5_translated(pal5_translated):
    return enumerate_all_grids(pal5_translated)


@pytest.fixture(scope="session")
def group5():
    return group_for_perfect((2, 2), 3, 1, 5)


@pytest.fixture(scope="session")
def orbits5(census5_translated, group5):
    orbits = orbit_members(census5_translated, group5)
    orbits.sort(key=lambda o: (-len(o), o[0]))
    return orbits


@pytest.fixture(scope="session")
def reps5(census5_translated, orbits5):
    grids = census5_translated.grids()
    reps = [grids[o[0]].reshape(5, 5) for o in orbits5]
    weights = [len(o) * factorial(5) for o in orbits5]
    return reps, weights


@pytest.fixture(scope="session")
def pal8_case1():
    return palette_from_diameter(construct_diameter_code(1, 0))


@pytest.fixture(scope="session")
def pal8_case2():
    return palette_from_diameter(construct_diameter_code(1, 1))


def _census_dir(tmp_path_factory) -> Path:
    env = os.environ.get("LEEDOKU_CENSUS_DIR")
    if env:
        path = Path(env)
        path.mkdir(parents=True, exist_ok=True)
        return path
    return tmp_path_factory.mktemp("census")


def _build_census(palette, path: Path, expected_n: int) -> GridCensus:
    if path.exists():
        try:
            n, count, _ = read_census(path)
            if n == expected_n:
                return GridCensus(palette.provenance, n, count, path=path)
        except ValueError:
            pass
    return enumerate_canonical(palette, out_path=path, workers=WORKERS)


@pytest.fixture(scope="session")
def census8_case1(pal8_case1, tmp_path_factory):
    return _build_census(pal8_case1, _census_dir(tmp_path_factory) / "z8_case1.bin", 8)


@pytest.fixture(scope="session")
def census8_case2(pal8_case2, tmp_path_factory):
    return _build_census(pal8_case2, _census_dir(tmp_path_factory) / "z8_case2.bin", 8)
