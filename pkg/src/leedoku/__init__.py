"""Sudoku-type games from Lee-metric perfect and diameter perfect codes.

Pipeline: construct a code whose balls or anticodes tile Z_n^2, read the
tiling off as a palette grid, enumerate all Latin grids orthogonal to it,
classify them under the rigid motions that preserve the grid set, census
the minimal puzzles, and rate their difficulty with a human-style solver.
"""

from .lee_codes import (
    Code, CodeFamily, Point, PointSet, anticode, anticode_size_formula, ball,
    ball_size_formula, construct_diameter_code, construct_perfect_code,
    enumerate_diameter_codes, enumerate_perfect_codes, is_diameter_perfect,
    is_perfect, lee_distance, lee_weight, minimum_distance,
)
from .palette import (
    PaletteGrid, jigsaw_palette, palette_from_diameter, palette_from_perfect,
    standard_palette, validate_palette,
)
from .enumerator import (
    GridCensus, canonical_relabel, count_special, enumerate_all_grids,
    enumerate_canonical, is_latin, is_orthogonal, is_special, read_census,
)
from .symmetry import (
    OrbitReport, RigidMotion, SymmetryGroup, apply, classify, col_shift,
    generate_group, group_for_diameter, group_for_perfect, identity,
    orbit_members, reflection, report_table, rotation, row_shift,
    subgroup_reports,
)
from .minimal import (
    KRangeError, MinimalCensus, Puzzle, count_solutions, is_minimal,
    load_puzzle, minimal_census, puzzle_from_grid, puzzle_from_json,
    puzzle_to_json, sample_minimal, sample_minimal_retry, save_puzzle,
)
from .rater import (
    Contradiction, DifficultyReport, RatingTable, SolveState, SolveTrace,
    deterministic_fixpoint, difficulty_score, estimate_solve_time,
    hidden_single_pass, level_for, naked_single_pass, rate_census,
    trial_solve,
)

__version__ = "0.1.0"
