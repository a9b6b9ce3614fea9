"""Command-line surface: construct codes/palettes, enumerate censuses,
classify orbits, run the minimal census, rate puzzles, export play bundles.

Every command is reproducible: the same arguments and seed give byte
identical primary outputs (logs go to stderr).  Golden-value files passed
via --expect turn any count into a checked assertion (nonzero exit on
mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import factorial
from pathlib import Path

import numpy as np

from . import enumerator, minimal, rater, symmetry
from .lee_codes import Code, CodeFamily, Point, construct_diameter_code, \
    construct_perfect_code, is_diameter_perfect, is_perfect, minimum_distance
from .palette import PaletteGrid, palette_from_diameter, palette_from_perfect, \
    standard_palette, validate_palette

FORMAT_VERSION = 1


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 1


# --- code / palette serialization -------------------------------------------

def code_to_json(code: Code) -> dict:
    return {
        "version": FORMAT_VERSION,
        "n": code.n,
        "t": code.t,
        "family": code.family.value,
        "offset": list(code.offset.coords()),
        "generator": [list(r) for r in code.generator],
        "codewords": [list(c.coords()) for c in code.codewords],
    }


def palette_to_json(palette: PaletteGrid, code: Code | None = None) -> dict:
    doc = {
        "version": FORMAT_VERSION,
        "n": palette.n,
        "cells": [list(r) for r in palette.cells],
        "provenance": palette.provenance,
    }
    if code is not None:
        doc["code"] = code_to_json(code)
    return doc


def palette_from_json(doc: dict) -> tuple[PaletteGrid, dict | None]:
    n = int(doc["n"])
    cells = tuple(tuple(int(v) for v in row) for row in doc["cells"])
    pal = PaletteGrid(n, cells, provenance=doc.get("provenance", ""))
    if not validate_palette(pal):
        raise ValueError("file does not contain a valid palette grid")
    return pal, doc.get("code")


def load_palette(path) -> tuple[PaletteGrid, dict | None]:
    return palette_from_json(json.loads(Path(path).read_text()))


def _dump(doc: dict, path: Path) -> None:
    path.write_text(json.dumps(doc, indent=1) + "\n")


# --- group resolution from code metadata -------------------------------------

def named_groups(code_doc: dict) -> list[tuple[str, symmetry.SymmetryGroup]]:
    """The census subgroups for a palette's code, in report order."""
    n = int(code_doc["n"])
    t = int(code_doc["t"])
    x = tuple(code_doc["offset"])
    family = code_doc["family"]
    if family == CodeFamily.PERFECT.value:
        a, b = code_doc["generator"][0]
        full = symmetry.group_for_perfect(x, a, b, n)
        phi = (symmetry.col_shift(n, (x[0] + x[1] + 1) % n)
               @ symmetry.row_shift(n, (x[0] - x[1]) % n)
               @ symmetry.rotation(n))
        trans = symmetry.row_shift(n, a % n) @ symmetry.col_shift(n, b % n)
        return [("rotation", symmetry.generate_group([phi])),
                ("translation", symmetry.generate_group([trans])),
                ("full", full)]
    half = (symmetry.row_shift(n, (2 * x[0] + 2) % n)
            @ symmetry.col_shift(n, (2 * x[1] + 1) % n)
            @ symmetry.rotation(n) ** 2)
    if family == CodeFamily.DIAMETER_I.value:
        flip = symmetry.col_shift(n, (2 * x[1] + 1) % n) @ symmetry.reflection(n)
        trans = [symmetry.row_shift(n, t + 1) @ symmetry.col_shift(n, t + 1),
                 symmetry.col_shift(n, 2 * (t + 1))]
        return [("half_turn", symmetry.generate_group([half])),
                ("reflection", symmetry.generate_group([flip])),
                ("translation", symmetry.generate_group(trans)),
                ("full", symmetry.group_for_diameter("I", x, t))]
    if family == CodeFamily.DIAMETER_II.value:
        a, b = code_doc["generator"][-1]
        trans = symmetry.row_shift(n, a % n) @ symmetry.col_shift(n, b % n)
        return [("half_turn", symmetry.generate_group([half])),
                ("translation", symmetry.generate_group([trans])),
                ("full", symmetry.group_for_diameter("II", x, t, a=a, b=b))]
    raise ValueError(f"unknown code family {family!r}")


# --- commands ----------------------------------------------------------------

def cmd_construct(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.perfect:
        t = args.t
        n = 2 * t * t + 2 * t + 1
        offset = Point(*_parse_pair(args.offset), n) if args.offset else None
        code = construct_perfect_code(t, offset=offset, swap_coords=args.swap)
        ok = is_perfect(code)
        palette = palette_from_perfect(code) if ok else None
        kind = "perfect"
    else:
        t = args.t
        n = 2 * (t + 1) * (t + 1)
        offset = Point(*_parse_pair(args.offset), n) if args.offset else None
        i = 0 if args.case == "I" else 1
        code = construct_diameter_code(t, i, offset=offset)
        ok = is_diameter_perfect(code)
        palette = palette_from_diameter(code) if ok else None
        kind = f"diameter case {args.case}"
    d = minimum_distance(code)
    _log(f"{kind} code over Z_{code.n}: {len(code)} codewords, "
         f"minimum distance {d}, tiling {'verified' if ok else 'FAILED'}")
    if not ok:
        return _fail("constructed code does not tile the torus")
    _dump(code_to_json(code), out / "code.json")
    _dump(palette_to_json(palette, code), out / "palette.json")
    _log(f"wrote {out / 'code.json'} and {out / 'palette.json'}")
    return 0


def _parse_pair(text: str) -> tuple[int, int]:
    r, c = text.split(",")
    return int(r), int(c)


def _check_expect(actual: dict, expect_path) -> int:
    expected = json.loads(Path(expect_path).read_text())
    bad = []

    def walk(exp, act, trail):
        if isinstance(exp, dict):
            for key, sub in exp.items():
                if not isinstance(act, dict) or key not in act:
                    bad.append(f"{trail}{key}: missing (expected {sub})")
                else:
                    walk(sub, act[key], f"{trail}{key}.")
        elif exp != act:
            bad.append(f"{trail[:-1]}: expected {exp}, got {act}")

    walk(expected, actual, "")
    for line in bad:
        print(f"expect mismatch: {line}", file=sys.stderr)
    return 1 if bad else 0


def cmd_enumerate(args) -> int:
    palette, _ = load_palette(args.palette)
    workers = args.workers or (os.cpu_count() or 1)
    census = enumerator.enumerate_canonical(palette, out_path=args.out,
                                            workers=workers)
    print(f"canonical={census.canonical_count} total={census.total_count}")
    if args.expect:
        return _check_expect({"canonical_count": census.canonical_count,
                              "total_count": census.total_count}, args.expect)
    return 0


def _open_census(args, palette) -> enumerator.GridCensus:
    if not enumerator.census_checksum_ok(args.census):
        raise ValueError(f"{args.census}: checksum mismatch (stale or corrupt)")
    n, count, _ = enumerator.read_census(args.census)
    if n != palette.n:
        raise ValueError(f"census order {n} does not match palette {palette.n}")
    return enumerator.GridCensus(palette.provenance, n, count, path=Path(args.census))


def cmd_classify(args) -> int:
    palette, code_doc = load_palette(args.palette)
    if code_doc is None:
        return _fail("palette file carries no code metadata; cannot build groups")
    census = _open_census(args, palette)
    groups = named_groups(code_doc)
    if args.group != "all":
        groups = [(nm, g) for nm, g in groups if nm == args.group]
        if not groups:
            return _fail(f"unknown group {args.group!r}")
    reports = symmetry.subgroup_reports(census, groups,
                                        membership_stride=args.check_stride)
    table = symmetry.report_table(reports)
    print(table)
    doc = {r.group: r.to_json() for r in reports}
    if args.out:
        Path(args.out).with_suffix(".txt").write_text(table + "\n")
        _dump(doc, Path(args.out).with_suffix(".json"))
    if args.expect:
        actual = {r.group: {"histogram": {str(k): v for k, v in r.histogram.items()},
                            "classes": r.classes} for r in reports}
        return _check_expect(actual, args.expect)
    return 0


def _class_representatives(palette, code_doc, census):
    """Orbit representatives under the full group, largest orbit first."""
    full = dict(named_groups(code_doc))["full"]
    orbits = symmetry.orbit_members(census, full)
    orbits.sort(key=lambda o: (-len(o), o[0]))
    grids = census.grids()
    n = palette.n
    reps = [grids[o[0]].reshape(n, n) for o in orbits]
    weights = [len(o) * factorial(n) for o in orbits]
    return reps, weights


def cmd_minimal(args) -> int:
    palette, code_doc = load_palette(args.palette)
    if code_doc is None:
        return _fail("palette file carries no code metadata")
    census = _open_census(args, palette)
    reps, weights = _class_representatives(palette, code_doc, census)
    solutions = enumerator.enumerate_all_grids(palette)
    ks = args.k or [4, 5, 6, 7]
    rows = []
    actual = {}
    puzzles_path = Path(args.puzzles_out) if args.puzzles_out else None
    if puzzles_path:
        puzzles_path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    n = palette.n
    for k in ks:
        mc = minimal.minimal_census(palette, reps, weights, k, solutions=solutions)
        rows.append((k, mc.total, mc.up_to_equivalence))
        actual[str(k)] = {"total": mc.total, "classes": mc.up_to_equivalence}
        print(f"k={k} minimal={mc.total} classes={mc.up_to_equivalence}")
        if puzzles_path:
            for ci, masks in enumerate(mc.masks):
                for mask in masks:
                    cells = [(c // n, c % n) for c in range(n * n)
                             if mask & (1 << c)]
                    pz = minimal.puzzle_from_grid(palette, reps[ci], cells)
                    pz.meta.update({"k": k, "class": ci,
                                    "code": palette.provenance})
                    lines.append(json.dumps(minimal.puzzle_to_json(pz)))
    if puzzles_path:
        puzzles_path.write_text("\n".join(lines) + "\n")
        _log(f"wrote {len(lines)} puzzles to {puzzles_path}")
    if args.out:
        with open(args.out, "w") as f:
            f.write("k,total,classes\n")
            for k, total, classes in rows:
                f.write(f"{k},{total},{classes}\n")
    if args.expect:
        return _check_expect(actual, args.expect)
    return 0


def cmd_sample(args) -> int:
    palette, _ = load_palette(args.palette)
    census = _open_census(args, palette)
    grids = census.grids()
    rng_idx = args.grid_index % len(grids)
    grid = grids[rng_idx].reshape(palette.n, palette.n)
    lo, hi = args.k_range
    pz = minimal.sample_minimal_retry(grid, palette, (lo, hi), seed=args.seed)
    pz.meta.update({"code": palette.provenance, "grid_index": int(rng_idx)})
    minimal.save_puzzle(pz, args.out)
    print(f"k={pz.k} seed={pz.meta['seed']}")
    return 0


def _load_puzzles(path) -> list[minimal.Puzzle]:
    p = Path(path)
    if p.is_dir():
        return [minimal.load_puzzle(f) for f in sorted(p.glob("*.json"))]
    return [minimal.puzzle_from_json(json.loads(line))
            for line in p.read_text().splitlines() if line.strip()]


def cmd_rate(args) -> int:
    puzzles = _load_puzzles(args.puzzles)
    if not puzzles:
        return _fail("no puzzles found")
    by_k: dict[int, list] = {}
    max_score = 0.0
    for pz in puzzles:
        rep = rater.difficulty_score(pz, runs=args.runs, base_seed=args.seed)
        pz.meta["difficulty"] = {"score": rep.score, "level": rep.level,
                                 "runs": rep.runs, "base_seed": rep.base_seed}
        by_k.setdefault(pz.k, []).append(rep)
        max_score = max(max_score, rep.score)
    rows = []
    for k in sorted(by_k):
        reps = by_k[k]
        easy = sum(1 for r in reps if r.level == "easy")
        medium = sum(1 for r in reps if r.level == "medium")
        hard = sum(1 for r in reps if r.level == "hard")
        rows.append(rater.RatingRow(k, easy, medium, hard))
        print(f"k={k} easy={easy} medium={medium} hard={hard} total={len(reps)}")
    table = rater.RatingTable(rows, max_score, args.runs, args.seed)
    if args.out:
        table.to_csv(args.out)
    if args.rated_out:
        lines = [json.dumps(minimal.puzzle_to_json(pz)) for pz in puzzles]
        Path(args.rated_out).write_text("\n".join(lines) + "\n")
    if args.expect:
        actual = {"easy_by_k": {str(r.k): r.easy for r in rows}}
        return _check_expect(actual, args.expect)
    return 0


# --- bundle export ------------------------------------------------------------

BUNDLE_VERSION = 1
COLOR_SCHEME = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                "#edc949", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ab",
                "#86bcb6", "#d37295", "#fabfd2"]


def region_colors(palette: PaletteGrid) -> list[int]:
    """Greedy coloring of regions; edge-adjacent regions get distinct colors.

    Adjacency is 4-neighborhood on the drawn (non-wrapping) grid.  Returns
    one color index per symbol 1..n.
    """
    n = palette.n
    adj: dict[int, set[int]] = {k: set() for k in range(1, n + 1)}
    cells = palette.cells
    for r in range(n):
        for c in range(n):
            for dr, dc in ((0, 1), (1, 0)):
                r2, c2 = r + dr, c + dc
                if r2 < n and c2 < n and cells[r][c] != cells[r2][c2]:
                    adj[cells[r][c]].add(cells[r2][c2])
                    adj[cells[r2][c2]].add(cells[r][c])
    colors = [0] * (n + 1)
    for sym in range(1, n + 1):
        used = {colors[o] for o in adj[sym] if o < sym}
        color = 1
        while color in used:
            color += 1
        colors[sym] = color
    return [c - 1 for c in colors[1:]]


def validate_bundle(doc: dict) -> list[str]:
    """Schema errors for a bundle document (empty list = valid)."""
    errors = []
    if doc.get("version") != BUNDLE_VERSION:
        errors.append("version must be 1")
    if not isinstance(doc.get("color_scheme"), list) or \
            not all(isinstance(c, str) for c in doc.get("color_scheme", [])):
        errors.append("color_scheme must be a list of color strings")
    puzzles = doc.get("puzzles")
    if not isinstance(puzzles, list):
        return errors + ["puzzles must be a list"]
    for i, pz in enumerate(puzzles):
        where = f"puzzles[{i}]"
        try:
            parsed = minimal.puzzle_from_json(pz)
        except (KeyError, ValueError, TypeError) as e:
            errors.append(f"{where}: {e}")
            continue
        n = parsed.n
        rc = pz.get("region_colors")
        if not isinstance(rc, list) or len(rc) != n:
            errors.append(f"{where}: region_colors must list {n} entries")
            continue
        scheme = doc.get("color_scheme", [])
        if any(not isinstance(x, int) or x < 0 or x >= len(scheme) for x in rc):
            errors.append(f"{where}: region_colors index out of range")
        cells = parsed.palette.cells
        for r in range(n):
            for c in range(n):
                for dr, dc in ((0, 1), (1, 0)):
                    r2, c2 = r + dr, c + dc
                    if r2 < n and c2 < n:
                        a, b = cells[r][c], cells[r2][c2]
                        if a != b and rc[a - 1] == rc[b - 1]:
                            errors.append(f"{where}: adjacent regions share a color")
                            break
                else:
                    continue
                break
            else:
                continue
            break
    return errors


def make_bundle(puzzles: list[minimal.Puzzle]) -> dict:
    docs = []
    for pz in puzzles:
        doc = minimal.puzzle_to_json(pz)
        doc["region_colors"] = region_colors(pz.palette)
        docs.append(doc)
    return {"version": BUNDLE_VERSION, "color_scheme": COLOR_SCHEME,
            "puzzles": docs}


def cmd_export_bundle(args) -> int:
    puzzles = _load_puzzles(args.puzzles) if args.puzzles else []
    bundle = make_bundle(puzzles)
    errors = validate_bundle(bundle)
    if errors:
        for e in errors:
            print(f"bundle invalid: {e}", file=sys.stderr)
        return 1
    _dump(bundle, Path(args.out))
    _log(f"wrote bundle with {len(puzzles)} puzzles to {args.out}")
    return 0


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leedoku",
                                description="Sudoku-type games from Lee-metric codes")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and its palette grid")
    kind = c.add_mutually_exclusive_group(required=True)
    kind.add_argument("--perfect", action="store_true")
    kind.add_argument("--diameter", action="store_true")
    c.add_argument("--case", choices=["I", "II"], default="II")
    c.add_argument("-t", type=int, required=True)
    c.add_argument("--offset", help="translation r,c")
    c.add_argument("--swap", action="store_true",
                   help="swap generator coordinates (perfect codes)")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", help="enumerate the canonical grid census")
    e.add_argument("--palette", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--workers", type=int,
               help="parallel workers (default: all cores)")
    e.add_argument("--expect")
    e.set_defaults(func=cmd_enumerate)

    cl = sub.add_parser("classify", help="orbit histograms under the census subgroups")
    cl.add_argument("--census", required=True)
    cl.add_argument("--palette", required=True)
    cl.add_argument("--group", default="all")
    cl.add_argument("--out", help="output prefix for .txt/.json report")
    cl.add_argument("--check-stride", type=int, default=64,
                    help="membership-check every Nth grid (1 = all)")
    cl.add_argument("--expect")
    cl.set_defaults(func=cmd_classify)

    m = sub.add_parser("minimal", help="exhaustive minimal-puzzle census")
    m.add_argument("--palette", required=True)
    m.add_argument("--census", required=True)
    m.add_argument("-k", type=int, action="append")
    m.add_argument("--out", help="CSV path (k,total,classes)")
    m.add_argument("--puzzles-out", help="write class puzzles as JSON lines")
    m.add_argument("--expect")
    m.set_defaults(func=cmd_minimal)

    s = sub.add_parser("sample", help="sample one minimal puzzle by hint removal")
    s.add_argument("--palette", required=True)
    s.add_argument("--census", required=True)
    s.add_argument("--grid-index", type=int, default=0)
    s.add_argument("--k-range", type=int, nargs=2, default=(10, 18))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    r = sub.add_parser("rate", help="difficulty-rate puzzles")
    r.add_argument("--puzzles", required=True, help="directory or JSON-lines file")
    r.add_argument("--runs", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", help="CSV path (k,easy,medium,hard,total)")
    r.add_argument("--rated-out", help="write puzzles with difficulty meta")
    r.add_argument("--expect")
    r.set_defaults(func=cmd_rate)

    b = sub.add_parser("export-bundle", help="bundle puzzles for the play UI")
    b.add_argument("--puzzles", help="directory or JSON-lines file")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_export_bundle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        return _fail(str(e))


if __name__ == "__main__":
    sys.exit(main())
