"""Lee-metric geometry over Z_n^2 and the code tilings behind the games.

Provides:
  * Lee weight / Lee distance on Z_n^m and the induced metric on points,
  * balls B_t(c) and adjacent-pair anticodes A_{2t+1} with closed-form sizes,
  * the length-2 perfect code construction (n = 2t^2+2t+1, generator (1, 2t+1)),
  * the length-2 diameter perfect constructions (n = 2(t+1)^2, matrices G_i),
  * tiling verification (sphere-packing / code-anticode equality),
  * exhaustive tiling search for all perfect / diameter perfect codes of a
    given small modulus.

Points are (row, column) pairs; all arithmetic is mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import comb


class CodeFamily(Enum):
    PERFECT = "perfect"
    DIAMETER_I = "diameter-I"
    DIAMETER_II = "diameter-II"


@dataclass(frozen=True, order=True)
class Point:
    """A point of Z_n^2; x is the row index, y the column index."""

    x: int
    y: int
    n: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError(f"modulus must be positive, got {self.n}")
        if not (0 <= self.x < self.n and 0 <= self.y < self.n):
            raise ValueError(f"({self.x}, {self.y}) not reduced mod {self.n}")

    def _check(self, other: "Point") -> None:
        if self.n != other.n:
            raise ValueError(f"modulus mismatch: {self.n} != {other.n}")

    def __add__(self, other: "Point") -> "Point":
        self._check(other)
        return Point((self.x + other.x) % self.n, (self.y + other.y) % self.n, self.n)

    def __sub__(self, other: "Point") -> "Point":
        self._check(other)
        return Point((self.x - other.x) % self.n, (self.y - other.y) % self.n, self.n)

    def __neg__(self) -> "Point":
        return Point(-self.x % self.n, -self.y % self.n, self.n)

    def scale(self, k: int) -> "Point":
        return Point(k * self.x % self.n, k * self.y % self.n, self.n)

    def swap(self) -> "Point":
        return Point(self.y, self.x, self.n)

    def coords(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class PointSet:
    """A subset of Z_n^2."""

    n: int
    members: frozenset[Point]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Point) -> bool:
        return p in self.members

    def __iter__(self):
        return iter(sorted(self.members))


@dataclass(frozen=True)
class Code:
    """A size-n code in Z_n^2 with its construction metadata.

    codewords are kept sorted so codes hash and iterate deterministically;
    the symbol attached to codeword i downstream is its 1-based rank here.
    """

    n: int
    t: int
    family: CodeFamily
    codewords: tuple[Point, ...]
    offset: Point
    generator: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "codewords", tuple(sorted(self.codewords)))

    def __len__(self) -> int:
        return len(self.codewords)

    def translate(self, x: Point) -> "Code":
        return Code(self.n, self.t, self.family,
                    tuple(c + x for c in self.codewords),
                    self.offset + x, self.generator)


def all_points(n: int) -> list[Point]:
    """Z_n^2 in row-major order."""
    return [Point(x, y, n) for x, y in product(range(n), repeat=2)]


def lee_weight(u, n: int) -> int:
    """wt_L(u) = sum_i min(u_i, n - u_i)."""
    total = 0
    for ui in u:
        if not 0 <= ui < n:
            raise ValueError(f"entry {ui} outside [0, {n})")
        total += min(ui, n - ui)
    return total


def lee_distance(u: Point, v: Point) -> int:
    """d_L(u, v) = wt_L(u - v); a metric on Z_n^2."""
    d = u - v
    return lee_weight((d.x, d.y), u.n)


def minimum_distance(code: Code) -> int:
    """Minimum Lee distance over distinct codeword pairs."""
    words = code.codewords
    if len(words) < 2:
        raise ValueError("need at least 2 codewords")
    return min(lee_distance(a, b)
               for i, a in enumerate(words) for b in words[i + 1:])


def ball(center: Point, t: int) -> PointSet:
    """B_t(center): all points at Lee distance <= t."""
    if t < 0:
        raise ValueError("radius must be nonnegative")
    n = center.n
    return PointSet(n, frozenset(p for p in all_points(n)
                                 if lee_distance(p, center) <= t))


def anticode(core: tuple[Point, Point], t: int) -> PointSet:
    """A_{2t+1}: all points within distance t of either core point.

    The core must be an adjacent pair; the resulting set has diameter 2t+1.
    """
    p1, p2 = core
    if lee_distance(p1, p2) != 1:
        raise ValueError("core points must be adjacent (Lee distance 1)")
    n = p1.n
    return PointSet(n, frozenset(
        p for p in all_points(n)
        if min(lee_distance(p, p1), lee_distance(p, p2)) <= t))


def ball_size_formula(m: int, t: int) -> int:
    """|B_t| in Z_n^m (2t < n): sum_i 2^i C(m,i) C(t,i)."""
    return sum((1 << i) * comb(m, i) * comb(t, i)
               for i in range(min(m, t) + 1))


def anticode_size_formula(m: int, t: int) -> int:
    """|A_{2t+1}| in Z_n^m (2t+1 <= n): sum_i 2^(i+1) C(m-1,i) C(t+1,i+1)."""
    return sum((1 << (i + 1)) * comb(m - 1, i) * comb(t + 1, i + 1)
               for i in range(min(m - 1, t) + 1))


def _span(rows: list[tuple[int, int]], n: int) -> set[Point]:
    """Closure of integer row combinations mod n (Z_n need not be a field)."""
    span = {Point(0, 0, n)}
    frontier = list(span)
    gens = [Point(a % n, b % n, n) for a, b in rows]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p + g
                if q not in span:
                    span.add(q)
                    nxt.append(q)
        frontier = nxt
    return span


def construct_perfect_code(t: int, offset: Point | None = None,
                           swap_coords: bool = False) -> Code:
    """The linear t-error-correcting perfect code of modulus 2t^2+2t+1.

    Generated by (1, 2t+1), optionally coordinate-swapped, then translated
    by offset.  Radius-t balls around the codewords tile Z_n^2.
    """
    n = 2 * t * t + 2 * t + 1
    if offset is None:
        offset = Point(0, 0, n)
    if offset.n != n:
        raise ValueError(f"offset modulus {offset.n} != 2t^2+2t+1 = {n}")
    gen = (2 * t + 1, 1) if swap_coords else (1, 2 * t + 1)
    words = tuple(offset + Point(gen[0] * k % n, gen[1] * k % n, n)
                  for k in range(n))
    return Code(n, t, CodeFamily.PERFECT, words, offset, (gen,))


def construct_diameter_code(t: int, i: int, offset: Point | None = None) -> Code:
    """A (2t+1)-diameter perfect code of modulus 2(t+1)^2 from matrix G_i.

    G_i = [[t+1+i, t+1-i], [i, 2(t+1)-i]]; i = 0 gives the Case I code,
    1 <= i <= t gives Case II codes (for those, the first row is a multiple
    of the second, so the span is cyclic).
    """
    n = 2 * (t + 1) * (t + 1)
    if offset is None:
        offset = Point(0, 0, n)
    if offset.n != n:
        raise ValueError(f"offset modulus {offset.n} != 2(t+1)^2 = {n}")
    if not 0 <= i <= t:
        raise ValueError(f"matrix index {i} outside [0, {t}]")
    rows = [(t + 1 + i, t + 1 - i), (i, 2 * (t + 1) - i)]
    span = _span(rows, n)
    if len(span) != n:
        raise ValueError(f"span of G_{i} has size {len(span)}, expected {n}")
    family = CodeFamily.DIAMETER_I if i == 0 else CodeFamily.DIAMETER_II
    words = tuple(offset + p for p in span)
    return Code(n, t, family, words, offset,
                (tuple(rows[0]), tuple(rows[1])))


def default_core_offset(n: int) -> Point:
    """Anticode cores are the pair {c, c + (1, 0)} unless stated otherwise."""
    return Point(1, 0, n)


def is_perfect(code: Code) -> bool:
    """True iff radius-t balls at the codewords partition Z_n^2."""
    n, t = code.n, code.t
    covered: set[Point] = set()
    for c in code.codewords:
        b = ball(c, t).members
        if covered & b:
            return False
        covered |= b
    return len(covered) == n * n


def is_diameter_perfect(code: Code, core_offset: Point | None = None) -> bool:
    """True iff the core-anchored anticode translates partition Z_n^2."""
    n, t = code.n, code.t
    if core_offset is None:
        core_offset = default_core_offset(n)
    covered: set[Point] = set()
    for c in code.codewords:
        a = anticode((c, c + core_offset), t).members
        if covered & a:
            return False
        covered |= a
    return len(covered) == n * n


def _enumerate_tilings(n: int, shape: list[tuple[int, int]]) -> list[list[Point]]:
    """All anchor sets whose shape translates tile Z_n^2.

    Branches on the lowest uncovered cell in row-major order; each tiling is
    produced exactly once, in sorted anchor order.
    """
    total = n * n
    shape_moves = [Point(dx % n, dy % n, n) for dx, dy in shape]
    results: list[list[Point]] = []

    def rec(covered: set[Point], anchors: list[Point]) -> None:
        if len(covered) == total:
            results.append(sorted(anchors))
            return
        low = next(p for p in all_points(n) if p not in covered)
        for d in shape_moves:
            anchor = low - d
            cells = [anchor + m for m in shape_moves]
            if any(c in covered for c in cells):
                continue
            covered.update(cells)
            anchors.append(anchor)
            rec(covered, anchors)
            anchors.pop()
            covered.difference_update(cells)

    rec(set(), [])
    return sorted(results)


def enumerate_perfect_codes(n: int, t: int) -> list[Code]:
    """All point sets whose radius-t balls tile Z_n^2 (n = 2t^2+2t+1)."""
    if n != 2 * t * t + 2 * t + 1:
        raise ValueError(f"n = {n} is not 2t^2+2t+1 for t = {t}")
    shape = [p.coords() for p in ball(Point(0, 0, n), t)]
    codes = []
    for anchors in _enumerate_tilings(n, shape):
        codes.append(Code(n, t, CodeFamily.PERFECT, tuple(anchors),
                          anchors[0], ()))
    return codes


def _diameter_family_of(points: tuple[Point, ...], t: int, n: int) -> CodeFamily:
    """Family of a tiling code via its difference set.

    The difference set of a coset is the underlying linear code; it is
    matched against the G_i spans and their coordinate isometry images
    (swap and per-coordinate negation), since those isometries preserve
    horizontal-core tilings.
    """
    diffs = frozenset((a - b).coords() for a in points for b in points)
    for i in range(t + 1):
        rows = [(t + 1 + i, t + 1 - i), (i, 2 * (t + 1) - i)]
        span = {p.coords() for p in _span(rows, n)}
        images = [span,
                  {(y, x) for x, y in span},
                  {(x, -y % n) for x, y in span},
                  {(-x % n, y) for x, y in span},
                  {(y, -x % n) for x, y in span},
                  {(-y % n, x) for x, y in span}]
        if any(diffs == img for img in images):
            return CodeFamily.DIAMETER_I if i == 0 else CodeFamily.DIAMETER_II
    raise ValueError("tiling code matches no G_i span up to isometry")


def enumerate_diameter_codes(n: int, t: int,
                             core_offset: Point | None = None) -> list[Code]:
    """All codes of minimum distance >= 2t+2 whose core-anchored anticode
    translates tile Z_n^2 (n = 2(t+1)^2)."""
    if n != 2 * (t + 1) * (t + 1):
        raise ValueError(f"n = {n} is not 2(t+1)^2 for t = {t}")
    if core_offset is None:
        core_offset = default_core_offset(n)
    zero = Point(0, 0, n)
    shape = [p.coords() for p in anticode((zero, core_offset), t)]
    codes = []
    for anchors in _enumerate_tilings(n, shape):
        family = _diameter_family_of(tuple(anchors), t, n)
        code = Code(n, t, family, tuple(anchors), anchors[0], ())
        if minimum_distance(code) >= 2 * t + 2:
            codes.append(code)
    return codes
