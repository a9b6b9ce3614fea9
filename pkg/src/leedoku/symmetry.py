"""Rigid motions of toroidal n x n arrays and their orbit classification.

A motion is an affine index map: the entry of the transformed array at
(i, j) is read from M.(i, j) + shift (mod n), where M is one of the eight
dihedral point matrices.  The four named generators are

    r   : quarter-turn clockwise,        result[i, j] = A[n-1-j, i]
    s   : reflection in the vertical axis, result[i, j] = A[i, n-1-j]
    t1  : shift every row down by one,   result[i, j] = A[i-1, j]
    t2  : shift every column right by one, result[i, j] = A[i, j-1]

Composition, inverses, and closure are exact integer arithmetic, so group
orders are computed rather than assumed.  Classification of a grid census
under a group uses the induced action "move, then relabel back to
canonical form" and reports the orbit-size histogram.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .palette import PaletteGrid


@dataclass(frozen=True)
class RigidMotion:
    """Affine index map on Z_n x Z_n: source(i, j) = M.(i, j) + shift."""

    n: int
    m: tuple[int, int, int, int]       # row-major 2x2 matrix over Z_n
    shift: tuple[int, int]

    def source(self, i: int, j: int) -> tuple[int, int]:
        m00, m01, m10, m11 = self.m
        return ((m00 * i + m01 * j + self.shift[0]) % self.n,
                (m10 * i + m11 * j + self.shift[1]) % self.n)

    def __matmul__(self, other: "RigidMotion") -> "RigidMotion":
        """self @ other = apply other first, then self."""
        if self.n != other.n:
            raise ValueError("motions over different moduli")
        n = self.n
        a00, a01, a10, a11 = self.m       # applied second
        b00, b01, b10, b11 = other.m      # applied first
        # source map of the composite is source_other . source_self
        m = ((b00 * a00 + b01 * a10) % n, (b00 * a01 + b01 * a11) % n,
             (b10 * a00 + b11 * a10) % n, (b10 * a01 + b11 * a11) % n)
        s = ((b00 * self.shift[0] + b01 * self.shift[1] + other.shift[0]) % n,
             (b10 * self.shift[0] + b11 * self.shift[1] + other.shift[1]) % n)
        return RigidMotion(n, m, s)

    def __pow__(self, k: int) -> "RigidMotion":
        if k < 0:
            return self.inverse() ** (-k)
        acc = identity(self.n)
        base = self
        while k:
            if k & 1:
                acc = acc @ base
            base = base @ base
            k >>= 1
        return acc

    def inverse(self) -> "RigidMotion":
        n = self.n
        m00, m01, m10, m11 = self.m
        det = (m00 * m11 - m01 * m10) % n
        if det == 1:
            dinv = 1
        elif det == n - 1:
            dinv = n - 1
        else:
            raise ValueError("point part is not dihedral (det != +/-1)")
        inv = ((dinv * m11) % n, (-dinv * m01) % n,
               (-dinv * m10) % n, (dinv * m00) % n)
        i00, i01, i10, i11 = inv
        s = ((-(i00 * self.shift[0] + i01 * self.shift[1])) % n,
             (-(i10 * self.shift[0] + i11 * self.shift[1])) % n)
        return RigidMotion(n, inv, s)

    def order(self) -> int:
        e = identity(self.n)
        acc = self
        k = 1
        while acc != e:
            acc = acc @ self
            k += 1
            if k > 8 * self.n * self.n:
                raise RuntimeError("order computation runaway")
        return k

    def perm(self) -> np.ndarray:
        """Flat source index per target cell: result.flat[p] = A.flat[perm[p]]."""
        n = self.n
        out = np.empty(n * n, dtype=np.int32)
        for i in range(n):
            for j in range(n):
                si, sj = self.source(i, j)
                out[i * n + j] = si * n + sj
        return out


def identity(n: int) -> RigidMotion:
    return RigidMotion(n, (1, 0, 0, 1), (0, 0))


def rotation(n: int) -> RigidMotion:
    """r: quarter-turn clockwise."""
    return RigidMotion(n, (0, n - 1, 1, 0), (n - 1, 0))


def reflection(n: int) -> RigidMotion:
    """s: mirror about the vertical axis."""
    return RigidMotion(n, (1, 0, 0, n - 1), (0, n - 1))


def row_shift(n: int, a: int = 1) -> RigidMotion:
    """t1^a: move every row down by a."""
    return RigidMotion(n, (1, 0, 0, 1), (-a % n, 0))


def col_shift(n: int, b: int = 1) -> RigidMotion:
    """t2^b: move every column right by b."""
    return RigidMotion(n, (1, 0, 0, 1), (0, -b % n))


def translation(n: int, a: int, b: int) -> RigidMotion:
    return RigidMotion(n, (1, 0, 0, 1), (-a % n, -b % n))


def apply(motion: RigidMotion, grid) -> np.ndarray:
    """Transformed copy of an n x n array."""
    arr = np.asarray(grid)
    n = motion.n
    if arr.shape != (n, n):
        raise ValueError(f"expected {n}x{n} array, got {arr.shape}")
    return arr.reshape(-1)[motion.perm()].reshape(n, n).copy()


@dataclass(frozen=True)
class SymmetryGroup:
    n: int
    generators: tuple[RigidMotion, ...]
    elements: tuple[RigidMotion, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def generate_group(gens: list[RigidMotion]) -> SymmetryGroup:
    """Closure of the generators under composition."""
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators over different moduli")
    els = {identity(n)}
    frontier = [identity(n)]
    limit = 8 * n * n
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = g @ e
                if h not in els:
                    els.add(h)
                    nxt.append(h)
                    if len(els) > limit:
                        raise RuntimeError("closure exceeded 8n^2 elements")
        frontier = nxt
    ordered = sorted(els, key=lambda m: (m.m, m.shift))
    return SymmetryGroup(n, tuple(gens), tuple(ordered))


def group_for_perfect(x: tuple[int, int], a: int, b: int, n: int) -> SymmetryGroup:
    """Grid-set-preserving group for a perfect-code palette.

    The code is the translate by x of the line generated by (a, b); the
    group is generated by t2^(x1+x2+1) t1^(x1-x2) r and t1^a t2^b.
    """
    x1, x2 = x
    phi = col_shift(n, (x1 + x2 + 1) % n) @ row_shift(n, (x1 - x2) % n) @ rotation(n)
    trans = row_shift(n, a % n) @ col_shift(n, b % n)
    return generate_group([phi, trans])


def group_for_diameter(case: str, x: tuple[int, int], t: int,
                       a: int | None = None, b: int | None = None) -> SymmetryGroup:
    """Grid-set-preserving group for a diameter-code palette.

    case "I":  <t1^(t+1) t2^(t+1), t2^(2t+2), t2^(2x2+1) s, t1^(2x1+2) t2^(2x2+1) r^2>
    case "II": <t1^a t2^b, t1^(2x1+2) t2^(2x2+1) r^2>   (the code is cyclic,
    generated by (a, b)).
    """
    n = 2 * (t + 1) * (t + 1)
    x1, x2 = x
    half_turn = (row_shift(n, (2 * x1 + 2) % n) @ col_shift(n, (2 * x2 + 1) % n)
                 @ rotation(n) ** 2)
    if case == "I":
        gens = [row_shift(n, t + 1) @ col_shift(n, t + 1),
                col_shift(n, 2 * (t + 1)),
                col_shift(n, (2 * x2 + 1) % n) @ reflection(n),
                half_turn]
    elif case == "II":
        if a is None or b is None:
            raise ValueError("Case II needs the cyclic generator (a, b)")
        gens = [row_shift(n, a % n) @ col_shift(n, b % n), half_turn]
    else:
        raise ValueError(f"unknown case {case!r}")
    return generate_group(gens)


@dataclass
class OrbitReport:
    group: str
    group_order: int
    histogram: dict[int, int]      # orbit size -> number of orbits
    classes: int = field(init=False)

    def __post_init__(self) -> None:
        self.classes = sum(self.histogram.values())

    def grid_mass(self) -> int:
        return sum(size * cnt for size, cnt in self.histogram.items())

    def to_json(self) -> dict:
        return {"group": self.group, "order": self.group_order,
                "histogram": {str(k): v for k, v in sorted(self.histogram.items(),
                                                           reverse=True)},
                "classes": self.classes}


class ClosureViolation(RuntimeError):
    """A group element mapped a census grid outside the census."""


def classify(census, group: SymmetryGroup, name: str = "",
             membership_stride: int = 64) -> OrbitReport:
    """Orbit-size histogram of canonical grids under move-then-relabel.

    Every membership_stride-th grid has all its images membership-checked
    against the census (stride 1 checks everything); a miss means the group
    does not preserve the grid set and raises ClosureViolation.
    """
    from . import _kernels

    grids = census.grids()
    n = census.n
    perms = np.stack([g.perm() for g in group.elements])
    keys = _kernels.pack_keys(grids, n)
    if not _kernels.keys_sorted(keys):
        raise ValueError("census records are not in canonical sort order")
    hist = np.zeros(len(group.elements) + 1, dtype=np.int64)
    bad = _kernels.orbit_histogram(grids, np.uint8(n), perms, keys,
                                   np.int64(max(1, membership_stride)), hist,
                                   np.int64(0), np.int64(len(grids)))
    if bad >= 0:
        raise ClosureViolation(f"image of census grid {bad} is not a census grid")
    histogram = {}
    for size in range(1, len(hist)):
        if hist[size]:
            if hist[size] % size:
                raise ClosureViolation(
                    f"orbit-size {size} grid count {hist[size]} not divisible")
            histogram[size] = int(hist[size]) // size
    return OrbitReport(name or "group", group.order, histogram)


def orbit_members(census, group: SymmetryGroup) -> list[list[int]]:
    """Explicit orbits as lists of census row indices (small censuses only)."""
    grids = census.grids()
    if len(grids) > 100_000:
        raise ValueError("explicit orbits are for small censuses")
    n = census.n
    index = {bytes(g) for g in grids}
    row_of = {bytes(g): i for i, g in enumerate(grids)}
    perms = [g.perm() for g in group.elements]
    seen = set()
    orbits = []
    for i, g in enumerate(grids):
        if i in seen:
            continue
        orbit = set()
        for p in perms:
            img = g[p]
            relab = np.empty(n + 1, dtype=np.uint8)
            relab[img[:n]] = np.arange(1, n + 1)
            key = bytes(relab[img])
            if key not in index:
                raise ClosureViolation(f"image of census grid {i} left the census")
            orbit.add(row_of[key])
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def subgroup_reports(census, named_groups: list[tuple[str, SymmetryGroup]],
                     membership_stride: int = 64) -> list[OrbitReport]:
    reports = []
    for name, grp in named_groups:
        rep = classify(census, grp, name=name, membership_stride=membership_stride)
        if rep.grid_mass() != census.canonical_count:
            raise ClosureViolation(
                f"{name}: orbit mass {rep.grid_mass()} != census "
                f"{census.canonical_count}")
        reports.append(rep)
    return reports


def report_table(reports: list[OrbitReport]) -> str:
    """Plain-text class-size table, one column per subgroup."""
    sizes = sorted({s for r in reports for s in r.histogram}, reverse=True)
    name_w = max(10, *(len(r.group) for r in reports))
    head = "class size | " + " | ".join(r.group.rjust(name_w) for r in reports)
    lines = [head, "-" * len(head)]
    for s in sizes:
        cells = [str(r.histogram.get(s, "")).rjust(name_w) for r in reports]
        lines.append(f"{s:>10} | " + " | ".join(cells))
    lines.append("-" * len(head))
    lines.append("   classes | " + " | ".join(str(r.classes).rjust(name_w)
                                              for r in reports))
    return "\n".join(lines)
