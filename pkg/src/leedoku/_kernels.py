"""Numba kernels for the hot loops: grid enumeration, orbit classification,
minimal-puzzle scans, solution counting, and the randomized solver.

Grids are flat uint8 arrays; inside kernels cell values are 0-based unless a
function says otherwise.  Candidate sets are int64 bitmasks (bit v = value v
available).  All kernels are nogil so callers can fan out threads over
disjoint index ranges; every kernel's output depends only on its inputs.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_CTZ16 = np.zeros(1 << 16, dtype=np.uint8)
for _i in range(1, 1 << 16):
    _CTZ16[_i] = ((_i & -_i).bit_length() - 1)

U4 = np.uint64(4)
U64_1 = np.uint64(1)


@njit(cache=True, nogil=True, inline="always")
def _popcount(a):
    c = 0
    while a:
        a &= a - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def search(n, region, grid, rowm, colm, regm, start, end, out, cap):
    """Depth-first fill of cells [start, end) in row-major order.

    grid (0-based values) and the row/col/region masks must already reflect
    cells < start.  Values are tried in ascending order, so solutions stream
    in lexicographic order of the flattened grid.  Returns the number of
    solutions; the first min(count, cap) are copied into out.  State is
    restored on exit.
    """
    full = np.int64((1 << n) - 1)
    avail = np.zeros(end, dtype=np.int64)
    count = 0
    pos = start
    avail[pos] = full & ~(rowm[pos // n] | colm[pos % n] | regm[region[pos]])
    while True:
        a = avail[pos]
        if a == 0:
            pos -= 1
            if pos < start:
                return count
            bit = np.int64(1) << grid[pos]
            rowm[pos // n] ^= bit
            colm[pos % n] ^= bit
            regm[region[pos]] ^= bit
            continue
        bit = a & (-a)
        avail[pos] = a ^ bit
        v = _CTZ16[bit]
        grid[pos] = v
        rowm[pos // n] |= bit
        colm[pos % n] |= bit
        regm[region[pos]] |= bit
        if pos + 1 == end:
            if count < cap:
                out[count, :] = grid[:end]
            count += 1
            rowm[pos // n] ^= bit
            colm[pos % n] ^= bit
            regm[region[pos]] ^= bit
            continue
        pos += 1
        avail[pos] = full & ~(rowm[pos // n] | colm[pos % n] | regm[region[pos]])


@njit(cache=True, nogil=True)
def pack_keys(grids, n):
    """Pack 1-based grid records into big-endian 4-bit-per-cell keys.

    Key order equals lexicographic order of the records, so a census sorted
    by record is sorted by key.
    """
    N, ncells = grids.shape
    W = (ncells + 15) // 16
    keys = np.zeros((N, W), dtype=np.uint64)
    for i in range(N):
        for w in range(W):
            base = w << 4
            hi = min(16, ncells - base)
            acc = np.uint64(0)
            for k in range(hi):
                acc = (acc << U4) | np.uint64(grids[i, base + k] - 1)
            keys[i, w] = acc << np.uint64(4 * (16 - hi))
    return keys


@njit(cache=True, nogil=True)
def keys_sorted(keys):
    """True iff rows are strictly increasing (sorted, no duplicates)."""
    N, W = keys.shape
    for i in range(1, N):
        cmp = 0
        for w in range(W):
            if keys[i - 1, w] < keys[i, w]:
                cmp = -1
                break
            if keys[i - 1, w] > keys[i, w]:
                cmp = 1
                break
        if cmp >= 0:
            return False
    return True


@njit(cache=True, nogil=True, inline="always")
def _key_present(keys, key):
    lo = 0
    hi = keys.shape[0]
    W = keys.shape[1]
    while lo < hi:
        mid = (lo + hi) // 2
        less = False
        greater = False
        for w in range(W):
            if keys[mid, w] < key[w]:
                less = True
                break
            if keys[mid, w] > key[w]:
                greater = True
                break
        if less:
            lo = mid + 1
        elif greater:
            hi = mid
        else:
            return True
    return False


@njit(cache=True, nogil=True)
def orbit_histogram(grids, n, perms, keys, stride, hist, start, stop):
    """Accumulate the orbit-size histogram of canonical grids [start, stop).

    For each grid, its images under every group permutation are relabeled
    back to canonical form, packed, and deduplicated; hist[orbit size] is
    incremented per grid (divide by the size afterwards to count orbits).
    Every stride-th grid has all images membership-checked against keys;
    returns the index of the first grid whose image escapes the census,
    or -1 if none.
    """
    ncells = grids.shape[1]
    G = perms.shape[0]
    W = keys.shape[1]
    relab = np.empty(n + 1, dtype=np.uint8)
    imgkey = np.empty(W, dtype=np.uint64)
    orb = np.empty((G, W), dtype=np.uint64)
    for i in range(start, stop):
        g = grids[i]
        osize = 0
        for e in range(G):
            p = perms[e]
            for j in range(n):
                relab[g[p[j]]] = j
            for w in range(W):
                base = w << 4
                hi = min(16, ncells - base)
                acc = np.uint64(0)
                for k in range(hi):
                    acc = (acc << U4) | np.uint64(relab[g[p[base + k]]])
                imgkey[w] = acc << np.uint64(4 * (16 - hi))
            found = False
            for o in range(osize):
                same = True
                for w in range(W):
                    if orb[o, w] != imgkey[w]:
                        same = False
                        break
                if same:
                    found = True
                    break
            if not found:
                for w in range(W):
                    orb[osize, w] = imgkey[w]
                osize += 1
        hist[osize] += 1
        if i % stride == 0:
            for o in range(osize):
                if not _key_present(keys, orb[o]):
                    return i
    return np.int64(-1)


@njit(cache=True, nogil=True)
def special_flags(grids, fam_regions, n, flags, start, stop):
    """flags[i] = 1 iff grid i is region-complete for every family palette.

    fam_regions holds one flat 0-based region-id array per family code.
    Latinness is not rechecked here (census grids are Latin by construction).
    """
    F = fam_regions.shape[0]
    ncells = grids.shape[1]
    full = np.int64((1 << n) - 1)
    regm = np.empty(n, dtype=np.int64)
    for i in range(start, stop):
        ok_all = True
        for f in range(F):
            for t in range(n):
                regm[t] = 0
            for c in range(ncells):
                regm[fam_regions[f, c]] |= np.int64(1) << (grids[i, c] - 1)
            for t in range(n):
                if regm[t] != full:
                    ok_all = False
                    break
            if not ok_all:
                break
        flags[i] = 1 if ok_all else 0


@njit(cache=True, nogil=True, inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, nogil=True)
def minimal_scan(agree, universe, k, out_masks, cap):
    """Count (and record as cell bitmasks) all minimal k-hint subsets.

    agree[c] is the bitset of solutions matching the reference grid at cell
    c; universe covers all solutions.  A subset is minimal iff the AND of
    its bitsets is exactly the reference solution and dropping any one hint
    leaves at least two solutions.  Subtrees whose prefix AND is already a
    single solution are pruned (any completion has a redundant hint).
    """
    C, W = agree.shape
    prefix = np.empty((k + 1, W), dtype=np.uint64)
    for w in range(W):
        prefix[0, w] = universe[w]
    cur = np.empty(k, dtype=np.int64)
    nxt = np.empty(k, dtype=np.int64)
    count = 0
    level = 0
    nxt[0] = 0
    while level >= 0:
        cell = nxt[level]
        if cell > C - (k - level):
            level -= 1
            continue
        nxt[level] = cell + 1
        pc = 0
        for w in range(W):
            v = prefix[level, w] & agree[cell, w]
            prefix[level + 1, w] = v
            pc += _popcount64(v)
        cur[level] = cell
        if level + 1 == k:
            if pc == 1:
                minimal = True
                for j in range(k):
                    drop_pc = 0
                    for w in range(W):
                        acc = prefix[j, w]
                        for m in range(j + 1, k):
                            acc &= agree[cur[m], w]
                        drop_pc += _popcount64(acc)
                        if drop_pc >= 2:
                            break
                    if drop_pc < 2:
                        minimal = False
                        break
                if minimal:
                    if count < cap:
                        mask = np.int64(0)
                        for j in range(k):
                            mask |= np.int64(1) << cur[j]
                        out_masks[count] = mask
                    count += 1
            continue
        if pc == 1:
            continue                    # prune: extensions cannot be minimal
        level += 1
        nxt[level] = cell + 1
    return count


@njit(cache=True, nogil=True)
def count_solutions_dfs(grid0, region, n, cap):
    """Completions of a hinted grid (0 = blank, 1..n = hint), up to cap.

    Returns 0 immediately if the hints already clash in a row, column, or
    region.  Branches on a most-constrained blank cell.
    """
    ncells = n * n
    full = np.int64((1 << n) - 1)
    rowm = np.zeros(n, dtype=np.int64)
    colm = np.zeros(n, dtype=np.int64)
    regm = np.zeros(n, dtype=np.int64)
    grid = grid0.copy()
    for c in range(ncells):
        v = grid[c]
        if v:
            bit = np.int64(1) << (v - 1)
            if (rowm[c // n] | colm[c % n] | regm[region[c]]) & bit:
                return 0
            rowm[c // n] |= bit
            colm[c % n] |= bit
            regm[region[c]] |= bit
    cells_ = np.empty(ncells + 1, dtype=np.int64)
    avails = np.empty(ncells + 1, dtype=np.int64)
    depth = 0
    count = 0
    descend = True
    while True:
        if descend:
            best = -1
            besta = np.int64(0)
            bestc = 99
            for c in range(ncells):
                if grid[c] == 0:
                    a = full & ~(rowm[c // n] | colm[c % n] | regm[region[c]])
                    pc = _popcount(a)
                    if pc < bestc:
                        bestc = pc
                        best = c
                        besta = a
                        if pc <= 1:
                            break
            if best >= 0:
                cells_[depth] = best
                avails[depth] = besta
                descend = False
                continue
            count += 1
            if count >= cap:
                return count
            if depth == 0:
                return count
            depth -= 1
            c = cells_[depth]
            bit = np.int64(1) << (grid[c] - 1)
            rowm[c // n] ^= bit
            colm[c % n] ^= bit
            regm[region[c]] ^= bit
            grid[c] = 0
            descend = False
            continue
        a = avails[depth]
        if a == 0:
            if depth == 0:
                return count
            depth -= 1
            c = cells_[depth]
            bit = np.int64(1) << (grid[c] - 1)
            rowm[c // n] ^= bit
            colm[c % n] ^= bit
            regm[region[c]] ^= bit
            grid[c] = 0
            continue
        bit = a & (-a)
        avails[depth] = a ^ bit
        c = cells_[depth]
        grid[c] = _CTZ16[bit] + 1
        rowm[c // n] |= bit
        colm[c % n] |= bit
        regm[region[c]] |= bit
        depth += 1
        descend = True


# --- randomized human-style solver -----------------------------------------
#
# RNG: splitmix64 seeding + xorshift64*, reproduced bit-for-bit by the pure
# Python reference in rater.py.

@njit(cache=True, nogil=True, inline="always")
def _seed_state(seed):
    z = np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    if z == np.uint64(0):
        z = np.uint64(0x9E3779B97F4A7C15)
    return z


@njit(cache=True, nogil=True, inline="always")
def _rng_next(state):
    state ^= state >> np.uint64(12)
    state ^= (state << np.uint64(25)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    state ^= state >> np.uint64(27)
    return state, state * np.uint64(0x2545F4914F6CDD1D)


@njit(cache=True, nogil=True)
def fixpoint(grid, rowm, colm, regm, region, region_cells, n):
    """Naked-single / hidden-single sweeps until no placement is possible.

    Naked singles are exhausted first (cells with no candidates are simply
    skipped, as a scanning solver would); then one hidden-single sweep runs
    per unit type (rows, columns, regions, digits ascending), and a digit
    found homeless in some unit marks the state contradictory, which is
    reported after that unit type finishes.  Repeats while the hidden sweep
    placed anything.  Returns (insertions, ok).

    On states consistent with a solution the lenient checks never fire, so
    the fixed point (and the easy classification built on it) is identical
    to a fully strict propagator; the leniency only shapes how far a wrong
    guess runs before the solver notices, which is what the insertion-count
    calibration below is sensitive to.
    """
    ncells = n * n
    full = np.int64((1 << n) - 1)
    ins = 0
    while True:
        while True:
            placed = False
            for c in range(ncells):
                if grid[c] == 0:
                    a = full & ~(rowm[c // n] | colm[c % n] | regm[region[c]])
                    if a != 0 and a & (a - 1) == 0:
                        grid[c] = _CTZ16[a] + 1
                        rowm[c // n] |= a
                        colm[c % n] |= a
                        regm[region[c]] |= a
                        ins += 1
                        placed = True
            if not placed:
                break
        placed_hidden = False
        dead = False
        for r in range(n):
            for v in range(n):
                bit = np.int64(1) << v
                if rowm[r] & bit:
                    continue
                spot = -1
                cnt = 0
                for j in range(n):
                    c = r * n + j
                    if grid[c] == 0 and not ((colm[j] | regm[region[c]]) & bit):
                        cnt += 1
                        spot = c
                        if cnt > 1:
                            break
                if cnt == 0:
                    dead = True
                elif cnt == 1:
                    grid[spot] = v + 1
                    rowm[r] |= bit
                    colm[spot % n] |= bit
                    regm[region[spot]] |= bit
                    ins += 1
                    placed_hidden = True
        if dead:
            return ins, False
        for j in range(n):
            for v in range(n):
                bit = np.int64(1) << v
                if colm[j] & bit:
                    continue
                spot = -1
                cnt = 0
                for r in range(n):
                    c = r * n + j
                    if grid[c] == 0 and not ((rowm[r] | regm[region[c]]) & bit):
                        cnt += 1
                        spot = c
                        if cnt > 1:
                            break
                if cnt == 0:
                    dead = True
                elif cnt == 1:
                    grid[spot] = v + 1
                    rowm[spot // n] |= bit
                    colm[j] |= bit
                    regm[region[spot]] |= bit
                    ins += 1
                    placed_hidden = True
        if dead:
            return ins, False
        for g in range(n):
            for v in range(n):
                bit = np.int64(1) << v
                if regm[g] & bit:
                    continue
                spot = -1
                cnt = 0
                for k in range(n):
                    c = region_cells[g, k]
                    if grid[c] == 0 and not ((rowm[c // n] | colm[c % n]) & bit):
                        cnt += 1
                        spot = c
                        if cnt > 1:
                            break
                if cnt == 0:
                    dead = True
                elif cnt == 1:
                    grid[spot] = v + 1
                    rowm[spot // n] |= bit
                    colm[spot % n] |= bit
                    regm[g] |= bit
                    ins += 1
                    placed_hidden = True
        if dead:
            return ins, False
        if not placed_hidden:
            return ins, True


@njit(cache=True, nogil=True)
def trial_run(puzzle, region, region_cells, n, seed):
    """One randomized solve of a uniquely solvable puzzle.

    Alternates the deterministic fixpoint with guesses at a uniformly chosen
    most-constrained cell (uniform candidate order).  A failure, noticed
    either by the fixpoint or as a dead cell during the next candidate
    analysis, reverts to the state before the guess and tries the next
    candidate, unwinding to earlier guesses when exhausted.  Every
    placement, including reverted ones, counts as an insertion.  Returns
    (insertions, guesses, backtracks, solved).
    """
    ncells = n * n
    full = np.int64((1 << n) - 1)
    grid = puzzle.copy()
    rowm = np.zeros(n, dtype=np.int64)
    colm = np.zeros(n, dtype=np.int64)
    regm = np.zeros(n, dtype=np.int64)
    for c in range(ncells):
        v = grid[c]
        if v:
            bit = np.int64(1) << (v - 1)
            if (rowm[c // n] | colm[c % n] | regm[region[c]]) & bit:
                return 0, 0, 0, False
            rowm[c // n] |= bit
            colm[c % n] |= bit
            regm[region[c]] |= bit
    state = _seed_state(seed)
    insertions, ok = fixpoint(grid, rowm, colm, regm, region, region_cells, n)
    guesses = 0
    backtracks = 0
    if not ok:
        return insertions, guesses, backtracks, False
    f_grid = np.empty((ncells, ncells), dtype=np.uint8)
    f_rowm = np.empty((ncells, n), dtype=np.int64)
    f_colm = np.empty((ncells, n), dtype=np.int64)
    f_regm = np.empty((ncells, n), dtype=np.int64)
    f_cell = np.empty(ncells, dtype=np.int64)
    f_cands = np.empty((ncells, 16), dtype=np.uint8)
    f_ncand = np.empty(ncells, dtype=np.int64)
    f_idx = np.empty(ncells, dtype=np.int64)
    depth = 0
    while True:
        done = True
        for c in range(ncells):
            if grid[c] == 0:
                done = False
                break
        if done:
            return insertions, guesses, backtracks, True
        bestc = 99
        nbest = 0
        for c in range(ncells):
            if grid[c] == 0:
                a = full & ~(rowm[c // n] | colm[c % n] | regm[region[c]])
                pc = _popcount(a)
                if pc < bestc:
                    bestc = pc
                    nbest = 1
                elif pc == bestc:
                    nbest += 1
        if bestc == 0:
            # candidate analysis found a dead cell: the last guess failed
            backtracks += 1
            if depth == 0:
                return insertions, guesses, backtracks, False
        else:
            state, rnd = _rng_next(state)
            pick = np.int64(rnd % np.uint64(nbest))
            cell = -1
            acell = np.int64(0)
            seen = 0
            for c in range(ncells):
                if grid[c] == 0:
                    a = full & ~(rowm[c // n] | colm[c % n] | regm[region[c]])
                    if _popcount(a) == bestc:
                        if seen == pick:
                            cell = c
                            acell = a
                            break
                        seen += 1
            m = 0
            for v in range(n):
                if acell & (np.int64(1) << v):
                    f_cands[depth, m] = v
                    m += 1
            for i in range(m - 1, 0, -1):
                state, rnd = _rng_next(state)
                j = np.int64(rnd % np.uint64(i + 1))
                tmp = f_cands[depth, i]
                f_cands[depth, i] = f_cands[depth, j]
                f_cands[depth, j] = tmp
            f_ncand[depth] = m
            f_idx[depth] = 0
            f_cell[depth] = cell
            f_grid[depth, :] = grid
            f_rowm[depth, :] = rowm
            f_colm[depth, :] = colm
            f_regm[depth, :] = regm
            depth += 1
        while True:
            d = depth - 1
            if f_idx[d] == f_ncand[d]:
                depth -= 1
                if depth == 0:
                    return insertions, guesses, backtracks, False
                continue
            grid[:] = f_grid[d]
            rowm[:] = f_rowm[d]
            colm[:] = f_colm[d]
            regm[:] = f_regm[d]
            v = f_cands[d, f_idx[d]]
            f_idx[d] += 1
            c = f_cell[d]
            bit = np.int64(1) << v
            grid[c] = v + 1
            rowm[c // n] |= bit
            colm[c % n] |= bit
            regm[region[c]] |= bit
            insertions += 1
            guesses += 1
            ins2, ok = fixpoint(grid, rowm, colm, regm, region, region_cells, n)
            insertions += ins2
            if ok:
                break
            backtracks += 1


@njit(cache=True, nogil=True)
def rate_batch(reps, rep_idx, hint_masks, region, region_cells, n, runs,
               base_seed, mean_ins, easy, start, stop):
    """Rate puzzles [start, stop): mean insertions over runs seeds.

    Puzzle p keeps the cells of hint_masks[p] from representative grid
    rep_idx[p].  Deterministically solvable puzzles are flagged easy and
    skip the randomized runs (every run would insert exactly the blanks).
    """
    ncells = n * n
    puzzle = np.empty(ncells, dtype=np.uint8)
    grid = np.empty(ncells, dtype=np.uint8)
    rowm = np.empty(n, dtype=np.int64)
    colm = np.empty(n, dtype=np.int64)
    regm = np.empty(n, dtype=np.int64)
    for p in range(start, stop):
        rep = reps[rep_idx[p]]
        mask = hint_masks[p]
        blanks = 0
        for c in range(ncells):
            if mask & (np.int64(1) << c):
                puzzle[c] = rep[c]
            else:
                puzzle[c] = 0
                blanks += 1
        grid[:] = puzzle
        for t in range(n):
            rowm[t] = 0
            colm[t] = 0
            regm[t] = 0
        for c in range(ncells):
            v = grid[c]
            if v:
                bit = np.int64(1) << (v - 1)
                rowm[c // n] |= bit
                colm[c % n] |= bit
                regm[region[c]] |= bit
        ins, ok = fixpoint(grid, rowm, colm, regm, region, region_cells, n)
        solved = ok
        if ok:
            for c in range(ncells):
                if grid[c] == 0:
                    solved = False
                    break
        if solved:
            easy[p] = 1
            mean_ins[p] = blanks
        else:
            easy[p] = 0
            total = 0
            for run in range(runs):
                i2, g2, b2, s2 = trial_run(puzzle, region, region_cells, n,
                                           base_seed + run)
                total += i2
            mean_ins[p] = total / runs
