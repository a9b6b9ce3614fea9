// Constraint checking on flat boards (0 = empty, 1..n = digit).
/** Cells of each unit: n rows, n columns, n palette regions. */
export function unitTable(palette) {
    const n = palette.length;
    const units = [];
    for (let r = 0; r < n; r++) {
        units.push(Array.from({ length: n }, (_, c) => r * n + c));
    }
    for (let c = 0; c < n; c++) {
        units.push(Array.from({ length: n }, (_, r) => r * n + c));
    }
    const regions = Array.from({ length: n }, () => []);
    for (let r = 0; r < n; r++) {
        for (let c = 0; c < n; c++) {
            regions[palette[r][c] - 1].push(r * n + c);
        }
    }
    return units.concat(regions);
}
/**
 * Violation set: every cell that shares its digit with another cell of some
 * row, column, or region.  This is the production checker the UI uses.
 */
export function violationCells(board, units) {
    const bad = new Set();
    const seen = new Map();
    for (const unit of units) {
        seen.clear();
        for (const cell of unit) {
            const v = board[cell];
            if (v === 0)
                continue;
            const prev = seen.get(v);
            if (prev === undefined) {
                seen.set(v, cell);
            }
            else {
                bad.add(prev);
                bad.add(cell);
            }
        }
    }
    return bad;
}
/** Naive quadratic reference used by the property tests. */
export function referenceViolations(board, palette) {
    const n = palette.length;
    const bad = new Set();
    const sameUnit = (a, b) => {
        const [ra, ca] = [Math.floor(a / n), a % n];
        const [rb, cb] = [Math.floor(b / n), b % n];
        return ra === rb || ca === cb || palette[ra][ca] === palette[rb][cb];
    };
    for (let a = 0; a < n * n; a++) {
        if (board[a] === 0)
            continue;
        for (let b = 0; b < n * n; b++) {
            if (a !== b && board[b] === board[a] && sameUnit(a, b)) {
                bad.add(a);
                bad.add(b);
            }
        }
    }
    return bad;
}
/** Complete and violation-free. */
export function isSolved(board, units) {
    if (board.some((v) => v === 0))
        return false;
    return violationCells(board, units).size === 0;
}
