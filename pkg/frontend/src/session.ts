import { isSolved, unitTable, violationCells } from "./checker.js";
import type { BundlePuzzle, Move, SessionState } from "./types.js";

/** Stable identity for a puzzle, used as the persistence key. */
export function puzzleId(pz: BundlePuzzle): string {
  const hints = pz.hints
    .map((h) => `${h.r},${h.c}:${h.v}`)
    .sort()
    .join(";");
  return `n${pz.n}|${hints}`;
}

export class PlaySession {
  readonly puzzle: BundlePuzzle;
  readonly n: number;
  readonly units: number[][];
  state: SessionState;

  constructor(puzzle: BundlePuzzle, restored?: SessionState) {
    this.puzzle = puzzle;
    this.n = puzzle.n;
    this.units = unitTable(puzzle.palette);
    if (restored && restored.puzzleId === puzzleId(puzzle)) {
      this.state = restored;
    } else {
      const n = puzzle.n;
      const board = new Array<number>(n * n).fill(0);
      const fixed = new Array<boolean>(n * n).fill(false);
      for (const h of puzzle.hints) {
        board[h.r * n + h.c] = h.v;
        fixed[h.r * n + h.c] = true;
      }
      this.state = {
        puzzleId: puzzleId(puzzle),
        n,
        board,
        fixed,
        marks: Array.from({ length: n * n }, () => []),
        elapsedMs: 0,
        hintsUsed: 0,
        undoStack: [],
      };
    }
  }

  isFixed(cell: number): boolean {
    return this.state.fixed[cell];
  }

  private pushUndo(cell: number): void {
    this.state.undoStack.push({
      cell,
      prevValue: this.state.board[cell],
      prevMarks: [...this.state.marks[cell]],
    });
  }

  /**
   * Record a digit at a non-fixed cell.  Illegal entries are recorded too;
   * they show up in violations() rather than being blocked.  Returns false
   * only for fixed cells.
   */
  placeDigit(cell: number, value: number): boolean {
    if (this.isFixed(cell) || value < 1 || value > this.n) return false;
    this.pushUndo(cell);
    this.state.board[cell] = value;
    this.state.marks[cell] = [];
    return true;
  }

  erase(cell: number): boolean {
    if (this.isFixed(cell)) return false;
    if (this.state.board[cell] === 0 && this.state.marks[cell].length === 0) {
      return false;
    }
    this.pushUndo(cell);
    this.state.board[cell] = 0;
    this.state.marks[cell] = [];
    return true;
  }

  togglePencil(cell: number, value: number): boolean {
    if (this.isFixed(cell) || this.state.board[cell] !== 0) return false;
    this.pushUndo(cell);
    const marks = this.state.marks[cell];
    const at = marks.indexOf(value);
    if (at >= 0) marks.splice(at, 1);
    else {
      marks.push(value);
      marks.sort((a, b) => a - b);
    }
    return true;
  }

  /** Restore the exact state before the last recorded change. */
  undo(): boolean {
    const move = this.state.undoStack.pop();
    if (!move) return false;
    this.state.board[move.cell] = move.prevValue;
    this.state.marks[move.cell] = [...move.prevMarks];
    return true;
  }

  violations(): Set<number> {
    return violationCells(this.state.board, this.units);
  }

  isComplete(): boolean {
    return isSolved(this.state.board, this.units);
  }

  /** Wrong non-fixed entries compared with the bundled solution. */
  checkEntries(): number[] {
    const sol = this.puzzle.solution;
    if (!sol) return [];
    const wrong: number[] = [];
    const n = this.n;
    for (let cell = 0; cell < n * n; cell++) {
      const v = this.state.board[cell];
      if (v !== 0 && !this.state.fixed[cell] &&
          v !== sol[Math.floor(cell / n)][cell % n]) {
        wrong.push(cell);
      }
    }
    return wrong;
  }

  /** Fill one empty cell from the solution; returns the cell or null. */
  revealHint(): number | null {
    const sol = this.puzzle.solution;
    if (!sol) return null;
    const n = this.n;
    for (let cell = 0; cell < n * n; cell++) {
      if (this.state.board[cell] === 0) {
        this.pushUndo(cell);
        this.state.board[cell] = sol[Math.floor(cell / n)][cell % n];
        this.state.marks[cell] = [];
        this.state.hintsUsed += 1;
        return cell;
      }
    }
    return null;
  }
}

// --- persistence -------------------------------------------------------------

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const PREFIX = "leedoku.session.";

export function saveSession(storage: StorageLike, session: PlaySession): void {
  storage.setItem(PREFIX + session.state.puzzleId, JSON.stringify(session.state));
}

export function loadSession(
  storage: StorageLike,
  puzzle: BundlePuzzle,
): SessionState | undefined {
  const raw = storage.getItem(PREFIX + puzzleId(puzzle));
  if (!raw) return undefined;
  try {
    const state = JSON.parse(raw) as SessionState;
    if (state.puzzleId !== puzzleId(puzzle) || state.n !== puzzle.n) {
      return undefined;
    }
    return state;
  } catch {
    return undefined;
  }
}

export function clearSession(storage: StorageLike, puzzle: BundlePuzzle): void {
  storage.removeItem(PREFIX + puzzleId(puzzle));
}
