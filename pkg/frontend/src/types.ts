export interface HintCell {
  r: number;
  c: number;
  v: number;
}

export interface PuzzleMeta {
  k?: number;
  seed?: number;
  code?: string;
  family?: string;
  difficulty?: {
    score: number;
    level: "easy" | "medium" | "hard";
    runs: number;
    base_seed: number;
  };
  [key: string]: unknown;
}

export interface BundlePuzzle {
  version: number;
  n: number;
  palette: number[][];
  hints: HintCell[];
  solution?: number[][];
  region_colors: number[];
  meta: PuzzleMeta;
}

export interface Bundle {
  version: number;
  color_scheme: string[];
  puzzles: BundlePuzzle[];
}

export type Level = "easy" | "medium" | "hard";

export interface Move {
  cell: number;
  prevValue: number;
  prevMarks: number[];
}

export interface SessionState {
  puzzleId: string;
  n: number;
  board: number[]; // 0 = empty, 1..n = entry or fixed hint
  fixed: boolean[];
  marks: number[][]; // pencil marks per cell, kept sorted
  elapsedMs: number;
  hintsUsed: number;
  undoStack: Move[];
}
