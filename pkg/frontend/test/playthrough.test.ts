import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { parseBundle } from "../src/schema.js";
import { PlaySession } from "../src/session.js";

const raw = JSON.parse(
  readFileSync(fileURLToPath(new URL("../fixtures/bundle_z5.json", import.meta.url)), "utf8"),
);

describe("scripted play-through", () => {
  it("solves the 4-hint order-5 puzzle to completion", () => {
    const { bundle, errors } = parseBundle(raw);
    expect(errors).toEqual([]);
    const pz = bundle!.puzzles.find(
      (p) => p.n === 5 && (p.meta.k === 4 || p.hints.length === 4),
    )!;
    expect(pz).toBeDefined();
    const s = new PlaySession(pz);
    const n = pz.n;
    const sol = pz.solution!;

    // a human-ish script: walk the grid, pencil first, then commit the
    // solution digit, with one deliberate mistake corrected along the way
    let mistakeDone = false;
    for (let cell = 0; cell < n * n; cell++) {
      if (s.isFixed(cell)) continue;
      const v = sol[Math.floor(cell / n)][cell % n];
      if (!mistakeDone) {
        const wrong = (v % n) + 1;
        s.togglePencil(cell, wrong);
        s.placeDigit(cell, wrong);
        // the mistake may or may not conflict immediately; fix it via undo
        s.undo();
        expect(s.state.board[cell]).toBe(0);
        mistakeDone = true;
      }
      s.placeDigit(cell, v);
      expect(s.violations().size).toBe(0);
    }
    expect(s.isComplete()).toBe(true);
    expect(s.checkEntries()).toEqual([]);
  });

  it("completion flag stays off while any cell is blank", () => {
    const { bundle } = parseBundle(raw);
    const pz = bundle!.puzzles[0];
    const s = new PlaySession(pz);
    const n = pz.n;
    const sol = pz.solution!;
    const blanks: number[] = [];
    s.state.board.forEach((v, i) => { if (v === 0) blanks.push(i); });
    for (const cell of blanks.slice(0, -1)) {
      s.placeDigit(cell, sol[Math.floor(cell / n)][cell % n]);
      expect(s.isComplete()).toBe(false);
    }
    const last = blanks[blanks.length - 1];
    s.placeDigit(last, sol[Math.floor(last / n)][last % n]);
    expect(s.isComplete()).toBe(true);
  });
});
