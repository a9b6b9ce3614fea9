import type { Bundle, BundlePuzzle } from "./types.js";
import { PlaySession } from "./session.js";

export interface BoardCallbacks {
  onSelect(cell: number): void;
}

/** Build the board table for a puzzle; returns the per-cell elements. */
export function renderBoard(
  host: HTMLElement,
  puzzle: BundlePuzzle,
  scheme: string[],
  cb: BoardCallbacks,
): HTMLElement[] {
  const n = puzzle.n;
  host.innerHTML = "";
  host.style.setProperty("--n", String(n));
  const cells: HTMLElement[] = [];
  for (let r = 0; r < n; r++) {
    for (let c = 0; c < n; c++) {
      const cell = document.createElement("div");
      const region = puzzle.palette[r][c];
      cell.className = "cell";
      cell.dataset.cell = String(r * n + c);
      cell.style.background = scheme[puzzle.region_colors[region - 1]] + "55";
      // thick edges where the region changes (or at the rim)
      const at = (rr: number, cc: number) =>
        rr < 0 || cc < 0 || rr >= n || cc >= n ? 0 : puzzle.palette[rr][cc];
      cell.style.borderTop = edge(at(r - 1, c) !== region);
      cell.style.borderLeft = edge(at(r, c - 1) !== region);
      cell.style.borderRight = edge(at(r, c + 1) !== region);
      cell.style.borderBottom = edge(at(r + 1, c) !== region);
      cell.addEventListener("pointerdown", () => cb.onSelect(r * n + c));
      host.appendChild(cell);
      cells.push(cell);
    }
  }
  return cells;
}

function edge(strong: boolean): string {
  return strong ? "2px solid #1a1a2e" : "1px solid #9aa0b5";
}

export function paintState(
  cells: HTMLElement[],
  session: PlaySession,
  selected: number | null,
  wrong: Set<number>,
): void {
  const violations = session.violations();
  session.state.board.forEach((v, i) => {
    const el = cells[i];
    el.classList.toggle("fixed", session.isFixed(i));
    el.classList.toggle("violation", violations.has(i));
    el.classList.toggle("wrong", wrong.has(i));
    el.classList.toggle("selected", i === selected);
    if (v !== 0) {
      el.textContent = String(v);
      el.classList.remove("marks");
    } else if (session.state.marks[i].length) {
      el.textContent = session.state.marks[i].join(" ");
      el.classList.add("marks");
    } else {
      el.textContent = "";
      el.classList.remove("marks");
    }
  });
}

export function puzzleLabel(pz: BundlePuzzle, index: number): string {
  const level = pz.meta.difficulty?.level ?? "unrated";
  const k = pz.meta.k ?? pz.hints.length;
  return `#${index + 1} • ${pz.n}×${pz.n} • ${k} hints • ${level}`;
}

export function renderPuzzleList(
  host: HTMLElement,
  bundle: Bundle,
  levelFilter: string,
  sizeFilter: string,
  onPick: (index: number) => void,
): void {
  host.innerHTML = "";
  bundle.puzzles.forEach((pz, i) => {
    const level = pz.meta.difficulty?.level ?? "unrated";
    if (levelFilter !== "all" && level !== levelFilter) return;
    if (sizeFilter !== "all" && String(pz.n) !== sizeFilter) return;
    const btn = document.createElement("button");
    btn.className = "puzzle-pick";
    btn.textContent = puzzleLabel(pz, i);
    btn.addEventListener("click", () => onPick(i));
    host.appendChild(btn);
  });
  if (!host.children.length) {
    const empty = document.createElement("p");
    empty.textContent = "No puzzles match the filters.";
    host.appendChild(empty);
  }
}

export function showBanner(host: HTMLElement, messages: string[]): void {
  host.innerHTML = "";
  if (!messages.length) {
    host.hidden = true;
    return;
  }
  host.hidden = false;
  const title = document.createElement("strong");
  title.textContent = "Bundle rejected:";
  host.appendChild(title);
  const list = document.createElement("ul");
  for (const m of messages.slice(0, 8)) {
    const li = document.createElement("li");
    li.textContent = m;
    list.appendChild(li);
  }
  host.appendChild(list);
}
