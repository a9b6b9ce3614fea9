import { parseBundle } from "./schema.js";
import { PlaySession, loadSession, saveSession, clearSession } from "./session.js";
import { paintState, renderBoard, renderPuzzleList, showBanner } from "./render.js";
import type { Bundle } from "./types.js";

const $ = (id: string) => document.getElementById(id) as HTMLElement;

let bundle: Bundle | null = null;
let session: PlaySession | null = null;
let cells: HTMLElement[] = [];
let selected: number | null = null;
let wrong = new Set<number>();
let pencilMode = false;
let timer: number | null = null;
let saveTimer: number | null = null;

function scheduleSave(): void {
  // debounced persistence
  if (saveTimer !== null) window.clearTimeout(saveTimer);
  saveTimer = window.setTimeout(() => {
    if (session) saveSession(window.localStorage, session);
  }, 250);
}

function repaint(): void {
  if (!session) return;
  paintState(cells, session, selected, wrong);
  const status = $("status");
  if (session.isComplete()) {
    status.textContent = `Solved! ${formatTime(session.state.elapsedMs)}`;
    status.className = "done";
  } else {
    const bad = session.violations().size;
    status.textContent = bad ? `${bad} cells in conflict` : "";
    status.className = bad ? "conflict" : "";
  }
}

function formatTime(ms: number): string {
  const s = Math.floor(ms / 1000);
  return `${Math.floor(s / 60)}:${String(s % 60).padStart(2, "0")}`;
}

function tick(): void {
  if (!session || session.isComplete()) return;
  session.state.elapsedMs += 1000;
  $("clock").textContent = formatTime(session.state.elapsedMs);
  scheduleSave();
}

function openPuzzle(index: number): void {
  if (!bundle) return;
  const pz = bundle.puzzles[index];
  const restored = loadSession(window.localStorage, pz);
  session = new PlaySession(pz, restored);
  wrong = new Set();
  selected = null;
  cells = renderBoard($("board"), pz, bundle.color_scheme, {
    onSelect(cell) {
      selected = cell;
      repaint();
    },
  });
  $("controls").hidden = false;
  const hasSolution = Boolean(pz.solution);
  ($("check") as HTMLButtonElement).disabled = !hasSolution;
  ($("hint") as HTMLButtonElement).disabled = !hasSolution;
  if (timer !== null) window.clearInterval(timer);
  timer = window.setInterval(tick, 1000);
  $("clock").textContent = formatTime(session.state.elapsedMs);
  repaint();
}

function handleKey(ev: KeyboardEvent): void {
  if (!session || selected === null) return;
  const n = session.n;
  if (ev.key === "Backspace" || ev.key === "Delete" || ev.key === "0") {
    if (session.erase(selected)) afterEdit();
    return;
  }
  if (ev.key === "u" || (ev.ctrlKey && ev.key === "z")) {
    if (session.undo()) afterEdit();
    return;
  }
  if (ev.key === "p") {
    pencilMode = !pencilMode;
    $("pencil").classList.toggle("on", pencilMode);
    return;
  }
  const moves: Record<string, number> = {
    ArrowUp: -n, ArrowDown: n, ArrowLeft: -1, ArrowRight: 1,
  };
  if (ev.key in moves) {
    selected = (selected + moves[ev.key] + n * n) % (n * n);
    repaint();
    return;
  }
  const value = parseInt(ev.key, 10);
  if (!Number.isNaN(value) && value >= 1 && value <= n) {
    const okEdit = pencilMode
      ? session.togglePencil(selected, value)
      : session.placeDigit(selected, value);
    if (okEdit) afterEdit();
  }
}

function afterEdit(): void {
  wrong = new Set();
  scheduleSave();
  repaint();
}

function wireControls(): void {
  $("check").addEventListener("click", () => {
    if (!session) return;
    wrong = new Set(session.checkEntries());
    repaint();
  });
  $("hint").addEventListener("click", () => {
    if (!session) return;
    if (session.revealHint() !== null) afterEdit();
  });
  $("undo").addEventListener("click", () => {
    if (session && session.undo()) afterEdit();
  });
  $("pencil").addEventListener("click", () => {
    pencilMode = !pencilMode;
    $("pencil").classList.toggle("on", pencilMode);
  });
  $("restart").addEventListener("click", () => {
    if (!session || !bundle) return;
    clearSession(window.localStorage, session.puzzle);
    const idx = bundle.puzzles.indexOf(session.puzzle);
    openPuzzle(idx);
  });
  document.addEventListener("keydown", handleKey);
  for (const id of ["level-filter", "size-filter"]) {
    $(id).addEventListener("change", refreshList);
  }
}

function refreshList(): void {
  if (!bundle) return;
  const level = ($("level-filter") as HTMLSelectElement).value;
  const size = ($("size-filter") as HTMLSelectElement).value;
  renderPuzzleList($("puzzles"), bundle, level, size, openPuzzle);
}

function acceptBundle(data: unknown): void {
  const result = parseBundle(data);
  showBanner($("banner"), result.errors);
  if (!result.bundle) return;
  bundle = result.bundle;
  const sizes = [...new Set(bundle.puzzles.map((p) => p.n))].sort((a, b) => a - b);
  const sizeSel = $("size-filter") as HTMLSelectElement;
  sizeSel.innerHTML = '<option value="all">any size</option>' +
    sizes.map((s) => `<option value="${s}">${s}×${s}</option>`).join("");
  refreshList();
}

async function boot(): Promise<void> {
  wireControls();
  ($("bundle-file") as HTMLInputElement).addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) return;
    try {
      acceptBundle(JSON.parse(await file.text()));
    } catch (e) {
      showBanner($("banner"), [`not JSON: ${e}`]);
    }
  });
  try {
    const res = await fetch("bundle.json");
    if (res.ok) acceptBundle(await res.json());
  } catch {
    // no default bundle; the file picker still works
  }
}

boot();
