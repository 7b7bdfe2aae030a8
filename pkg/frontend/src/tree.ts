import type { TreeDto, TreeRowDto } from "./types";

export interface TreeCallbacks {
  onOpen: (puzzleId: string) => void;
}

/** Depth of each puzzle in the prerequisite DAG (roots are 0). */
export function treeDepths(rows: TreeRowDto[]): Record<string, number> {
  const byId = new Map(rows.map((r) => [r.id, r]));
  const depths: Record<string, number> = {};
  const depth = (id: string, trail: Set<string>): number => {
    if (id in depths) return depths[id];
    const row = byId.get(id);
    if (!row || trail.has(id)) return 0; // server rejects cycles; be safe
    trail.add(id);
    const d = row.prerequisites.length
      ? 1 + Math.max(...row.prerequisites.map((p) => depth(p, trail)))
      : 0;
    trail.delete(id);
    depths[id] = d;
    return d;
  };
  rows.forEach((r) => depth(r.id, new Set()));
  return depths;
}

/** Render the level-select screen: one row of cards per DAG layer, roots on
 * top. Locked puzzles are visually distinct and not clickable. */
export function renderTree(
  root: HTMLElement,
  tree: TreeDto,
  callbacks: TreeCallbacks,
  highlight: string[] = [],
): void {
  root.innerHTML = "";
  const depths = treeDepths(tree.puzzles);
  const layerCount = Math.max(0, ...Object.values(depths)) + 1;

  const heading = document.createElement("h2");
  heading.textContent = `Puzzles — ${tree.player}`;
  root.appendChild(heading);

  for (let layer = 0; layer < layerCount; layer++) {
    const rowEl = document.createElement("div");
    rowEl.className = "tree-layer";
    for (const row of tree.puzzles.filter((r) => depths[r.id] === layer)) {
      rowEl.appendChild(renderCard(row, tree, callbacks, highlight));
    }
    root.appendChild(rowEl);
  }
}

function renderCard(
  row: TreeRowDto,
  tree: TreeDto,
  callbacks: TreeCallbacks,
  highlight: string[],
): HTMLElement {
  const card = document.createElement("div");
  card.className = `puzzle-card ${row.status}`;
  card.dataset.puzzleId = row.id;
  if (highlight.includes(row.id)) card.classList.add("fresh");

  const title = document.createElement("div");
  title.className = "puzzle-title";
  title.textContent = row.title;
  card.appendChild(title);

  const tags = document.createElement("div");
  tags.className = "puzzle-tags";
  tags.textContent = row.principles.join(" · ");
  card.appendChild(tags);

  const status = document.createElement("div");
  status.className = "puzzle-status";
  if (row.status === "completed") {
    status.textContent = `✓ best ${row.best_score}`;
  } else if (row.status === "locked") {
    status.textContent = `🔒 needs ${row.prerequisites.join(", ")}`;
  } else {
    status.textContent = row.id === tree.resume_point ? "▶ continue" : "open";
  }
  card.appendChild(status);

  if (row.status === "locked") {
    card.setAttribute("aria-disabled", "true");
  } else {
    card.tabIndex = 0;
    card.addEventListener("click", () => callbacks.onOpen(row.id));
    card.addEventListener("keydown", (e) => {
      if (e.key === "Enter") callbacks.onOpen(row.id);
    });
  }
  return card;
}
