// Client-side board layout. Positions are cosmetic: they persist per
// puzzle in localStorage and are never sent to the server.

export interface Point {
  x: number;
  y: number;
}

export type Layout = Record<string, Point>;

const PREFIX = "designdojo.layout.";

export function loadLayout(puzzleId: string): Layout {
  try {
    const raw = localStorage.getItem(PREFIX + puzzleId);
    return raw ? (JSON.parse(raw) as Layout) : {};
  } catch {
    return {};
  }
}

export function saveLayout(puzzleId: string, layout: Layout): void {
  try {
    localStorage.setItem(PREFIX + puzzleId, JSON.stringify(layout));
  } catch {
    // storage full or unavailable: layout is cosmetic, drop it
  }
}

/** Default grid placement for classes that have no stored position. */
export function defaultPosition(index: number): Point {
  const columns = 3;
  return {
    x: 40 + (index % columns) * 260,
    y: 40 + Math.floor(index / columns) * 200,
  };
}
