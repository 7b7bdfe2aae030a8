import { beforeEach, describe, expect, it } from "vitest";
import { renderTree, treeDepths } from "../src/tree";
import type { TreeDto, TreeRowDto } from "../src/types";
import { pick } from "./stub";

function row(id: string, over: Partial<TreeRowDto> = {}): TreeRowDto {
  return {
    id,
    title: id,
    principles: ["cohesion"],
    prerequisites: [],
    status: "unlocked",
    best_score: null,
    completed_at: null,
    ...over,
  };
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  root = document.getElementById("root")!;
});

describe("treeDepths", () => {
  it("layers a diamond DAG by longest prerequisite path", () => {
    const rows = [
      row("a"),
      row("b", { prerequisites: ["a"] }),
      row("c", { prerequisites: ["a"] }),
      row("d", { prerequisites: ["b", "c"] }),
      row("e", { prerequisites: ["a", "d"] }),
    ];
    expect(treeDepths(rows)).toEqual({ a: 0, b: 1, c: 1, d: 2, e: 3 });
  });
});

describe("renderTree", () => {
  const tree: TreeDto = {
    player: "ada",
    resume_point: "two",
    puzzles: [
      row("one", { status: "completed", best_score: 91, title: "One" }),
      row("two", { prerequisites: ["one"], title: "Two" }),
      row("three", {
        status: "locked",
        prerequisites: ["two"],
        title: "Three",
      }),
    ],
  };

  it("renders one card per puzzle in DAG layers", () => {
    renderTree(root, tree, { onOpen: () => {} });
    const layers = root.querySelectorAll(".tree-layer");
    expect(layers.length).toBe(3);
    expect(root.querySelectorAll(".puzzle-card").length).toBe(3);
    expect(root.querySelector("h2")!.textContent).toContain("ada");
  });

  it("locked cards are not clickable; unlocked ones are", () => {
    const opened: string[] = [];
    renderTree(root, tree, { onOpen: (id) => opened.push(id) });

    const locked = root.querySelector<HTMLElement>("[data-puzzle-id='three']")!;
    expect(locked.classList.contains("locked")).toBe(true);
    expect(locked.getAttribute("aria-disabled")).toBe("true");
    locked.click();
    expect(opened).toEqual([]);

    const open = root.querySelector<HTMLElement>("[data-puzzle-id='two']")!;
    open.click();
    expect(opened).toEqual(["two"]);
    open.dispatchEvent(new KeyboardEvent("keydown", { key: "Enter" }));
    expect(opened).toEqual(["two", "two"]);
  });

  it("shows best score on completed cards and the resume badge", () => {
    renderTree(root, tree, { onOpen: () => {} });
    const done = root.querySelector("[data-puzzle-id='one'] .puzzle-status")!;
    expect(done.textContent).toBe("✓ best 91");
    const resume = root.querySelector("[data-puzzle-id='two'] .puzzle-status")!;
    expect(resume.textContent).toBe("▶ continue");
    const locked = root.querySelector("[data-puzzle-id='three'] .puzzle-status")!;
    expect(locked.textContent).toContain("🔒");
  });

  it("highlights newly unlocked puzzles", () => {
    renderTree(root, tree, { onOpen: () => {} }, ["two"]);
    const fresh = root.querySelector("[data-puzzle-id='two']")!;
    expect(fresh.classList.contains("fresh")).toBe(true);
    expect(root.querySelectorAll(".fresh").length).toBe(1);
  });

  it("renders the recorded post-completion tree with statuses intact", () => {
    const recorded = pick(["GET", "/players/ada/tree", 1])[0]
      .response as unknown as TreeDto;
    renderTree(root, recorded, { onOpen: () => {} });
    const completed = root.querySelectorAll(".puzzle-card.completed");
    expect(completed.length).toBe(1);
    expect(completed[0].getAttribute("data-puzzle-id")).toBe("sort-the-garage");
    expect(root.querySelectorAll(".puzzle-card").length).toBe(6);
    // finishing the garage unlocked hide-the-dial
    const dial = root.querySelector("[data-puzzle-id='hide-the-dial']")!;
    expect(dial.classList.contains("unlocked")).toBe(true);
  });
});
