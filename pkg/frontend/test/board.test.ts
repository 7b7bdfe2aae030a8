import { beforeEach, describe, expect, it } from "vitest";
import { Board } from "../src/board";
import type { DesignDto, FlowsDto, MovePayload, StartDto } from "../src/types";
import { pick } from "./stub";

const startStep = () =>
  pick(["POST", "/players/ada/sessions", 1])[0].response as unknown as StartDto;

function drop(target: Element, memberId: string): void {
  const event = new Event("drop", { bubbles: true, cancelable: true });
  Object.assign(event, {
    dataTransfer: { getData: (type: string) => (type === "text/plain" ? memberId : "") },
  });
  target.dispatchEvent(event);
}

let root: HTMLElement;
let moves: MovePayload[];
let board: Board;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  root = document.getElementById("root")!;
  window.localStorage.clear();
  moves = [];
  board = new Board(root, "sort-the-garage", { onMove: (m) => moves.push(m) });
});

describe("board rendering", () => {
  it("renders the recorded start design: two classes, six toolbox members", () => {
    board.setDesign(startStep().design);
    expect(root.querySelectorAll(".classbox").length).toBe(2);
    const toolbox = root.querySelectorAll(".toolbox .member");
    expect(toolbox.length).toBe(6);
    expect([...toolbox].map((m) => m.getAttribute("data-member-id"))).toContain("door");
    // methods render with calling parens, attributes without
    const park = [...toolbox].find((m) => m.getAttribute("data-member-id") === "park")!;
    expect(park.textContent).toBe("park()");
    const wheel = [...toolbox].find((m) => m.getAttribute("data-member-id") === "wheel")!;
    expect(wheel.textContent).toBe("wheel");
  });

  it("positions classes from the server design when no local layout exists", () => {
    board.setDesign(startStep().design);
    const car = root.querySelector<HTMLElement>("[data-class-id='car']")!;
    expect(car.style.left).toBe("140px");
    expect(car.style.top).toBe("180px");
  });
});

describe("drop gestures", () => {
  it("dropping a toolbox member on a class submits exactly one place move", () => {
    board.setDesign(startStep().design);
    drop(root.querySelector("[data-class-id='garage']")!, "door");
    expect(moves).toEqual([
      { kind: "place_member", member_id: "door", class_id: "garage" },
    ]);
  });

  it("dropping a member on the class it already lives in does nothing", () => {
    const design = structuredClone(startStep().design);
    const door = design.unplaced.shift()!;
    design.classes[1].members.push(door);
    board.setDesign(design);
    drop(root.querySelector("[data-class-id='garage']")!, "door");
    expect(moves).toEqual([]);
  });

  it("dropping a placed member back on the toolbox submits a remove move", () => {
    const design = structuredClone(startStep().design);
    const door = design.unplaced.shift()!;
    design.classes[1].members.push(door);
    board.setDesign(design);
    drop(root.querySelector(".toolbox")!, "door");
    expect(moves).toEqual([{ kind: "remove_member", member_id: "door" }]);
  });

  it("dropping an unplaced member on the toolbox does nothing", () => {
    board.setDesign(startStep().design);
    drop(root.querySelector(".toolbox")!, "door");
    expect(moves).toEqual([]);
  });
});

describe("association gestures", () => {
  const twoBoxes: DesignDto = {
    classes: [
      { id: "a", name: "A", keywords: [], position: [10, 10], members: [] },
      { id: "b", name: "B", keywords: [], position: [300, 10], members: [] },
    ],
    associations: [],
    unplaced: [],
  };

  function clickLink(classId: string): void {
    root
      .querySelector<HTMLElement>(`[data-class-id='${classId}'] .link-btn`)!
      .click();
  }

  it("link on A then B submits one connect move", () => {
    board.setDesign(twoBoxes);
    clickLink("a");
    expect(moves).toEqual([]); // half a gesture is not a move
    clickLink("b");
    expect(moves).toEqual([
      { kind: "connect", class_id: "a", other_class_id: "b" },
    ]);
  });

  it("link on an already-associated pair submits disconnect", () => {
    board.setDesign({ ...twoBoxes, associations: [["b", "a"]] });
    clickLink("a");
    clickLink("b");
    expect(moves).toEqual([
      { kind: "disconnect", class_id: "a", other_class_id: "b" },
    ]);
  });

  it("clicking the same class twice cancels the gesture", () => {
    board.setDesign(twoBoxes);
    clickLink("a");
    clickLink("a");
    clickLink("b"); // a fresh first click, not a completion
    expect(moves).toEqual([]);
  });

  it("associations render as svg lines", () => {
    board.setDesign({ ...twoBoxes, associations: [["a", "b"]] });
    expect(root.querySelectorAll("svg line.association").length).toBe(1);
  });
});

describe("flow overlay", () => {
  it("draws solid control and dashed data paths from the recorded flows", () => {
    const final = pick(["POST", "/sessions/TOKEN/moves", 5])[0].response as {
      design: DesignDto;
    };
    const flows = pick(["GET", "/sessions/TOKEN/flows", 1])[0]
      .response as unknown as FlowsDto;
    board.setDesign(final.design);
    expect(board.flowsVisible).toBe(false);
    board.setFlows(flows);
    expect(board.flowsVisible).toBe(true);
    expect(root.querySelectorAll("path.flow-control").length).toBe(2);
    expect(root.querySelectorAll("path.flow-data").length).toBe(3);
    const cross = [...root.querySelectorAll<SVGPathElement>("path.flow-control")]
      .find((p) => p.dataset.src === "car.park" && p.dataset.dst === "garage.open_door");
    expect(cross).toBeDefined();
    board.setFlows(null);
    expect(root.querySelectorAll("path.flow").length).toBe(0);
  });
});

describe("warnings", () => {
  it("shows a badge on the class the warning names", () => {
    board.setDesign(startStep().design);
    board.setWarnings([
      { class_id: "car", code: "low_cohesion", message: "cohesion below minimum" },
      { class_id: "car", code: "high_coupling", message: "too many associations" },
    ]);
    const badge = root.querySelector("[data-class-id='car'] .warning-badge")!;
    expect(badge.textContent).toBe("⚠ 2");
    expect(badge.getAttribute("title")).toContain("cohesion below minimum");
    expect(root.querySelector("[data-class-id='garage'] .warning-badge")).toBeNull();
  });
});

describe("class edits", () => {
  it("delete submits one delete_class move when edits are allowed", () => {
    const editable = new Board(
      root,
      "p",
      { onMove: (m) => moves.push(m) },
      true,
    );
    editable.setDesign(startStep().design);
    root.querySelector<HTMLElement>("[data-class-id='car'] .delete-btn")!.click();
    expect(moves).toEqual([{ kind: "delete_class", class_id: "car" }]);
  });

  it("create prompts for name and keywords and submits create_class", () => {
    const editable = new Board(root, "p", { onMove: (m) => moves.push(m) }, true);
    editable.setDesign(startStep().design);
    const answers = ["Shed", "storage, tools"];
    window.prompt = () => answers.shift() ?? null;
    root.querySelector<HTMLElement>(".new-class")!.click();
    expect(moves).toEqual([
      { kind: "create_class", name: "Shed", keywords: ["storage", "tools"] },
    ]);
  });
});
