import { defaultPosition, loadLayout, saveLayout, type Layout } from "./layout";
import type {
  ClassDto,
  DesignDto,
  FlowsDto,
  MemberDto,
  MovePayload,
  WarningDto,
} from "./types";

export interface BoardCallbacks {
  onMove: (move: MovePayload) => void;
}

const BOX_WIDTH = 240;
const HEADER_HEIGHT = 44;
const MEMBER_HEIGHT = 26;

function boxHeight(box: ClassDto): number {
  return HEADER_HEIGHT + box.members.length * MEMBER_HEIGHT + 10;
}

/** The design board: class boxes with their members, the toolbox of
 * unplaced members, the association layer, and the flow overlay.
 *
 * The board never mutates the design itself — every gesture submits one
 * Move and the next render comes from the server's design snapshot. */
export class Board {
  private design: DesignDto = { classes: [], associations: [], unplaced: [] };
  private layout: Layout = {};
  private warnings: WarningDto[] = [];
  private flows: FlowsDto | null = null;
  private linkFrom: string | null = null;
  private surface!: HTMLElement;
  private toolbox!: HTMLElement;
  private svg!: SVGSVGElement;

  constructor(
    private root: HTMLElement,
    private puzzleId: string,
    private callbacks: BoardCallbacks,
    private allowClassEdits = false,
  ) {
    this.layout = loadLayout(puzzleId);
    this.buildChrome();
  }

  private buildChrome(): void {
    this.root.innerHTML = "";
    this.root.className = "board";

    this.toolbox = document.createElement("aside");
    this.toolbox.className = "toolbox";
    this.toolbox.addEventListener("dragover", (e) => e.preventDefault());
    this.toolbox.addEventListener("drop", (e) => {
      e.preventDefault();
      const memberId = e.dataTransfer?.getData("text/plain");
      // dropping a placed member back on the toolbox removes it
      if (memberId && !this.design.unplaced.some((m) => m.id === memberId)) {
        this.callbacks.onMove({ kind: "remove_member", member_id: memberId });
      }
    });
    this.root.appendChild(this.toolbox);

    const work = document.createElement("div");
    work.className = "work-area";
    this.root.appendChild(work);

    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.classList.add("wires");
    work.appendChild(this.svg);

    this.surface = document.createElement("div");
    this.surface.className = "surface";
    work.appendChild(this.surface);
  }

  setDesign(design: DesignDto): void {
    this.design = design;
    this.render();
  }

  setWarnings(warnings: WarningDto[]): void {
    this.warnings = warnings;
    this.render();
  }

  setFlows(flows: FlowsDto | null): void {
    this.flows = flows;
    this.render();
  }

  get flowsVisible(): boolean {
    return this.flows !== null;
  }

  private positionOf(box: ClassDto, index: number) {
    const saved = this.layout[box.id];
    if (saved) return saved;
    const [x, y] = box.position;
    // created classes arrive at (0,0); give them a grid slot instead
    if (x === 0 && y === 0) return defaultPosition(index);
    return { x, y };
  }

  private render(): void {
    this.renderToolbox();
    this.renderClasses();
    this.renderWires();
  }

  private renderToolbox(): void {
    this.toolbox.innerHTML = "";
    const title = document.createElement("h3");
    title.textContent = `Toolbox (${this.design.unplaced.length})`;
    this.toolbox.appendChild(title);
    for (const member of this.design.unplaced) {
      this.toolbox.appendChild(this.renderMember(member, null));
    }
    if (this.allowClassEdits) {
      const btn = document.createElement("button");
      btn.className = "new-class";
      btn.textContent = "+ new class";
      btn.addEventListener("click", () => {
        const name = window.prompt("Class name?");
        if (!name) return;
        const raw = window.prompt("Keywords (comma separated)?") ?? "";
        const keywords = raw.split(",").map((w) => w.trim()).filter(Boolean);
        this.callbacks.onMove({ kind: "create_class", name, keywords });
      });
      this.toolbox.appendChild(btn);
    }
  }

  private renderMember(member: MemberDto, classId: string | null): HTMLElement {
    const el = document.createElement("div");
    el.className = `member ${member.kind}`;
    el.dataset.memberId = member.id;
    el.draggable = true;
    el.addEventListener("dragstart", (e) => {
      e.dataTransfer?.setData("text/plain", member.id);
    });
    const label = member.kind === "method" ? `${member.name}()` : member.name;
    el.textContent = label;
    if (member.keywords.length) el.title = member.keywords.join(", ");
    el.dataset.placedIn = classId ?? "";
    return el;
  }

  private renderClasses(): void {
    this.surface.innerHTML = "";
    this.design.classes.forEach((box, index) => {
      this.surface.appendChild(this.renderClass(box, index));
    });
  }

  private renderClass(box: ClassDto, index: number): HTMLElement {
    const el = document.createElement("div");
    el.className = "classbox";
    el.dataset.classId = box.id;
    if (this.linkFrom === box.id) el.classList.add("link-from");
    const pos = this.positionOf(box, index);
    el.style.left = `${pos.x}px`;
    el.style.top = `${pos.y}px`;
    el.style.width = `${BOX_WIDTH}px`;

    const header = document.createElement("div");
    header.className = "classbox-header";
    const name = document.createElement("span");
    name.className = "classbox-name";
    name.textContent = box.name;
    header.appendChild(name);

    const classWarnings = this.warnings.filter((w) => w.class_id === box.id);
    if (classWarnings.length) {
      const badge = document.createElement("span");
      badge.className = "warning-badge";
      badge.textContent = `⚠ ${classWarnings.length}`;
      badge.title = classWarnings.map((w) => w.message).join("\n");
      header.appendChild(badge);
    }

    const link = document.createElement("button");
    link.className = "link-btn";
    link.title = "draw / remove an association";
    link.textContent = "⇄";
    link.addEventListener("click", (e) => {
      e.stopPropagation();
      this.clickLink(box.id);
    });
    header.appendChild(link);

    if (this.allowClassEdits) {
      const del = document.createElement("button");
      del.className = "delete-btn";
      del.title = "delete this class";
      del.textContent = "✕";
      del.addEventListener("click", (e) => {
        e.stopPropagation();
        this.callbacks.onMove({ kind: "delete_class", class_id: box.id });
      });
      header.appendChild(del);
    }
    el.appendChild(header);

    if (box.keywords.length) {
      const kw = document.createElement("div");
      kw.className = "classbox-keywords";
      kw.textContent = box.keywords.join(", ");
      el.appendChild(kw);
    }

    const list = document.createElement("div");
    list.className = "member-list";
    for (const member of box.members) {
      list.appendChild(this.renderMember(member, box.id));
    }
    el.appendChild(list);

    el.addEventListener("dragover", (e) => e.preventDefault());
    el.addEventListener("drop", (e) => {
      e.preventDefault();
      e.stopPropagation();
      const memberId = e.dataTransfer?.getData("text/plain");
      if (!memberId) return;
      const already = box.members.some((m) => m.id === memberId);
      if (!already) {
        this.callbacks.onMove({
          kind: "place_member",
          member_id: memberId,
          class_id: box.id,
        });
      }
    });

    this.makeDraggable(el, header, box.id);
    return el;
  }

  /** Click ⇄ on one class, then on another: one connect (or disconnect if
   * the pair is already associated) move per completed gesture. */
  private clickLink(classId: string): void {
    if (this.linkFrom === null) {
      this.linkFrom = classId;
    } else if (this.linkFrom === classId) {
      this.linkFrom = null; // cancelled
    } else {
      const [a, b] = [this.linkFrom, classId];
      const exists = this.design.associations.some(
        ([x, y]) => (x === a && y === b) || (x === b && y === a),
      );
      this.callbacks.onMove({
        kind: exists ? "disconnect" : "connect",
        class_id: a,
        other_class_id: b,
      });
      this.linkFrom = null;
    }
    this.render();
  }

  private makeDraggable(el: HTMLElement, handle: HTMLElement, classId: string): void {
    handle.addEventListener("mousedown", (down) => {
      if ((down.target as HTMLElement).tagName === "BUTTON") return;
      const startX = down.clientX;
      const startY = down.clientY;
      const origin = { x: el.offsetLeft, y: el.offsetTop };
      const onMove = (move: MouseEvent) => {
        el.style.left = `${origin.x + move.clientX - startX}px`;
        el.style.top = `${origin.y + move.clientY - startY}px`;
      };
      const onUp = (up: MouseEvent) => {
        document.removeEventListener("mousemove", onMove);
        document.removeEventListener("mouseup", onUp);
        this.layout[classId] = {
          x: origin.x + up.clientX - startX,
          y: origin.y + up.clientY - startY,
        };
        saveLayout(this.puzzleId, this.layout);
        this.renderWires();
      };
      document.addEventListener("mousemove", onMove);
      document.addEventListener("mouseup", onUp);
    });
  }

  // -- wires: associations below, flow overlay on top ------------------------

  private anchor(classId: string): { x: number; y: number } | null {
    const index = this.design.classes.findIndex((c) => c.id === classId);
    if (index < 0) return null;
    const box = this.design.classes[index];
    const pos = this.positionOf(box, index);
    return { x: pos.x + BOX_WIDTH / 2, y: pos.y + boxHeight(box) / 2 };
  }

  private renderWires(): void {
    this.svg.innerHTML = "";
    for (const [a, b] of this.design.associations) {
      const pa = this.anchor(a);
      const pb = this.anchor(b);
      if (!pa || !pb) continue;
      const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
      line.setAttribute("x1", String(pa.x));
      line.setAttribute("y1", String(pa.y));
      line.setAttribute("x2", String(pb.x));
      line.setAttribute("y2", String(pb.y));
      line.classList.add("association");
      this.svg.appendChild(line);
    }
    if (this.flows) this.renderFlowEdges(this.flows);
  }

  private renderFlowEdges(flows: FlowsDto): void {
    const edges = [...flows.control_edges, ...flows.data_edges];
    for (const edge of edges) {
      const pa = this.anchor(edge.src.class_id);
      const pb = this.anchor(edge.dst.class_id);
      if (!pa || !pb) continue;
      const path = document.createElementNS("http://www.w3.org/2000/svg", "path");
      // a slight bow so intra-class edges and parallel edges stay visible
      const mx = (pa.x + pb.x) / 2;
      const my = (pa.y + pb.y) / 2 - 24;
      path.setAttribute("d", `M ${pa.x} ${pa.y} Q ${mx} ${my} ${pb.x} ${pb.y}`);
      path.classList.add("flow", edge.kind === "call" ? "flow-control" : "flow-data");
      path.dataset.kind = edge.kind;
      path.dataset.src = `${edge.src.class_id}.${edge.src.member_id}`;
      path.dataset.dst = `${edge.dst.class_id}.${edge.dst.member_id}`;
      this.svg.appendChild(path);
    }
  }
}
