import { ApiError, Client } from "./api";
import { isMuted, play, setMuted } from "./audio";
import { Board } from "./board";
import { Hud } from "./hud";
import { renderTree } from "./tree";
import type { MovePayload, SoundCue, StartDto, TreeDto } from "./types";

export interface AppDeps {
  client?: Client;
  playCue?: (cue: SoundCue) => void;
}

const PLAYER_KEY = "designdojo.player";

/** Screen controller: name entry → puzzle tree → board. All game state
 * lives on the server; this class only routes gestures and payloads. */
export class App {
  readonly client: Client;
  private playCue: (cue: SoundCue) => void;
  private player = "";
  private token = "";
  private puzzleId = "";
  private board: Board | null = null;
  private hud: Hud | null = null;
  private banner: HTMLElement | null = null;

  constructor(private root: HTMLElement, deps: AppDeps = {}) {
    this.client = deps.client ?? new Client();
    this.playCue = deps.playCue ?? play;
  }

  boot(): void {
    this.renderNameScreen();
  }

  // -- name entry -------------------------------------------------------------

  private renderNameScreen(): void {
    this.root.innerHTML = "";
    const card = document.createElement("div");
    card.className = "name-screen";
    const h = document.createElement("h1");
    h.textContent = "Design Dojo";
    const form = document.createElement("form");
    form.id = "name-form";
    const input = document.createElement("input");
    input.id = "player-name";
    input.placeholder = "your name";
    input.maxLength = 32;
    let remembered = "";
    try {
      remembered = window.localStorage.getItem(PLAYER_KEY) ?? "";
    } catch {
      // storage may be unavailable; the field just starts empty
    }
    input.value = remembered;
    const btn = document.createElement("button");
    btn.type = "submit";
    btn.textContent = "Play";
    form.append(input, btn);
    form.addEventListener("submit", (e) => {
      e.preventDefault();
      const name = input.value.trim();
      if (name) void this.join(name);
    });
    card.append(h, form);
    this.root.appendChild(card);
  }

  async join(name: string): Promise<void> {
    try {
      const tree = await this.client.createPlayer(name);
      this.player = name;
      try {
        window.localStorage.setItem(PLAYER_KEY, name);
      } catch {
        // fine, the name just won't be remembered
      }
      this.renderTreeScreen(tree);
    } catch (err) {
      this.showBanner(err);
    }
  }

  // -- tree -------------------------------------------------------------------

  async showTree(highlight: string[] = []): Promise<void> {
    try {
      const tree = await this.client.tree(this.player);
      this.renderTreeScreen(tree, highlight);
    } catch (err) {
      this.showBanner(err, () => this.showTree(highlight));
    }
  }

  private renderTreeScreen(tree: TreeDto, highlight: string[] = []): void {
    this.root.innerHTML = "";
    this.board = null;
    this.hud = null;
    const screen = document.createElement("div");
    screen.className = "tree-screen";
    this.root.appendChild(screen);
    renderTree(screen, tree, { onOpen: (id) => void this.openPuzzle(id) }, highlight);
  }

  // -- board ------------------------------------------------------------------

  async openPuzzle(puzzleId: string, fresh = false): Promise<void> {
    try {
      const start = await this.client.start(this.player, puzzleId, fresh);
      this.enterBoard(start);
    } catch (err) {
      this.showBanner(err);
    }
  }

  private enterBoard(start: StartDto): void {
    this.token = start.token;
    this.puzzleId = start.puzzle_id;
    this.root.innerHTML = "";

    const hudEl = document.createElement("div");
    const boardEl = document.createElement("div");
    this.root.append(hudEl, boardEl);

    this.hud = new Hud(hudEl, {
      onFinish: () => void this.finish(),
      onToggleFlows: () => void this.toggleFlows(),
      onBack: () => void this.showTree(),
      onToggleMute: () => setMuted(!isMuted()),
    });
    // class creation is always offered; when a puzzle forbids it the server
    // rejects the move in-band and the rejection message lands in the HUD
    this.board = new Board(boardEl, start.puzzle_id, {
      onMove: (move) => void this.submitMove(move),
    }, true);

    this.hud.setAssignment(start.assignment.join("\n\n"));
    this.hud.showModal();
    this.board.setDesign(start.design);
    this.hud.applyFeedback(start.feedback);
    this.board.setWarnings(start.feedback.report.warnings);
  }

  async submitMove(move: MovePayload): Promise<void> {
    if (!this.board || !this.hud) return;
    try {
      const event = await this.client.move(this.token, move);
      if (event.sound_cue) this.playCue(event.sound_cue);
      if (event.design) this.board.setDesign(event.design);
      this.hud.applyFeedback(event);
      this.board.setWarnings(event.report.warnings);
      // rejected moves leave the design untouched, so flows can't have moved
      if (this.board.flowsVisible && event.sound_cue !== "error") {
        this.board.setFlows(await this.client.flows(this.token));
      }
    } catch (err) {
      this.showBanner(err, () => this.submitMove(move));
    }
  }

  async toggleFlows(): Promise<void> {
    if (!this.board || !this.hud) return;
    if (this.board.flowsVisible) {
      this.board.setFlows(null);
      this.hud.setFlowsVisible(false);
      return;
    }
    try {
      this.board.setFlows(await this.client.flows(this.token));
      this.hud.setFlowsVisible(true);
    } catch (err) {
      this.showBanner(err, () => this.toggleFlows());
    }
  }

  async finish(): Promise<void> {
    try {
      const result = await this.client.finish(this.token);
      this.playCue("level_complete");
      await this.showTree(result.newly_unlocked);
    } catch (err) {
      // e.g. 409 design not accepted: message explains, nothing to retry
      this.showBanner(err);
    }
  }

  // -- errors -----------------------------------------------------------------

  private showBanner(err: unknown, retry?: () => Promise<void>): void {
    this.banner?.remove();
    const banner = document.createElement("div");
    banner.className = "error-banner";
    const msg = document.createElement("span");
    msg.textContent = err instanceof ApiError
      ? `${err.code}: ${err.message}`
      : String(err);
    banner.appendChild(msg);
    if (retry) {
      const btn = document.createElement("button");
      btn.className = "retry-btn";
      btn.textContent = "retry";
      btn.addEventListener("click", () => {
        banner.remove();
        this.banner = null;
        void retry();
      });
      banner.appendChild(btn);
    }
    const close = document.createElement("button");
    close.className = "dismiss-btn";
    close.textContent = "✕";
    close.addEventListener("click", () => {
      banner.remove();
      this.banner = null;
    });
    banner.appendChild(close);
    this.root.appendChild(banner);
    this.banner = banner;
  }

  /** Exposed for tests: the active session token. */
  get sessionToken(): string {
    return this.token;
  }

  get currentPuzzle(): string {
    return this.puzzleId;
  }
}
