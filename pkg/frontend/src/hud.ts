import type { FeedbackDto, ReportDto } from "./types";

export interface HudCallbacks {
  onFinish: () => void;
  onToggleFlows: () => void;
  onBack: () => void;
  onToggleMute: () => void;
}

function pct(x: number): string {
  return `${Math.round(x * 100)}%`;
}

/** Score panel + progress bar + the assignment modal. Every number shown
 * here is the server's, verbatim — the HUD does no scoring of its own. */
export class Hud {
  private reportEl!: HTMLElement;
  private progressFill!: HTMLElement;
  private progressLabel!: HTMLElement;
  private finishBtn!: HTMLButtonElement;
  private flowsBtn!: HTMLButtonElement;
  private messageEl!: HTMLElement;
  private modal!: HTMLElement;

  constructor(private root: HTMLElement, private callbacks: HudCallbacks) {
    this.build();
  }

  private build(): void {
    this.root.innerHTML = "";
    this.root.className = "hud";

    const bar = document.createElement("div");
    bar.className = "hud-bar";

    const back = document.createElement("button");
    back.className = "back-btn";
    back.textContent = "← puzzles";
    back.addEventListener("click", () => this.callbacks.onBack());
    bar.appendChild(back);

    const brief = document.createElement("button");
    brief.className = "brief-btn";
    brief.textContent = "📋 brief";
    brief.addEventListener("click", () => this.showModal());
    bar.appendChild(brief);

    this.flowsBtn = document.createElement("button");
    this.flowsBtn.className = "flows-btn";
    this.flowsBtn.textContent = "flows: off";
    this.flowsBtn.addEventListener("click", () => this.callbacks.onToggleFlows());
    bar.appendChild(this.flowsBtn);

    const mute = document.createElement("button");
    mute.className = "mute-btn";
    mute.textContent = "🔊";
    mute.addEventListener("click", () => {
      this.callbacks.onToggleMute();
      mute.textContent = mute.textContent === "🔊" ? "🔇" : "🔊";
    });
    bar.appendChild(mute);

    this.finishBtn = document.createElement("button");
    this.finishBtn.className = "finish-btn";
    this.finishBtn.textContent = "Finish";
    this.finishBtn.disabled = true;
    this.finishBtn.addEventListener("click", () => this.callbacks.onFinish());
    bar.appendChild(this.finishBtn);

    this.root.appendChild(bar);

    this.reportEl = document.createElement("div");
    this.reportEl.className = "report";
    this.root.appendChild(this.reportEl);

    const progress = document.createElement("div");
    progress.className = "progress-track";
    this.progressFill = document.createElement("div");
    this.progressFill.className = "progress-fill";
    progress.appendChild(this.progressFill);
    this.root.appendChild(progress);
    this.progressLabel = document.createElement("div");
    this.progressLabel.className = "progress-label";
    this.root.appendChild(this.progressLabel);

    this.messageEl = document.createElement("div");
    this.messageEl.className = "hud-message";
    this.root.appendChild(this.messageEl);

    this.modal = document.createElement("div");
    this.modal.className = "modal hidden";
    this.root.appendChild(this.modal);
  }

  applyFeedback(event: FeedbackDto): void {
    this.renderReport(event.report);
    this.progressFill.style.width = pct(event.progress);
    this.progressLabel.textContent = `progress ${pct(event.progress)}`;
    this.finishBtn.disabled = event.progress !== 1;
    if (event.sound_cue === "error") {
      this.messageEl.textContent = `✗ ${event.message ?? "move rejected"}`;
      this.messageEl.className = "hud-message rejected";
    } else {
      this.messageEl.textContent = event.message ?? "";
      this.messageEl.className = "hud-message";
    }
  }

  private renderReport(report: ReportDto): void {
    this.reportEl.innerHTML = "";
    const exact = report.exact as Record<string, string>;
    const rows: [string, string, string | undefined][] = [
      ["composite", String(report.composite), undefined],
      ["cohesion", String(report.design_cohesion), exact.design_cohesion],
      ["avg-coupling", String(report.avg_cbo), exact.avg_cbo],
      ["pattern", String(report.pattern_score), exact.pattern_score],
      ["accepted", report.accepted ? "yes" : "no", undefined],
    ];
    if (report.unplaced_count > 0) {
      rows.push(["unplaced", String(report.unplaced_count), undefined]);
    }
    for (const [label, value, tip] of rows) {
      const row = document.createElement("div");
      row.className = "report-row";
      const l = document.createElement("span");
      l.className = "report-label";
      l.textContent = label.replace("-", " ");
      const v = document.createElement("span");
      v.className = `report-value report-${label}`;
      v.textContent = value;
      if (typeof tip === "string") v.title = tip; // exact fraction on hover
      row.append(l, v);
      this.reportEl.appendChild(row);
    }
  }

  setFlowsVisible(on: boolean): void {
    this.flowsBtn.textContent = on ? "flows: on" : "flows: off";
  }

  setAssignment(text: string): void {
    this.modal.innerHTML = "";
    const card = document.createElement("div");
    card.className = "modal-card";
    const h = document.createElement("h2");
    h.textContent = "Assignment";
    const body = document.createElement("p");
    body.className = "assignment-text";
    body.textContent = text;
    const ok = document.createElement("button");
    ok.className = "modal-dismiss";
    ok.textContent = "Got it";
    ok.addEventListener("click", () => this.hideModal());
    card.append(h, body, ok);
    this.modal.appendChild(card);
  }

  showModal(): void {
    this.modal.classList.remove("hidden");
  }

  hideModal(): void {
    this.modal.classList.add("hidden");
  }

  get modalVisible(): boolean {
    return !this.modal.classList.contains("hidden");
  }
}
