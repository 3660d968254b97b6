/** Page wiring: one scatter plot, one session at a time, two buttons. */

import { ApiError, Client } from "./api.js";
import type { DatasetMeta, InstanceView, Projection } from "./api.js";
import { renderScatter } from "./scatter.js";
import { SessionState } from "./state.js";

const POLL_INTERVAL_MS = 350;
const PLOT = { width: 640, height: 480, margin: 24 };

class App {
  private client = new Client();
  private state = new SessionState();
  private meta: DatasetMeta | null = null;
  private projection: Projection | null = null;
  private assignment: number[] | null = null;
  private pollTimer: ReturnType<typeof setTimeout> | null = null;
  private resultUrl: string | null = null;

  private el<T extends HTMLElement>(id: string): T {
    const element = document.getElementById(id);
    if (!element) {
      throw new Error(`missing element #${id}`);
    }
    return element as T;
  }

  async start(): Promise<void> {
    this.meta = await this.client.datasetMeta();
    this.projection = await this.client.projection();
    this.el("dataset-name").textContent = this.meta.data;
    this.el("dataset-info").textContent =
      `${this.meta.n} instances, ${this.meta.n_features} features, ` +
      `${this.projection.n_super} super-instances`;
    const nSuper = this.el<HTMLInputElement>("n-super");
    nSuper.value = String(this.meta.default_n_super);
    nSuper.max = String(this.meta.n);
    this.el<HTMLInputElement>("seed").value = String(this.meta.default_seed);

    this.el("start").addEventListener("click", () => this.startSession());
    this.el("cancel").addEventListener("click", () => this.cancelSession());
    this.el("answer-ml").addEventListener("click", () =>
      this.submit("must-link"),
    );
    this.el("answer-cl").addEventListener("click", () =>
      this.submit("cannot-link"),
    );
    this.render();
  }

  private async startSession(): Promise<void> {
    const nSuper = Number(this.el<HTMLInputElement>("n-super").value);
    const seed = Number(this.el<HTMLInputElement>("seed").value);
    this.state.phase = "starting";
    this.assignment = null;
    this.setStatus("");
    this.render();
    try {
      const id = await this.client.createSession({
        n_super: nSuper,
        seed: seed,
      });
      this.state.started(id);
      this.projection = await this.client.projection(id);
      this.schedulePoll();
    } catch (err) {
      this.state.phase = "idle";
      this.setStatus(describe(err));
    }
    this.render();
  }

  private schedulePoll(): void {
    if (this.pollTimer !== null) {
      clearTimeout(this.pollTimer);
    }
    this.pollTimer = setTimeout(() => void this.poll(), POLL_INTERVAL_MS);
  }

  private async poll(): Promise<void> {
    const id = this.state.sessionId;
    if (id === null) {
      return;
    }
    try {
      const view = await this.client.pending(id);
      const changed = this.state.sawPending(view);
      if (this.state.phase === "completed" && this.assignment === null) {
        await this.loadResult(id);
      }
      if (changed) {
        this.render();
      }
    } catch (err) {
      this.setStatus(describe(err));
    }
    if (this.state.phase !== "completed" && this.state.phase !== "cancelled") {
      this.schedulePoll();
    }
  }

  private async submit(answer: "must-link" | "cannot-link"): Promise<void> {
    const id = this.state.sessionId;
    const seq = this.state.claimAnswer();
    if (id === null || seq === null) {
      return;
    }
    this.render();
    try {
      await this.client.answer(id, seq, answer);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.state.submissionRejected(seq);
      } else {
        this.setStatus(describe(err));
      }
    }
    this.schedulePoll();
  }

  private async cancelSession(): Promise<void> {
    const id = this.state.sessionId;
    if (id === null) {
      return;
    }
    try {
      await this.client.cancel(id);
      this.state.cancelled();
    } catch (err) {
      this.setStatus(describe(err));
    }
    this.render();
  }

  private async loadResult(id: string): Promise<void> {
    const doc = await this.client.result(id);
    this.assignment = doc["assignment"] as number[];
    if (this.resultUrl !== null) {
      URL.revokeObjectURL(this.resultUrl);
    }
    const blob = new Blob([JSON.stringify(doc, null, 2)], {
      type: "application/json",
    });
    this.resultUrl = URL.createObjectURL(blob);
    const link = this.el<HTMLAnchorElement>("download");
    link.href = this.resultUrl;
    link.download = "cobra-result.json";
  }

  private setStatus(text: string): void {
    this.el("status").textContent = text;
  }

  private render(): void {
    const phase = this.state.phase;
    this.el("phase").textContent = phase;
    this.el<HTMLButtonElement>("start").disabled =
      phase === "starting" ||
      phase === "waiting" ||
      phase === "question" ||
      phase === "submitting";
    this.el<HTMLButtonElement>("cancel").disabled =
      phase === "idle" ||
      phase === "starting" ||
      phase === "completed" ||
      phase === "cancelled";

    const progress =
      this.state.nClusters === null
        ? ""
        : `${this.state.oracleCount} questions answered, ` +
          `${this.state.nClusters} clusters`;
    this.el("progress").textContent = progress;

    const card = this.el("question-card");
    const question = this.state.question;
    if (question !== null && phase === "question") {
      card.classList.remove("hidden");
      this.renderPair(question.a, question.b);
    } else {
      card.classList.add("hidden");
    }
    const answerDisabled = phase !== "question";
    this.el<HTMLButtonElement>("answer-ml").disabled = answerDisabled;
    this.el<HTMLButtonElement>("answer-cl").disabled = answerDisabled;

    const done = this.el("completed-card");
    if (phase === "completed" && this.state.summary !== null) {
      done.classList.remove("hidden");
      this.el("summary").textContent =
        `${this.state.summary.n_clusters_found} clusters from ` +
        `${this.state.summary.oracle_count} answers`;
    } else {
      done.classList.add("hidden");
    }
    this.renderPlot();
  }

  private renderPair(a: InstanceView, b: InstanceView): void {
    if (this.meta === null) {
      return;
    }
    const names = this.meta.feature_names;
    for (const [slot, view] of [
      ["a", a],
      ["b", b],
    ] as const) {
      this.el(`pair-${slot}-id`).textContent = `#${view.id}`;
      const table = this.el(`pair-${slot}-features`);
      table.replaceChildren();
      names.forEach((name, i) => {
        const row = document.createElement("tr");
        const key = document.createElement("td");
        key.textContent = name;
        const value = document.createElement("td");
        value.textContent = formatNumber(view.features[i]);
        row.append(key, value);
        table.appendChild(row);
      });
    }
  }

  private renderPlot(): void {
    if (this.projection === null) {
      return;
    }
    const svg = this.el<HTMLElement>("plot") as unknown as SVGSVGElement;
    const assignment = this.assignment;
    renderScatter(svg, this.projection.points, {
      ...PLOT,
      groupOf:
        assignment === null ? undefined : (id: number) => assignment[id],
      highlight:
        this.state.question === null
          ? null
          : [this.state.question.a.id, this.state.question.b.id],
    });
  }
}

function describe(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

function formatNumber(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(3);
}

window.addEventListener("DOMContentLoaded", () => {
  void new App().start();
});
